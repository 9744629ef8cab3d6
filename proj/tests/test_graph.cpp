#include <doctest.h>

#include <random>
#include <set>

#include "helpers.hpp"
#include "techcomp/graph.hpp"
#include "techcomp/rng.hpp"
#include "techcomp/structural.hpp"

using namespace techcomp;

namespace {

Graph er_graph(std::uint32_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v)
      if (uniform_real(rng) < p) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

Graph two_cliques_bridge() {
  // two 4-cliques joined by one bridge edge (3-4)
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t u = 0; u < 4; ++u)
    for (std::uint32_t v = u + 1; v < 4; ++v) edges.emplace_back(u, v);
  for (std::uint32_t u = 4; u < 8; ++u)
    for (std::uint32_t v = u + 1; v < 8; ++v) edges.emplace_back(u, v);
  edges.emplace_back(3, 4);
  return Graph::from_edges(8, edges);
}

Graph complete(std::uint32_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

Graph star(std::uint32_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t i = 1; i < n; ++i) edges.emplace_back(0, i);
  return Graph::from_edges(n, edges);
}

}  // namespace

TEST_CASE("from_edges dedups and ignores self loops") {
  const Graph g = Graph::from_edges(3, {{0, 1}, {1, 0}, {1, 1}, {1, 2}});
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(2, 1));
  CHECK(!g.has_edge(0, 2));
}

TEST_CASE("largest_component picks maximum size, ties by smallest node") {
  SUBCASE("connected graph is returned whole") {
    const Graph g = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(largest_component(g).node_count() == 4);
  }
  SUBCASE("sizes 3 and 7") {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t i = 0; i < 2; ++i) edges.emplace_back(i, i + 1);  // 0-1-2
    for (std::uint32_t i = 3; i < 9; ++i) edges.emplace_back(i, i + 1);  // 3..9
    const Graph g = Graph::from_edges(10, edges);
    const auto nodes = largest_component_nodes(g);
    CHECK(nodes.size() == 7);
    CHECK(nodes.front() == 3);
  }
  SUBCASE("two size-5 components: lexicographically smallest wins") {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t i = 0; i < 4; ++i) edges.emplace_back(i, i + 1);
    for (std::uint32_t i = 5; i < 9; ++i) edges.emplace_back(i, i + 1);
    const Graph g = Graph::from_edges(10, edges);
    const auto nodes = largest_component_nodes(g);
    CHECK(nodes.size() == 5);
    CHECK(nodes.front() == 0);
  }
}

TEST_CASE("detect_modules separates two bridged cliques") {
  const Graph g = two_cliques_bridge();
  const Partition part = detect_modules(g);
  REQUIRE(part.module_count == 2);
  const auto sizes = part.sizes();
  CHECK(sizes[0] == 4);
  CHECK(sizes[1] == 4);
  for (std::uint32_t u = 0; u < 4; ++u) CHECK(part.assignment[u] == part.assignment[0]);
  for (std::uint32_t u = 4; u < 8; ++u) CHECK(part.assignment[u] == part.assignment[4]);

  // greedy result attains the exhaustively best 2-partition modularity
  const double best = oracle::best_two_partition_modularity(g);
  CHECK(part.modularity == doctest::Approx(best).epsilon(1e-12));
  CHECK(modularity(g, part.assignment) == doctest::Approx(part.modularity));
}

TEST_CASE("detect_modules on a complete graph returns one module") {
  const Partition part = detect_modules(complete(7));
  CHECK(part.module_count == 1);
  CHECK(part.modularity == doctest::Approx(0.0));
}

TEST_CASE("detect_modules is reproducible") {
  const Graph g = star(6);
  const Partition a = detect_modules(g);
  const Partition b = detect_modules(g);
  CHECK(a.assignment == b.assignment);
  CHECK(a.module_count == b.module_count);
}

TEST_CASE("laplacian spectrum closed forms") {
  SUBCASE("star on 4 nodes") {
    const auto eig = laplacian_spectrum(star(4));
    REQUIRE(eig.size() == 4);
    CHECK(eig[0] == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(eig[1] == doctest::Approx(1.0));
    CHECK(eig[2] == doctest::Approx(1.0));
    CHECK(eig[3] == doctest::Approx(4.0));
  }
  SUBCASE("complete graph K5") {
    const auto eig = laplacian_spectrum(complete(5));
    REQUIRE(eig.size() == 5);
    CHECK(eig[0] == doctest::Approx(0.0).epsilon(1e-8));
    for (int i = 1; i < 5; ++i) CHECK(eig[i] == doctest::Approx(5.0));
  }
  SUBCASE("connected graph has exactly one zero eigenvalue") {
    const auto eig = laplacian_spectrum(er_graph(20, 0.3, 5));
    int zeros = 0;
    for (double v : eig)
      if (std::abs(v) < 1e-8) ++zeros;
    if (largest_component_nodes(er_graph(20, 0.3, 5)).size() == 20)
      CHECK(zeros == 1);
  }
}

TEST_CASE("motif counts on canonical graphs") {
  SUBCASE("K4") {
    const Graph g = complete(4);
    CHECK(motif_count(g, 3) == 4);
    CHECK(motif_count(g, 4) == 1);
  }
  SUBCASE("path on 3 nodes") {
    const Graph g = Graph::from_edges(3, {{0, 1}, {1, 2}});
    CHECK(motif_count(g, 3) == 1);
    CHECK(motif_count(g, 4) == 0);
  }
  SUBCASE("star and cycle") {
    CHECK(motif_count(star(5), 3) == 6);   // C(4,2)
    CHECK(motif_count(star(5), 4) == 4);   // C(4,3)
    const Graph c5 = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    CHECK(motif_count(c5, 3) == 5);
    CHECK(motif_count(c5, 4) == 5);
  }
}

TEST_CASE("motif counts match exhaustive enumeration on random graphs") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    for (double p : {0.1, 0.3, 0.7}) {
      const Graph g = er_graph(30, p, seed);
      CHECK(motif_count(g, 3) == oracle::brute_motifs(g, 3));
      CHECK(motif_count(g, 4) == oracle::brute_motifs(g, 4));
    }
  }
  // dense case exercises the disconnected-subset accounting
  const Graph dense = er_graph(25, 0.9, 9);
  CHECK(motif_count(dense, 4) == oracle::brute_motifs(dense, 4));
}

TEST_CASE("induced subgraph keeps labels and edges") {
  const Graph g = Graph::from_edges(
      4, {{0, 1}, {1, 2}, {2, 3}}, {"a", "b", "c", "d"});
  const std::vector<std::uint32_t> keep{1, 2, 3};
  const Graph sub = induced_subgraph(g, keep);
  CHECK(sub.node_count() == 3);
  CHECK(sub.edge_count() == 2);
  CHECK(sub.label(0) == "b");
  CHECK(sub.has_edge(0, 1));
}
