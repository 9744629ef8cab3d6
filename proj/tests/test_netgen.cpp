#include <doctest.h>

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "techcomp/evaluate.hpp"
#include "techcomp/netgen.hpp"
#include "techcomp/structural.hpp"

using namespace techcomp;

namespace {

double global_clustering(const Graph& g) {
  // 3 * triangles / wedges
  std::uint64_t wedges = 0;
  for (std::uint32_t u = 0; u < g.node_count(); ++u) {
    const std::uint64_t d = g.degree(u);
    wedges += d * (d - 1) / 2;
  }
  std::uint64_t triangles = 0;
  for (auto [u, v] : g.edges()) {
    for (std::uint32_t w : g.neighbors(u)) {
      if (w > v && g.has_edge(v, w)) ++triangles;
    }
  }
  return wedges ? 3.0 * double(triangles) / double(wedges) : 0.0;
}

}  // namespace

TEST_CASE("star: n-1 edges, one hub of full degree") {
  NetSpec spec;
  spec.kind = NetKind::star;
  spec.n = 10;
  const Graph g = generate_network(spec);
  CHECK(g.edge_count() == 9);
  std::uint32_t max_deg = 0;
  for (std::uint32_t u = 0; u < 10; ++u) max_deg = std::max(max_deg, g.degree(u));
  CHECK(max_deg == 9);
}

TEST_CASE("complete graph has all pairs") {
  NetSpec spec;
  spec.kind = NetKind::complete;
  spec.n = 10;
  const Graph g = generate_network(spec);
  CHECK(g.edge_count() == 45);
  CHECK(g.is_complete());
}

TEST_CASE("tree is connected and acyclic") {
  NetSpec spec;
  spec.kind = NetKind::tree;
  spec.n = 40;
  spec.branching = 3;
  const Graph g = generate_network(spec);
  CHECK(g.edge_count() == 39);
  CHECK(largest_component_nodes(g).size() == 40);
  CHECK(motif_count(g, 3) > 0);
  // no triangles in a tree
  const auto spectrumless_triangles = [&] {
    std::uint64_t t = 0;
    for (auto [u, v] : g.edges())
      for (std::uint32_t w : g.neighbors(u))
        if (w > v && g.has_edge(v, w)) ++t;
    return t;
  }();
  CHECK(spectrumless_triangles == 0);
}

TEST_CASE("small world: mean degree k, clustering above matched ER") {
  NetSpec sw;
  sw.kind = NetKind::small_world;
  sw.n = 100;
  sw.k = 6;
  sw.beta = 0.05;
  sw.seed = 2;
  const Graph g = generate_network(sw);
  CHECK(g.edge_count() == 300);  // rewiring preserves the edge count
  CHECK(largest_component_nodes(g).size() == 100);

  NetSpec er;
  er.kind = NetKind::random;
  er.n = 100;
  er.p = 600.0 / (100.0 * 99.0);  // same expected density
  er.seed = 2;
  const Graph h = generate_network(er);
  CHECK(global_clustering(g) > global_clustering(h));
}

TEST_CASE("generators are deterministic under the seed") {
  NetSpec spec;
  spec.kind = NetKind::random;
  spec.n = 50;
  spec.p = 0.08;
  spec.seed = 11;
  const Graph a = generate_network(spec);
  const Graph b = generate_network(spec);
  CHECK(a.edges() == b.edges());
  spec.seed = 12;
  CHECK(a.edges() != generate_network(spec).edges());
}

TEST_CASE("network spec validation") {
  NetSpec spec;
  spec.n = 3;
  CHECK_THROWS_AS(generate_network(spec), Error);
  spec.n = 10;
  spec.kind = NetKind::random;
  spec.p = 0.0;
  CHECK_THROWS_AS(generate_network(spec), Error);
  spec.p = 1.5;
  CHECK_THROWS_AS(generate_network(spec), Error);
  spec.kind = NetKind::small_world;
  spec.p = 0.5;
  spec.k = 5;  // odd
  CHECK_THROWS_AS(generate_network(spec), Error);
}

TEST_CASE("edge list round-trips through a file") {
  NetSpec spec;
  spec.kind = NetKind::random;
  spec.n = 30;
  spec.p = 0.15;
  spec.seed = 3;
  const Graph g = generate_network(spec);
  const std::string path = "/tmp/techcomp_edges_test.txt";
  save_edge_list(g, path);
  const Graph h = load_edge_list(path);
  std::remove(path.c_str());
  CHECK(g.edges() == h.edges());
}

TEST_CASE("hub regime produces a dominant-degree node") {
  SyntheticCorpusSpec spec;
  spec.technologies = 1;
  spec.ordered = 1;
  spec.complex_mix = 0;
  spec.random = 0;
  spec.year_begin = spec.year_end = 2000;
  spec.patents_per_year = {100};
  spec.codes_per_tech = 30;
  spec.seed = 5;
  const auto corpus = generate_corpus(spec);
  CHECK(corpus.records.size() == 100);
  const auto cg = build_graph(window(corpus, 2000, 1), "A000");
  std::uint32_t best = 0, second = 0;
  for (std::uint32_t u = 0; u < cg.graph.node_count(); ++u) {
    const auto d = cg.graph.degree(u);
    if (d >= best) {
      second = best;
      best = d;
    } else {
      second = std::max(second, d);
    }
  }
  // the hub is on every patent, so it is adjacent to every other node
  CHECK(best == cg.graph.node_count() - 1);
  CHECK(second < best);
}

TEST_CASE("corpus generation is deterministic under the seed") {
  SyntheticCorpusSpec spec;
  spec.technologies = 2;
  spec.ordered = 1;
  spec.complex_mix = 0;
  spec.random = 1;
  spec.year_begin = 2000;
  spec.year_end = 2002;
  spec.patents_per_year = {20};
  spec.seed = 9;
  const auto a = generate_corpus(spec);
  const auto b = generate_corpus(spec);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].id == b.records[i].id);
    CHECK(a.records[i].codes == b.records[i].codes);
    CHECK(a.records[i].regions == b.records[i].regions);
  }
}

TEST_CASE("full region skew concentrates everything in one region") {
  SyntheticCorpusSpec spec;
  spec.technologies = 1;
  spec.random = 1;
  spec.year_begin = spec.year_end = 2000;
  spec.patents_per_year = {50};
  spec.region_count = 4;
  spec.region_skew = 1.0;
  spec.seed = 3;
  const auto corpus = generate_corpus(spec);
  const auto universe = fine_region_universe(corpus);
  CHECK(universe.size() == 1);  // only region 0 ever drawn

  // over the full 4-region universe the concentration is (R-1)/R
  std::vector<double> counts(4, 0.0);
  for (const auto& r : corpus.records)
    counts[0] += static_cast<double>(r.regions.size());
  CHECK(gini(counts) == doctest::Approx(0.75));
}

TEST_CASE("corpus spec JSON parsing") {
  const std::string text = R"({
    "technologies": 3,
    "years": [2000, 2004],
    "patents_per_year": [10, 12, 14, 16, 18],
    "codes_per_tech": 25,
    "codes_per_patent": {"min": 2, "max": 3},
    "regimes": {"ordered": 1, "complex": 1, "random": 1},
    "region_count": 6,
    "region_skew": 0.4,
    "seed": 42
  })";
  const auto spec = corpus_spec_from_json(text);
  CHECK(spec.technologies == 3);
  CHECK(spec.year_begin == 2000);
  CHECK(spec.year_end == 2004);
  CHECK(spec.patents_per_year.size() == 5);
  CHECK(spec.ordered == 1);
  CHECK(spec.region_count == 6);
  const auto corpus = generate_corpus(spec);
  CHECK(corpus.min_year == 2000);
  CHECK(corpus.max_year == 2004);
  CHECK_THROWS_AS(corpus_spec_from_json("{nope"), Error);
}
