#include "techcomp/netgen.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "techcomp/errors.hpp"
#include "techcomp/rng.hpp"

namespace techcomp {

NetKind net_kind_from_string(const std::string& s) {
  if (s == "star") return NetKind::star;
  if (s == "tree") return NetKind::tree;
  if (s == "small-world" || s == "small_world") return NetKind::small_world;
  if (s == "complete") return NetKind::complete;
  if (s == "random") return NetKind::random;
  throw Error("unknown network kind: " + s +
              " (expected star|tree|small-world|complete|random)");
}

std::string to_string(NetKind k) {
  switch (k) {
    case NetKind::star: return "star";
    case NetKind::tree: return "tree";
    case NetKind::small_world: return "small-world";
    case NetKind::complete: return "complete";
    case NetKind::random: return "random";
  }
  return "?";
}

namespace {

constexpr int kConnectivityRetries = 100;

bool is_connected(const Graph& g) {
  return g.node_count() == 0 ||
         largest_component_nodes(g).size() == g.node_count();
}

Graph make_star(std::uint32_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(n - 1);
  for (std::uint32_t i = 1; i < n; ++i) edges.emplace_back(0, i);
  return Graph::from_edges(n, edges);
}

Graph make_tree(std::uint32_t n, std::uint32_t b) {
  if (b < 1) throw Error("tree branching factor must be >= 1");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(n - 1);
  for (std::uint32_t i = 1; i < n; ++i) edges.emplace_back(i, (i - 1) / b);
  return Graph::from_edges(n, edges);
}

Graph make_complete(std::uint32_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

Graph make_random(std::uint32_t n, double p, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < kConnectivityRetries; ++attempt) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t u = 0; u < n; ++u) {
      for (std::uint32_t v = u + 1; v < n; ++v) {
        if (uniform_real(rng) < p) edges.emplace_back(u, v);
      }
    }
    Graph g = Graph::from_edges(n, edges);
    if (is_connected(g)) return g;
  }
  throw Error("random graph: no connected instance within retry budget");
}

Graph make_small_world(std::uint32_t n, std::uint32_t k, double beta,
                       std::mt19937_64& rng) {
  if (k < 2 || k % 2 != 0) throw Error("small-world base degree must be even and >= 2");
  if (k >= n) throw Error("small-world base degree must be below n");
  for (int attempt = 0; attempt < kConnectivityRetries; ++attempt) {
    // ring lattice, then rewire the far endpoint of each lattice edge
    std::vector<std::set<std::uint32_t>> adj(n);
    auto connect = [&](std::uint32_t a, std::uint32_t b) {
      adj[a].insert(b);
      adj[b].insert(a);
    };
    for (std::uint32_t u = 0; u < n; ++u)
      for (std::uint32_t j = 1; j <= k / 2; ++j) connect(u, (u + j) % n);
    for (std::uint32_t u = 0; u < n; ++u) {
      for (std::uint32_t j = 1; j <= k / 2; ++j) {
        const std::uint32_t v = (u + j) % n;
        if (uniform_real(rng) >= beta) continue;
        if (adj[u].size() >= n - 1) continue;  // saturated node
        std::uint32_t t;
        do {
          t = static_cast<std::uint32_t>(uniform_index(rng, n));
        } while (t == u || adj[u].count(t));
        adj[u].erase(v);
        adj[v].erase(u);
        connect(u, t);
      }
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t u = 0; u < n; ++u)
      for (std::uint32_t v : adj[u])
        if (u < v) edges.emplace_back(u, v);
    Graph g = Graph::from_edges(n, edges);
    if (is_connected(g)) return g;
  }
  throw Error("small-world graph: no connected instance within retry budget");
}

}  // namespace

Graph generate_network(const NetSpec& spec) {
  if (spec.n < 5) throw Error("network size must be >= 5");
  if (spec.beta < 0.0 || spec.beta > 1.0)
    throw Error("rewiring probability must be in [0, 1]");
  std::mt19937_64 rng(derive_seed(spec.seed, to_string(spec.kind)));
  switch (spec.kind) {
    case NetKind::star: return make_star(spec.n);
    case NetKind::tree: return make_tree(spec.n, spec.branching);
    case NetKind::complete: return make_complete(spec.n);
    case NetKind::random:
      if (spec.p <= 0.0 || spec.p >= 1.0)
        throw Error("edge probability must be in (0, 1)");
      return make_random(spec.n, spec.p, rng);
    case NetKind::small_world:
      return make_small_world(spec.n, spec.k, spec.beta, rng);
  }
  throw Error("unhandled network kind");
}

namespace {

std::string tech_code(std::uint32_t tech_index) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%c%03u", 'A' + (tech_index % 26u),
                tech_index % 1000u);
  return buf;
}

std::string full_code(const std::string& tech, std::uint32_t j) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%06u", j);
  return tech + buf;
}

std::string region_code(std::uint32_t r) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "R%03ua", r % 1000u);
  return buf;
}

Regime regime_of(const SyntheticCorpusSpec& spec, std::uint32_t tech_index) {
  if (tech_index < spec.ordered) return Regime::ordered;
  if (tech_index < spec.ordered + spec.complex_mix) return Regime::complex_mix;
  return Regime::random;
}

std::vector<std::uint32_t> draw_codes(Regime regime, std::uint32_t universe,
                                      std::uint32_t count,
                                      std::mt19937_64& rng) {
  count = std::min(count, universe);
  std::vector<std::uint32_t> out;
  switch (regime) {
    case Regime::ordered: {
      // hub-and-spoke reuse: every patent contains code 0
      out.push_back(0);
      if (count > 1) {
        for (std::uint32_t k :
             sample_without_replacement(rng, universe - 1, count - 1))
          out.push_back(k + 1);
      }
      break;
    }
    case Regime::complex_mix: {
      // ring locality with occasional long-range jumps
      const auto center = static_cast<std::uint32_t>(uniform_index(rng, universe));
      std::set<std::uint32_t> chosen;
      for (std::uint32_t j = 0; j < count; ++j)
        chosen.insert((center + j) % universe);
      std::vector<std::uint32_t> picked(chosen.begin(), chosen.end());
      for (std::uint32_t& code : picked) {
        if (code != center && uniform_real(rng) < 0.15)
          code = static_cast<std::uint32_t>(uniform_index(rng, universe));
      }
      std::set<std::uint32_t> dedup(picked.begin(), picked.end());
      out.assign(dedup.begin(), dedup.end());
      break;
    }
    case Regime::random: {
      out = sample_without_replacement(rng, universe, count);
      break;
    }
  }
  return out;
}

}  // namespace

PatentCorpus generate_corpus(const SyntheticCorpusSpec& spec) {
  if (spec.technologies == 0) throw Error("need at least one technology");
  if (spec.year_end < spec.year_begin) throw Error("empty year range");
  if (spec.codes_min < 1 || spec.codes_max < spec.codes_min)
    throw Error("invalid codes-per-patent range");
  if (spec.inventors_max < spec.inventors_min)
    throw Error("invalid inventors-per-patent range");
  if (spec.region_count == 0) throw Error("need at least one region");
  if (spec.region_skew < 0.0 || spec.region_skew > 1.0)
    throw Error("region skew must be in [0, 1]");
  if (spec.ordered + spec.complex_mix + spec.random != spec.technologies)
    throw Error("regime counts must sum to the number of technologies");
  const auto n_years = static_cast<std::size_t>(spec.year_end - spec.year_begin + 1);
  if (spec.patents_per_year.empty())
    throw Error("patents_per_year must not be empty");
  if (spec.patents_per_year.size() != 1 && spec.patents_per_year.size() != n_years)
    throw Error("patents_per_year must have one entry or one per year");
  if (!spec.tech_size_factors.empty() &&
      spec.tech_size_factors.size() != spec.technologies)
    throw Error("tech_size_factors must have one entry per technology");

  std::mt19937_64 rng(derive_seed(spec.seed, "synthetic-corpus"));
  std::vector<PatentRecord> records;
  for (std::uint32_t t = 0; t < spec.technologies; ++t) {
    const std::string tech = tech_code(t);
    const Regime regime = regime_of(spec, t);
    const double factor =
        spec.tech_size_factors.empty() ? 1.0 : spec.tech_size_factors[t];
    for (std::size_t yi = 0; yi < n_years; ++yi) {
      const std::uint32_t base = spec.patents_per_year.size() == 1
                                     ? spec.patents_per_year[0]
                                     : spec.patents_per_year[yi];
      const auto count =
          static_cast<std::uint32_t>(static_cast<double>(base) * factor + 0.5);
      for (std::uint32_t p = 0; p < count; ++p) {
        PatentRecord rec;
        rec.year = spec.year_begin + static_cast<int>(yi);
        rec.id = tech + "-" + std::to_string(rec.year) + "-" + std::to_string(p);
        const auto want =
            spec.codes_min + static_cast<std::uint32_t>(uniform_index(
                                 rng, spec.codes_max - spec.codes_min + 1));
        for (std::uint32_t j :
             draw_codes(regime, spec.codes_per_tech, want, rng))
          rec.codes.push_back(full_code(tech, j));
        const auto inventors =
            spec.inventors_min + static_cast<std::uint32_t>(uniform_index(
                                     rng, spec.inventors_max - spec.inventors_min + 1));
        for (std::uint32_t v = 0; v < inventors; ++v) {
          std::uint32_t region = 0;
          if (uniform_real(rng) >= spec.region_skew)
            region = static_cast<std::uint32_t>(uniform_index(rng, spec.region_count));
          rec.regions.push_back(region_code(region));
        }
        records.push_back(std::move(rec));
      }
    }
  }
  return make_corpus(std::move(records));
}

SyntheticCorpusSpec corpus_spec_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid corpus spec JSON: ") + e.what());
  }
  SyntheticCorpusSpec spec;
  try {
    spec.technologies = j.value("technologies", spec.technologies);
    if (j.contains("years")) {
      spec.year_begin = j["years"].at(0).get<int>();
      spec.year_end = j["years"].at(1).get<int>();
    }
    if (j.contains("patents_per_year")) {
      const auto& v = j["patents_per_year"];
      spec.patents_per_year.clear();
      if (v.is_array())
        for (const auto& x : v)
          spec.patents_per_year.push_back(x.get<std::uint32_t>());
      else
        spec.patents_per_year.push_back(v.get<std::uint32_t>());
    }
    if (j.contains("tech_size_factors"))
      spec.tech_size_factors =
          j["tech_size_factors"].get<std::vector<double>>();
    spec.codes_per_tech = j.value("codes_per_tech", spec.codes_per_tech);
    if (j.contains("codes_per_patent")) {
      spec.codes_min = j["codes_per_patent"].value("min", spec.codes_min);
      spec.codes_max = j["codes_per_patent"].value("max", spec.codes_max);
    }
    if (j.contains("regimes")) {
      spec.ordered = j["regimes"].value("ordered", 0u);
      spec.complex_mix = j["regimes"].value("complex", 0u);
      spec.random = j["regimes"].value("random", 0u);
    } else {
      spec.random = spec.technologies;
    }
    spec.region_count = j.value("region_count", spec.region_count);
    spec.region_skew = j.value("region_skew", spec.region_skew);
    if (j.contains("inventors_per_patent")) {
      spec.inventors_min = j["inventors_per_patent"].value("min", spec.inventors_min);
      spec.inventors_max = j["inventors_per_patent"].value("max", spec.inventors_max);
    }
    spec.seed = j.value("seed", spec.seed);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid corpus spec field: ") + e.what());
  }
  if (spec.patents_per_year.empty()) spec.patents_per_year.push_back(50);
  return spec;
}

void save_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  if (!out) throw Error("write failed: " + path);
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open edge list: " + path);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::uint32_t max_node = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::uint32_t u, v;
    if (!(ss >> u >> v)) throw Error("bad edge list line: " + line);
    edges.emplace_back(u, v);
    max_node = std::max({max_node, u, v});
  }
  return Graph::from_edges(edges.empty() ? 0 : max_node + 1, edges);
}

}  // namespace techcomp
