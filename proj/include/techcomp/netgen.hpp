#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "techcomp/corpus.hpp"
#include "techcomp/graph.hpp"

namespace techcomp {

enum class NetKind : std::uint8_t { star, tree, small_world, complete, random };

NetKind net_kind_from_string(const std::string& s);
std::string to_string(NetKind k);

struct NetSpec {
  NetKind kind = NetKind::random;
  std::uint32_t n = 100;
  std::uint32_t branching = 2;  // tree
  std::uint32_t k = 6;          // small-world base degree (even)
  double beta = 0.05;           // small-world rewiring probability
  double p = 0.1;               // random edge probability
  std::uint64_t seed = 0;
};

/// Connected reference graph of the requested class; random and small-world
/// graphs are regenerated until connected (bounded retries).
Graph generate_network(const NetSpec& spec);

enum class Regime : std::uint8_t { ordered, complex_mix, random };

/// Synthetic patent corpus whose per-technology co-occurrence graphs
/// approximate an assigned combinatorial regime.
struct SyntheticCorpusSpec {
  std::uint32_t technologies = 1;
  int year_begin = 2000;
  int year_end = 2009;
  std::vector<std::uint32_t> patents_per_year;  // broadcast when size 1
  std::vector<double> tech_size_factors;        // optional, per technology
  std::uint32_t codes_per_tech = 40;
  std::uint32_t codes_min = 2;
  std::uint32_t codes_max = 4;
  std::uint32_t ordered = 0;      // regime counts, in technology order
  std::uint32_t complex_mix = 0;
  std::uint32_t random = 1;
  std::uint32_t region_count = 10;
  double region_skew = 0.0;       // 1.0 puts every inventor in region 0
  std::uint32_t inventors_min = 1;
  std::uint32_t inventors_max = 3;
  std::uint64_t seed = 0;
};

PatentCorpus generate_corpus(const SyntheticCorpusSpec& spec);

SyntheticCorpusSpec corpus_spec_from_json(const std::string& text);

/// One "u v" pair per line.
void save_edge_list(const Graph& g, const std::string& path);
Graph load_edge_list(const std::string& path);

}  // namespace techcomp
