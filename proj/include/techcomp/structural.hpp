#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "techcomp/corpus.hpp"
#include "techcomp/graph.hpp"

namespace techcomp {

/// Combinatorial network of one technology: full classification codes of all
/// window patents carrying at least one code of the focal class, linked by
/// on-patent co-occurrence. Node order is sorted by code, which doubles as
/// the canonical order for seeded sampling.
struct CoOccurrenceGraph {
  Graph graph;
  std::string technology;
};

/// With restrict_to_focal, only codes of the focal class become nodes.
CoOccurrenceGraph build_graph(const PatentWindow& w, std::string_view technology,
                              bool restrict_to_focal = false);

/// Node partition from greedy modularity maximization. Deterministic: nodes
/// are visited in index order and ties break on the smallest community id.
struct Partition {
  std::vector<std::uint32_t> assignment;  // node -> module id (0..count-1)
  std::uint32_t module_count = 0;
  double modularity = 0.0;
  std::vector<std::uint32_t> sizes() const;
};

/// Walk-distance agglomeration (Ward merging of t-step walk profiles), cut
/// at the dendrogram level of maximum modularity. The default detector.
Partition detect_modules(const Graph& g);
Partition walk_modules(const Graph& g, unsigned walk_length = 4);

/// Multilevel local-move modularity optimization.
Partition louvain_modules(const Graph& g);

/// Pairwise agglomerative modularity variant; merges the best pair until no
/// gain remains.
Partition agglomerative_modules(const Graph& g);

double modularity(const Graph& g, const std::vector<std::uint32_t>& assignment);

using ModuleDetector = std::function<Partition(const Graph&)>;

/// Eigenvalues of L = D - A, ascending. Exact zero multiplicity equals the
/// number of connected components up to solver tolerance.
std::vector<double> laplacian_spectrum(const Graph& g);

/// Number of connected induced subgraphs on k distinct nodes, k in {3, 4}.
std::uint64_t motif_count(const Graph& g, int k);

enum class IndsDegeneracy : std::uint8_t {
  none,
  single_module,       // one module: maximally ordered structure
  equal_module_sizes,  // zero module-size variance
  no_size4_motifs,
  too_small,
};

struct IndsBreakdown {
  double alpha_module = 0.0;  // modules / nodes
  double v_module = 0.0;      // var(sizes) / mean(sizes), n-1 divisor
  double v_lambda = 0.0;      // var(spectrum) / mean(spectrum)
  double r_motif = 0.0;       // motif3 / motif4
  double value = 0.0;
  std::uint32_t module_count = 0;
  std::uint64_t motif3 = 0;
  std::uint64_t motif4 = 0;
  IndsDegeneracy degeneracy = IndsDegeneracy::none;
  bool degenerate() const { return degeneracy != IndsDegeneracy::none; }
};

/// Individual network diversity score of a connected graph with >= 5 nodes.
IndsBreakdown inds(const Graph& g);
IndsBreakdown inds(const Graph& g, const ModuleDetector& detect);

struct SamplingParams {
  std::uint32_t node_sample_small = 100;
  std::uint32_t node_sample_large = 300;
  std::uint32_t large_threshold = 1000;  // nodes
  std::uint32_t walk_steps = 1000;
  std::uint32_t subnet_nodes = 200;
  std::uint32_t min_component = 5;
  std::uint64_t seed = 0;
  double inds_floor = 1e-12;
  std::uint32_t retry_limit = 3;
  bool restrict_to_focal = false;
};

struct StructuralScore {
  std::string technology;
  double nds = 1.0;           // mean individual score over kept samples
  double structural = 0.0;    // -ln(nds)
  std::uint32_t sample_count = 0;    // kept samples
  std::uint32_t skipped_samples = 0; // degenerate after retries
  std::uint32_t ordered_samples = 0; // single-module subnetworks
  bool degenerate_flag = false;      // complete-component shortcut
};

/// Walk-sampled network diversity of the graph's largest component.
/// Throws TechnologyTooSmallError / AllSamplesDegenerateError.
StructuralScore nds(const Graph& g, const SamplingParams& p,
                    std::string technology = {});

enum class SkipReason : std::uint8_t {
  technology_too_small,
  all_samples_degenerate,
};

std::string_view to_string(SkipReason r);

struct StructuralSkip {
  std::string technology;
  SkipReason reason;
};

struct StructuralResult {
  std::vector<StructuralScore> scores;  // ordered by technology
  std::vector<StructuralSkip> skipped;
};

/// Scores every technology of the window; each technology draws its RNG
/// stream from (p.seed, technology), so results are schedule-independent.
StructuralResult structural_scores(const PatentWindow& w,
                                   const SamplingParams& p,
                                   unsigned workers = 1);

}  // namespace techcomp
