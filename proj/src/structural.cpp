#include "techcomp/structural.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "techcomp/errors.hpp"
#include "techcomp/parallel.hpp"
#include "techcomp/rng.hpp"

namespace techcomp {

std::vector<double> laplacian_spectrum(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (std::uint32_t u = 0; u < g.node_count(); ++u) {
    lap(u, u) = g.degree(u);
    for (std::uint32_t v : g.neighbors(u)) lap(u, v) = -1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap,
                                                        Eigen::EigenvaluesOnly);
  const auto& eig = solver.eigenvalues();
  return {eig.data(), eig.data() + n};
}

CoOccurrenceGraph build_graph(const PatentWindow& w, std::string_view technology,
                              bool restrict_to_focal) {
  std::set<std::string> nodes;
  std::vector<std::uint32_t> members;  // window indices of focal patents
  for (std::uint32_t i = 0; i < w.size(); ++i) {
    const PatentRecord& rec = w.record(i);
    bool focal = false;
    for (const auto& code : rec.codes) {
      if (ipc4(code) == technology) {
        focal = true;
        break;
      }
    }
    if (!focal) continue;
    members.push_back(i);
    for (const auto& code : rec.codes) {
      if (!restrict_to_focal || ipc4(code) == technology)
        nodes.emplace(code);
    }
  }
  if (members.empty())
    throw Error("no window patents in technology " + std::string(technology));

  std::vector<std::string> labels(nodes.begin(), nodes.end());
  auto index_of = [&](const std::string& code) {
    return static_cast<std::uint32_t>(
        std::lower_bound(labels.begin(), labels.end(), code) - labels.begin());
  };

  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<std::uint32_t> ids;
  for (std::uint32_t i : members) {
    const PatentRecord& rec = w.record(i);
    ids.clear();
    for (const auto& code : rec.codes) {
      if (!restrict_to_focal || ipc4(code) == technology)
        ids.push_back(index_of(code));
    }
    for (std::size_t a = 0; a < ids.size(); ++a) {
      for (std::size_t b = a + 1; b < ids.size(); ++b)
        edges.emplace_back(ids[a], ids[b]);
    }
  }
  const std::size_t node_count = labels.size();
  return {Graph::from_edges(node_count, edges, std::move(labels)),
          std::string(technology)};
}

namespace {

struct Moments {
  double mean = 0.0;
  double var = 0.0;  // n-1 divisor
};

template <typename T>
Moments sample_moments(const std::vector<T>& xs) {
  Moments mo;
  const std::size_t n = xs.size();
  if (n == 0) return mo;
  double sum = 0.0;
  for (T x : xs) sum += static_cast<double>(x);
  mo.mean = sum / static_cast<double>(n);
  if (n < 2) return mo;
  double ss = 0.0;
  for (T x : xs) {
    const double d = static_cast<double>(x) - mo.mean;
    ss += d * d;
  }
  mo.var = ss / static_cast<double>(n - 1);
  return mo;
}

}  // namespace

IndsBreakdown inds(const Graph& g) { return inds(g, detect_modules); }

IndsBreakdown inds(const Graph& g, const ModuleDetector& detect) {
  IndsBreakdown b;
  const std::size_t n = g.node_count();
  if (n < 5) {
    b.degeneracy = IndsDegeneracy::too_small;
    return b;
  }

  const Partition part = detect(g);
  b.module_count = part.module_count;
  b.alpha_module = static_cast<double>(part.module_count) / static_cast<double>(n);
  if (part.module_count < 2) {
    b.degeneracy = IndsDegeneracy::single_module;
    return b;
  }
  const auto sizes = part.sizes();
  const Moments ms = sample_moments(sizes);
  b.v_module = ms.var / ms.mean;
  if (ms.var == 0.0) {
    b.degeneracy = IndsDegeneracy::equal_module_sizes;
    return b;
  }

  const auto spectrum = laplacian_spectrum(g);
  const Moments ml = sample_moments(spectrum);
  b.v_lambda = ml.var / ml.mean;

  b.motif3 = motif_count(g, 3);
  b.motif4 = motif_count(g, 4);
  if (b.motif4 == 0) {
    b.degeneracy = IndsDegeneracy::no_size4_motifs;
    return b;
  }
  b.r_motif = static_cast<double>(b.motif3) / static_cast<double>(b.motif4);
  b.value = b.alpha_module * b.v_module / (b.v_lambda * b.r_motif);
  return b;
}

namespace {

/// Distinct nodes visited by a simple random walk, ascending.
std::vector<std::uint32_t> walk_visits(const Graph& g, std::uint32_t start,
                                       std::uint32_t steps,
                                       std::mt19937_64& rng) {
  std::vector<bool> seen(g.node_count(), false);
  std::vector<std::uint32_t> visited;
  seen[start] = true;
  visited.push_back(start);
  std::uint32_t u = start;
  for (std::uint32_t s = 0; s < steps; ++s) {
    const auto& nbrs = g.neighbors(u);
    if (nbrs.empty()) break;
    u = nbrs[uniform_index(rng, nbrs.size())];
    if (!seen[u]) {
      seen[u] = true;
      visited.push_back(u);
    }
  }
  std::sort(visited.begin(), visited.end());
  return visited;
}

constexpr std::uint64_t kStartSalt = 0;

}  // namespace

StructuralScore nds(const Graph& g, const SamplingParams& p,
                    std::string technology) {
  StructuralScore score;
  score.technology = std::move(technology);

  const auto lc_nodes = largest_component_nodes(g);
  if (lc_nodes.size() < p.min_component)
    throw TechnologyTooSmallError(score.technology, lc_nodes.size(),
                                  p.min_component);
  const Graph lc = induced_subgraph(g, lc_nodes);

  if (lc.is_complete()) {
    score.degenerate_flag = true;
    score.nds = 1.0;
    score.structural = 0.0;
    return score;
  }

  const auto comp_n = static_cast<std::uint32_t>(lc.node_count());
  std::uint32_t samples = comp_n < p.large_threshold ? p.node_sample_small
                                                     : p.node_sample_large;
  samples = std::min(samples, comp_n);

  std::mt19937_64 start_rng(derive_seed(p.seed, kStartSalt));
  const auto starts = sample_without_replacement(start_rng, comp_n, samples);

  double sum = 0.0;
  for (std::uint32_t i = 0; i < samples; ++i) {
    std::mt19937_64 rng(derive_seed(p.seed, std::uint64_t{1} + i));
    const auto visited = walk_visits(lc, starts[i], p.walk_steps, rng);
    const bool whole = visited.size() <= p.subnet_nodes;

    bool kept = false;
    double value = 0.0;
    for (std::uint32_t attempt = 0;; ++attempt) {
      std::vector<std::uint32_t> chosen;
      if (whole) {
        chosen = visited;
      } else {
        chosen.reserve(p.subnet_nodes);
        for (std::uint32_t k : sample_without_replacement(
                 rng, static_cast<std::uint32_t>(visited.size()),
                 p.subnet_nodes))
          chosen.push_back(visited[k]);
      }
      const Graph comp = largest_component(induced_subgraph(lc, chosen));
      const IndsBreakdown b =
          comp.node_count() >= 5 ? inds(comp) : IndsBreakdown{
              .degeneracy = IndsDegeneracy::too_small};
      if (!b.degenerate()) {
        value = b.value;
        kept = true;
        break;
      }
      if (b.degeneracy == IndsDegeneracy::single_module) {
        // One module is the fully ordered case; scored like the complete
        // component shortcut instead of being discarded.
        value = 1.0;
        ++score.ordered_samples;
        kept = true;
        break;
      }
      if (whole || attempt + 1 >= p.retry_limit) break;  // nothing new to draw
    }

    if (kept) {
      ++score.sample_count;
      sum += std::max(value, p.inds_floor);
    } else {
      ++score.skipped_samples;
    }
  }

  if (score.sample_count == 0)
    throw AllSamplesDegenerateError(score.technology);
  score.nds = sum / static_cast<double>(score.sample_count);
  score.structural = -std::log(score.nds);
  if (score.structural == 0.0) score.structural = 0.0;  // normalize -0
  return score;
}

std::string_view to_string(SkipReason r) {
  switch (r) {
    case SkipReason::technology_too_small:
      return "TechnologyTooSmall";
    case SkipReason::all_samples_degenerate:
      return "AllSamplesDegenerate";
  }
  return "Unknown";
}

StructuralResult structural_scores(const PatentWindow& w,
                                   const SamplingParams& p, unsigned workers) {
  const auto techs = window_technologies(w);
  struct Slot {
    std::optional<StructuralScore> score;
    std::optional<SkipReason> skip;
  };
  std::vector<Slot> slots(techs.size());

  parallel_for(techs.size(), workers, [&](std::size_t i) {
    const auto& tech = techs[i];
    SamplingParams local = p;
    local.seed = derive_seed(p.seed, tech);
    try {
      const auto cg = build_graph(w, tech, p.restrict_to_focal);
      slots[i].score = nds(cg.graph, local, tech);
    } catch (const TechnologyTooSmallError&) {
      slots[i].skip = SkipReason::technology_too_small;
    } catch (const AllSamplesDegenerateError&) {
      slots[i].skip = SkipReason::all_samples_degenerate;
    }
  });

  StructuralResult out;
  for (std::size_t i = 0; i < techs.size(); ++i) {
    if (slots[i].score) {
      out.scores.push_back(std::move(*slots[i].score));
    } else if (slots[i].skip) {
      out.skipped.push_back({techs[i], *slots[i].skip});
    }
  }
  return out;
}

}  // namespace techcomp
