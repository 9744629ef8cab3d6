#include <algorithm>
#include <cstdint>
#include <limits>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "techcomp/structural.hpp"

namespace techcomp {

std::vector<std::uint32_t> Partition::sizes() const {
  std::vector<std::uint32_t> s(module_count, 0);
  for (std::uint32_t a : assignment) ++s[a];
  return s;
}

double modularity(const Graph& g, const std::vector<std::uint32_t>& assignment) {
  if (assignment.size() != g.node_count())
    throw std::invalid_argument("assignment size mismatch");
  const double m = static_cast<double>(g.edge_count());
  if (m == 0) return 0.0;
  std::uint32_t parts = 0;
  for (std::uint32_t a : assignment) parts = std::max(parts, a + 1);
  std::vector<double> intra(parts, 0.0), deg(parts, 0.0);
  for (std::uint32_t u = 0; u < g.node_count(); ++u) {
    deg[assignment[u]] += g.degree(u);
    for (std::uint32_t v : g.neighbors(u)) {
      if (u < v && assignment[u] == assignment[v]) intra[assignment[u]] += 1.0;
    }
  }
  double q = 0.0;
  for (std::uint32_t c = 0; c < parts; ++c) {
    const double a = deg[c] / (2.0 * m);
    q += intra[c] / m - a * a;
  }
  return q;
}

namespace {

std::vector<std::uint32_t> compact_labels(std::vector<std::uint32_t> raw,
                                          std::uint32_t* count) {
  std::vector<std::uint32_t> remap(raw.size(),
                                   std::numeric_limits<std::uint32_t>::max());
  std::uint32_t next = 0;
  for (auto& a : raw) {
    if (remap[a] == std::numeric_limits<std::uint32_t>::max()) remap[a] = next++;
    a = remap[a];
  }
  *count = next;
  return raw;
}

// weighted graph for the aggregation levels; self weight = internal edges x2
struct LevelGraph {
  std::vector<std::map<std::uint32_t, double>> adj;  // no self entries
  std::vector<double> self_weight;
  std::vector<double> degree;  // weighted, self loops counted twice
  double total_weight = 0.0;   // 2m

  explicit LevelGraph(const Graph& g)
      : adj(g.node_count()),
        self_weight(g.node_count(), 0.0),
        degree(g.node_count(), 0.0) {
    for (std::uint32_t u = 0; u < g.node_count(); ++u) {
      for (std::uint32_t v : g.neighbors(u)) adj[u][v] = 1.0;
      degree[u] = g.degree(u);
      total_weight += g.degree(u);
    }
  }
  LevelGraph() = default;
  std::size_t size() const { return adj.size(); }
};

// One pass of local moves until no node improves; returns the community of
// every node (not compacted) and whether anything moved.
bool local_moves(const LevelGraph& lg, std::vector<std::uint32_t>& comm) {
  const std::size_t n = lg.size();
  const double two_m = lg.total_weight;
  std::vector<double> sigma_tot(n, 0.0);
  for (std::uint32_t u = 0; u < n; ++u) sigma_tot[comm[u]] += lg.degree[u];

  bool any_move = false;
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::uint32_t u = 0; u < n; ++u) {
      const std::uint32_t from = comm[u];
      // weights of u's links into neighbouring communities
      std::map<std::uint32_t, double> links;
      links[from] += 0.0;
      for (const auto& [v, w] : lg.adj[u]) links[comm[v]] += w;

      sigma_tot[from] -= lg.degree[u];
      const double base = links[from] - sigma_tot[from] * lg.degree[u] / two_m;
      std::uint32_t best = from;
      double best_gain = base;
      for (const auto& [c, w] : links) {
        if (c == from) continue;
        const double gain = w - sigma_tot[c] * lg.degree[u] / two_m;
        const bool better = gain > best_gain + 1e-12;
        const bool tied = !better && gain > best_gain - 1e-12;
        if (better || (tied && c < best)) {
          best_gain = std::max(best_gain, gain);
          best = c;
        }
      }
      sigma_tot[best] += lg.degree[u];
      if (best != from) {
        comm[u] = best;
        improved = true;
        any_move = true;
      }
    }
  }
  return any_move;
}

LevelGraph aggregate(const LevelGraph& lg, const std::vector<std::uint32_t>& comm,
                     std::uint32_t count) {
  LevelGraph out;
  out.adj.assign(count, {});
  out.self_weight.assign(count, 0.0);
  out.degree.assign(count, 0.0);
  out.total_weight = lg.total_weight;
  for (std::uint32_t u = 0; u < lg.size(); ++u) {
    const std::uint32_t cu = comm[u];
    out.self_weight[cu] += lg.self_weight[u];
    for (const auto& [v, w] : lg.adj[u]) {
      const std::uint32_t cv = comm[v];
      if (cu == cv)
        out.self_weight[cu] += w;  // both directions accumulate to 2x internal
      else
        out.adj[cu][cv] += w;
    }
  }
  for (std::uint32_t c = 0; c < count; ++c) {
    out.degree[c] = out.self_weight[c];
    for (const auto& [v, w] : out.adj[c]) out.degree[c] += w;
  }
  return out;
}

}  // namespace

Partition louvain_modules(const Graph& g) {
  const std::size_t n = g.node_count();
  Partition out;
  if (n == 0) return out;
  if (g.edge_count() == 0) {
    out.assignment.resize(n);
    for (std::uint32_t u = 0; u < n; ++u) out.assignment[u] = u;
    out.module_count = static_cast<std::uint32_t>(n);
    return out;
  }

  std::vector<std::uint32_t> node_comm(n);
  for (std::uint32_t u = 0; u < n; ++u) node_comm[u] = u;

  LevelGraph lg(g);
  std::vector<std::uint32_t> level_comm(lg.size());
  for (std::uint32_t u = 0; u < lg.size(); ++u) level_comm[u] = u;

  while (true) {
    const bool moved = local_moves(lg, level_comm);
    std::uint32_t count = 0;
    const auto compact = compact_labels(level_comm, &count);
    for (auto& c : node_comm) c = compact[c];
    if (!moved || count == lg.size()) break;
    lg = aggregate(lg, compact, count);
    level_comm.resize(count);
    for (std::uint32_t u = 0; u < count; ++u) level_comm[u] = u;
  }

  out.assignment = compact_labels(node_comm, &out.module_count);
  out.modularity = modularity(g, out.assignment);
  return out;
}

namespace {

// community state for walk-distance agglomeration
struct WalkCommunity {
  std::vector<double> profile;  // mean t-step visit distribution
  std::uint32_t size = 0;
  bool alive = false;
};

}  // namespace

// Pons-Latapy agglomeration: communities merge by the smallest Ward increment
// of their t-step random-walk profile distance; only adjacent communities
// merge. The returned partition is the dendrogram cut with maximum
// modularity. Deterministic: ties break on the smaller community id pair.
Partition walk_modules(const Graph& g, unsigned walk_length) {
  const std::size_t n = g.node_count();
  Partition out;
  if (n == 0) return out;
  const double m = static_cast<double>(g.edge_count());
  if (m == 0 || n == 1) {
    out.assignment.resize(n);
    for (std::uint32_t u = 0; u < n; ++u) out.assignment[u] = u;
    out.module_count = static_cast<std::uint32_t>(n);
    return out;
  }

  // t-step transition probabilities from every node (dense rows)
  std::vector<double> inv_deg(n);
  for (std::uint32_t u = 0; u < n; ++u)
    inv_deg[u] = g.degree(u) ? 1.0 / g.degree(u) : 0.0;
  std::vector<std::vector<double>> prob(n, std::vector<double>(n, 0.0));
  std::vector<double> next(n);
  for (std::uint32_t s = 0; s < n; ++s) {
    auto& row = prob[s];
    row[s] = 1.0;
    for (unsigned step = 0; step < walk_length; ++step) {
      std::fill(next.begin(), next.end(), 0.0);
      for (std::uint32_t u = 0; u < n; ++u) {
        if (row[u] == 0.0) continue;
        const double share = row[u] * inv_deg[u];
        for (std::uint32_t v : g.neighbors(u)) next[v] += share;
      }
      row = next;
    }
  }
  std::vector<double> inv_sqrt_deg(n);
  for (std::uint32_t u = 0; u < n; ++u)
    inv_sqrt_deg[u] = g.degree(u) ? 1.0 / std::sqrt(double(g.degree(u))) : 0.0;

  std::vector<WalkCommunity> comms(n);
  std::vector<std::uint32_t> comm(n);
  std::vector<std::map<std::uint32_t, double>> links(n);  // edge counts
  for (std::uint32_t u = 0; u < n; ++u) {
    comms[u].profile = prob[u];
    comms[u].size = 1;
    comms[u].alive = true;
    comm[u] = u;
    for (std::uint32_t v : g.neighbors(u)) links[u][v] = 1.0;
  }

  auto ward_delta = [&](std::uint32_t a, std::uint32_t b) {
    const auto& ca = comms[a];
    const auto& cb = comms[b];
    double dist2 = 0.0;
    for (std::uint32_t k = 0; k < n; ++k) {
      const double d = (ca.profile[k] - cb.profile[k]) * inv_sqrt_deg[k];
      dist2 += d * d;
    }
    const double sa = ca.size, sb = cb.size;
    return sa * sb / (sa + sb) * dist2 / static_cast<double>(n);
  };

  // track the best cut by modularity along the merge sequence
  std::vector<double> deg_sum(n, 0.0);
  std::vector<double> intra(n, 0.0);
  double q = 0.0;
  for (std::uint32_t u = 0; u < n; ++u) {
    deg_sum[u] = g.degree(u);
    const double a = deg_sum[u] / (2.0 * m);
    q -= a * a;
  }
  double best_q = q;
  std::vector<std::uint32_t> best = comm;

  std::vector<std::uint32_t> alive_ids(n);
  for (std::uint32_t u = 0; u < n; ++u) alive_ids[u] = u;

  while (alive_ids.size() > 1) {
    double best_delta = std::numeric_limits<double>::infinity();
    std::uint32_t pick_a = 0, pick_b = 0;
    bool found = false;
    for (std::uint32_t a : alive_ids) {
      for (const auto& [b, w] : links[a]) {
        if (b <= a) continue;
        const double delta = ward_delta(a, b);
        if (delta < best_delta) {
          best_delta = delta;
          pick_a = a;
          pick_b = b;
          found = true;
        }
      }
    }
    if (!found) break;  // disconnected remainder

    // modularity bookkeeping for the merged community
    const double l_ab = links[pick_a].at(pick_b);
    q += l_ab / m - deg_sum[pick_a] * deg_sum[pick_b] / (2.0 * m * m);
    intra[pick_a] += intra[pick_b] + l_ab;
    deg_sum[pick_a] += deg_sum[pick_b];

    // merge profiles (weighted mean) and sizes
    auto& ca = comms[pick_a];
    auto& cb = comms[pick_b];
    const double sa = ca.size, sb = cb.size, total = sa + sb;
    for (std::uint32_t k = 0; k < n; ++k)
      ca.profile[k] = (sa * ca.profile[k] + sb * cb.profile[k]) / total;
    ca.size += cb.size;
    cb.alive = false;
    cb.profile.clear();
    cb.profile.shrink_to_fit();

    alive_ids.erase(std::find(alive_ids.begin(), alive_ids.end(), pick_b));
    links[pick_a].erase(pick_b);
    for (const auto& [c, w] : links[pick_b]) {
      if (c == pick_a) continue;
      links[pick_a][c] += w;
      auto& back = links[c];
      back.erase(pick_b);
      back[pick_a] = links[pick_a][c];
    }
    links[pick_b].clear();
    for (std::uint32_t u = 0; u < n; ++u)
      if (comm[u] == pick_b) comm[u] = pick_a;

    if (q > best_q + 1e-15) {
      best_q = q;
      best = comm;
    }
  }

  out.assignment = compact_labels(best, &out.module_count);
  out.modularity = best_q;
  return out;
}

Partition detect_modules(const Graph& g) { return louvain_modules(g); }

// Clauset-Newman-Moore style pair agglomeration with best-partition tracking.
Partition agglomerative_modules(const Graph& g) {
  const std::size_t n = g.node_count();
  Partition out;
  if (n == 0) return out;
  const double m = static_cast<double>(g.edge_count());
  if (m == 0) {
    out.assignment.resize(n);
    for (std::uint32_t u = 0; u < n; ++u) out.assignment[u] = u;
    out.module_count = static_cast<std::uint32_t>(n);
    return out;
  }

  std::vector<std::uint32_t> comm(n);
  std::vector<double> deg_sum(n, 0.0);
  std::vector<std::map<std::uint32_t, double>> links(n);
  for (std::uint32_t u = 0; u < n; ++u) {
    comm[u] = u;
    deg_sum[u] = g.degree(u);
    for (std::uint32_t v : g.neighbors(u)) links[u][v] = 1.0;
  }

  double q = 0.0;
  for (std::uint32_t u = 0; u < n; ++u) {
    const double a = deg_sum[u] / (2.0 * m);
    q -= a * a;
  }
  double best_q = q;
  std::vector<std::uint32_t> best = comm;

  std::vector<std::uint32_t> alive(n);
  for (std::uint32_t u = 0; u < n; ++u) alive[u] = u;

  while (alive.size() > 1) {
    double best_gain = -std::numeric_limits<double>::infinity();
    std::uint32_t pick_a = 0, pick_b = 0;
    bool found = false;
    for (std::uint32_t a : alive) {
      for (const auto& [b, l] : links[a]) {
        if (b <= a) continue;
        const double gain = l / m - deg_sum[a] * deg_sum[b] / (2.0 * m * m);
        if (gain > best_gain) {
          best_gain = gain;
          pick_a = a;
          pick_b = b;
          found = true;
        }
      }
    }
    if (!found) break;  // disconnected remainder

    q += best_gain;
    alive.erase(std::find(alive.begin(), alive.end(), pick_b));
    deg_sum[pick_a] += deg_sum[pick_b];
    links[pick_a].erase(pick_b);
    for (const auto& [c, l] : links[pick_b]) {
      if (c == pick_a) continue;
      links[pick_a][c] += l;
      auto& back = links[c];
      back.erase(pick_b);
      back[pick_a] = links[pick_a][c];
    }
    links[pick_b].clear();
    for (std::uint32_t u = 0; u < n; ++u)
      if (comm[u] == pick_b) comm[u] = pick_a;
    if (q > best_q + 1e-15) {
      best_q = q;
      best = comm;
    }
  }

  out.assignment = compact_labels(best, &out.module_count);
  out.modularity = best_q;
  return out;
}

}  // namespace techcomp
