#pragma once

// Test-only oracles, independent of the library implementations they check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "techcomp/corpus.hpp"
#include "techcomp/graph.hpp"

namespace oracle {

// ---- exact rational arithmetic ------------------------------------------

struct Fraction {
  long long num = 0;
  long long den = 1;

  Fraction() = default;
  Fraction(long long n, long long d = 1) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  Fraction operator+(const Fraction& o) const {
    return {num * o.den + o.num * den, den * o.den};
  }
  Fraction operator-(const Fraction& o) const {
    return {num * o.den - o.num * den, den * o.den};
  }
  Fraction operator*(const Fraction& o) const { return {num * o.num, den * o.den}; }
  Fraction operator/(const Fraction& o) const { return {num * o.den, den * o.num}; }
  bool operator==(const Fraction& o) const { return num == o.num && den == o.den; }
  double to_double() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
};

// ---- graph oracles --------------------------------------------------------

// Connected induced k-subgraph count by exhaustive subset enumeration.
inline std::uint64_t brute_motifs(const techcomp::Graph& g, int k) {
  const auto n = static_cast<std::uint32_t>(g.node_count());
  std::vector<std::uint32_t> subset;
  std::uint64_t count = 0;

  auto connected = [&](const std::vector<std::uint32_t>& nodes) {
    std::vector<bool> seen(nodes.size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (!seen[j] && g.has_edge(nodes[i], nodes[j])) {
          seen[j] = true;
          ++reached;
          stack.push_back(j);
        }
      }
    }
    return reached == nodes.size();
  };

  std::function<void(std::uint32_t)> rec = [&](std::uint32_t next) {
    if (subset.size() == static_cast<std::size_t>(k)) {
      if (connected(subset)) ++count;
      return;
    }
    for (std::uint32_t v = next; v < n; ++v) {
      subset.push_back(v);
      rec(v + 1);
      subset.pop_back();
    }
  };
  rec(0);
  return count;
}

// Newman modularity computed from scratch.
inline double brute_modularity(const techcomp::Graph& g,
                               const std::vector<std::uint32_t>& assign) {
  const double m = static_cast<double>(g.edge_count());
  std::map<std::uint32_t, double> intra, deg;
  for (std::uint32_t u = 0; u < g.node_count(); ++u) {
    deg[assign[u]] += g.degree(u);
    for (std::uint32_t v : g.neighbors(u))
      if (u < v && assign[u] == assign[v]) intra[assign[u]] += 1.0;
  }
  double q = 0.0;
  for (const auto& [c, d] : deg) {
    const double a = d / (2.0 * m);
    q += intra[c] / m - a * a;
  }
  return q;
}

// Best modularity over all 2-partitions (and the trivial 1-partition).
inline double best_two_partition_modularity(const techcomp::Graph& g) {
  const auto n = static_cast<std::uint32_t>(g.node_count());
  std::vector<std::uint32_t> assign(n, 0);
  double best = brute_modularity(g, assign);
  for (std::uint64_t mask = 1; mask + 1 < (1ull << n); ++mask) {
    for (std::uint32_t u = 0; u < n; ++u) assign[u] = (mask >> u) & 1;
    best = std::max(best, brute_modularity(g, assign));
  }
  return best;
}

// ---- reflection oracle ------------------------------------------------------

struct NaiveKci {
  std::vector<double> region_scores;
  std::vector<double> tech_scores;
};

// Direct per-cell loop over the incidence matrix, no dropping.
inline NaiveKci naive_reflection(const std::vector<std::vector<int>>& m,
                                 unsigned iterations) {
  const std::size_t nr = m.size(), nc = m[0].size();
  std::vector<double> kr(nr, 0.0), kc(nc, 0.0);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) kr[r] += m[r][c];
  for (std::size_t c = 0; c < nc; ++c)
    for (std::size_t r = 0; r < nr; ++r) kc[c] += m[r][c];
  const auto kr0 = kr, kc0 = kc;
  for (unsigned it = 0; it < iterations; ++it) {
    std::vector<double> kr_next(nr, 0.0), kc_next(nc, 0.0);
    for (std::size_t r = 0; r < nr; ++r) {
      for (std::size_t c = 0; c < nc; ++c)
        if (m[r][c]) kr_next[r] += kc[c];
      kr_next[r] /= kr0[r];
    }
    for (std::size_t c = 0; c < nc; ++c) {
      for (std::size_t r = 0; r < nr; ++r)
        if (m[r][c]) kc_next[c] += kr[r];
      kc_next[c] /= kc0[c];
    }
    kr = kr_next;
    kc = kc_next;
  }
  return {kr, kc};
}

// ---- corpus helpers ---------------------------------------------------------

inline techcomp::PatentRecord rec(std::string id, int year,
                                  std::vector<std::string> codes,
                                  std::vector<std::string> regions = {}) {
  techcomp::PatentRecord r;
  r.id = std::move(id);
  r.year = year;
  r.codes = std::move(codes);
  r.regions = std::move(regions);
  return r;
}

}  // namespace oracle
