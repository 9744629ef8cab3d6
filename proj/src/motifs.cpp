#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "techcomp/structural.hpp"

namespace techcomp {

namespace {

using i128 = __int128;

struct BitAdjacency {
  std::size_t n = 0;
  std::size_t words = 0;
  std::vector<std::uint64_t> bits;  // n rows of `words` words

  explicit BitAdjacency(const Graph& g)
      : n(g.node_count()), words((n + 63) / 64), bits(n * words, 0) {
    for (std::uint32_t u = 0; u < n; ++u) {
      for (std::uint32_t v : g.neighbors(u)) {
        bits[u * words + v / 64] |= std::uint64_t{1} << (v % 64);
      }
    }
  }
  const std::uint64_t* row(std::uint32_t u) const { return &bits[u * words]; }
};

std::uint64_t popcount_and(const std::uint64_t* a, const std::uint64_t* b,
                           std::size_t words) {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < words; ++i) c += std::popcount(a[i] & b[i]);
  return c;
}

i128 choose2(i128 x) { return x * (x - 1) / 2; }
i128 choose3(i128 x) { return x * (x - 1) * (x - 2) / 6; }
i128 choose4(i128 x) { return x * (x - 1) * (x - 2) * (x - 3) / 24; }

std::uint64_t count3(const Graph& g) {
  // connected 3-subsets = 2-paths - 2 * triangles
  const std::size_t n = g.node_count();
  if (n < 3) return 0;
  BitAdjacency adj(g);
  i128 p2 = 0;
  for (std::uint32_t u = 0; u < n; ++u) p2 += choose2(g.degree(u));
  i128 triangles = 0;
  for (auto [u, v] : g.edges())
    triangles += popcount_and(adj.row(u), adj.row(v), adj.words);
  triangles /= 3;  // each triangle seen from all three edges
  return static_cast<std::uint64_t>(p2 - 2 * triangles);
}

// Connected 4-subsets, counted as C(n,4) minus the disconnected ones.
// Subsets with 0..2 induced edges are always disconnected; with 3 edges only
// the triangle-plus-isolated-vertex split is. The exact-edge-count classes
// N0..N2 come from the binomial transform of A_k = sum_S C(e(S), k), and each
// A_k reduces to non-induced subgraph counts.
std::uint64_t count4(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n < 4) return 0;
  const i128 m = g.edge_count();
  BitAdjacency adj(g);
  const auto edges = g.edges();

  i128 p2 = 0, s3 = 0;  // 2-paths, claws
  for (std::uint32_t u = 0; u < n; ++u) {
    p2 += choose2(g.degree(u));
    s3 += choose3(g.degree(u));
  }

  i128 triangles = 0, paw = 0, diamonds = 0, k4 = 0, tri_iso = 0;
  i128 path4_raw = 0;  // sum over edges of (d_u - 1)(d_v - 1)
  std::vector<std::uint64_t> common(adj.words), trio(adj.words);
  for (auto [u, v] : edges) {
    const std::uint64_t* ru = adj.row(u);
    const std::uint64_t* rv = adj.row(v);
    std::uint64_t t_uv = 0;
    for (std::size_t i = 0; i < adj.words; ++i) {
      common[i] = ru[i] & rv[i];
      t_uv += std::popcount(common[i]);
    }
    diamonds += choose2(static_cast<i128>(t_uv));
    path4_raw += i128(g.degree(u) - 1) * i128(g.degree(v) - 1);

    // triangles u < v < w, enumerated once via their smallest edge
    for (std::size_t wi = v / 64; wi < adj.words; ++wi) {
      std::uint64_t word = common[wi];
      if (wi == v / 64) word &= ~((std::uint64_t{2} << (v % 64)) - 1);
      while (word) {
        const auto w =
            static_cast<std::uint32_t>(wi * 64 + std::countr_zero(word));
        word &= word - 1;
        ++triangles;
        paw += i128(g.degree(u)) + g.degree(v) + g.degree(w) - 6;
        const std::uint64_t* rw = adj.row(w);
        std::uint64_t uni = 0;
        for (std::size_t i = 0; i < adj.words; ++i) {
          trio[i] = common[i] & rw[i];
          uni += std::popcount(ru[i] | rv[i] | rw[i]);
        }
        tri_iso += i128(n) - static_cast<i128>(uni);
        // 4-cliques u < v < w < x
        for (std::size_t xi = w / 64; xi < adj.words; ++xi) {
          std::uint64_t xword = trio[xi];
          if (xi == w / 64) xword &= ~((std::uint64_t{2} << (w % 64)) - 1);
          k4 += std::popcount(xword);
        }
      }
    }
  }

  // paw above also counted triangles with the pendant attached to a second
  // triangle vertex; that is the non-induced convention needed below.
  const i128 path4 = path4_raw - 3 * triangles;

  i128 c4_cycles = 0;
  for (std::uint32_t u = 0; u + 1 < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) {
      c4_cycles += choose2(
          static_cast<i128>(popcount_and(adj.row(u), adj.row(v), adj.words)));
    }
  }
  c4_cycles /= 2;  // every 4-cycle has two diagonals

  const i128 a0 = choose4(static_cast<i128>(n));
  const i128 a1 = m * choose2(static_cast<i128>(n) - 2);
  const i128 a2 = p2 * (i128(n) - 3) + (choose2(m) - p2);
  const i128 a3 = triangles * (i128(n) - 3) + path4 + s3;
  const i128 a4 = c4_cycles + paw;
  const i128 a5 = diamonds;
  const i128 a6 = k4;

  const i128 n0 = a0 - a1 + a2 - a3 + a4 - a5 + a6;
  const i128 n1 = a1 - 2 * a2 + 3 * a3 - 4 * a4 + 5 * a5 - 6 * a6;
  const i128 n2 = a2 - 3 * a3 + 6 * a4 - 10 * a5 + 15 * a6;

  const i128 connected = a0 - n0 - n1 - n2 - tri_iso;
  return static_cast<std::uint64_t>(connected);
}

}  // namespace

std::uint64_t motif_count(const Graph& g, int k) {
  if (k == 3) return count3(g);
  if (k == 4) return count4(g);
  throw std::invalid_argument("motif size must be 3 or 4");
}

}  // namespace techcomp
