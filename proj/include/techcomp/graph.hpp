#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace techcomp {

/// Simple undirected graph over dense node ids with optional string labels.
/// Adjacency lists are kept sorted; no self loops, no multi-edges.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n, std::vector<std::string> labels = {})
      : adj_(n), labels_(std::move(labels)) {}

  static Graph from_edges(
      std::size_t n,
      const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
      std::vector<std::string> labels = {});

  std::size_t node_count() const { return adj_.size(); }
  std::size_t edge_count() const { return m_; }
  std::uint32_t degree(std::uint32_t u) const {
    return static_cast<std::uint32_t>(adj_[u].size());
  }
  const std::vector<std::uint32_t>& neighbors(std::uint32_t u) const {
    return adj_[u];
  }
  bool has_edge(std::uint32_t u, std::uint32_t v) const;
  bool is_complete() const {
    const std::size_t n = node_count();
    return m_ == n * (n - 1) / 2;
  }

  bool labeled() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::uint32_t u) const { return labels_[u]; }

  /// All edges as (u, v) with u < v, lexicographically sorted.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;

 private:
  std::size_t m_ = 0;
  std::vector<std::vector<std::uint32_t>> adj_;
  std::vector<std::string> labels_;
};

/// Subgraph induced on `nodes` (sorted, unique original ids). Node i of the
/// result is nodes[i]; labels carry over.
Graph induced_subgraph(const Graph& g, std::span<const std::uint32_t> nodes);

/// Connected components as sorted node-id lists, ordered by smallest member.
std::vector<std::vector<std::uint32_t>> connected_components(const Graph& g);

/// Nodes of the maximum-cardinality component; ties go to the component
/// containing the smallest node id (labels are sorted at construction time
/// for co-occurrence graphs, so this is the lexicographic rule).
std::vector<std::uint32_t> largest_component_nodes(const Graph& g);

Graph largest_component(const Graph& g);

}  // namespace techcomp
