#include "techcomp/graph.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace techcomp {

Graph Graph::from_edges(
    std::size_t n,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
    std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != n)
    throw std::invalid_argument("label count does not match node count");
  Graph g(n, std::move(labels));
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) continue;
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  for (auto& nbrs : g.adj_) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    g.m_ += nbrs.size();
  }
  g.m_ /= 2;
  return g;
}

bool Graph::has_edge(std::uint32_t u, std::uint32_t v) const {
  const auto& nbrs = adj_[u];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> Graph::edges() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  out.reserve(m_);
  for (std::uint32_t u = 0; u < adj_.size(); ++u) {
    for (std::uint32_t v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph induced_subgraph(const Graph& g, std::span<const std::uint32_t> nodes) {
  std::vector<std::uint32_t> remap(g.node_count(),
                                   std::numeric_limits<std::uint32_t>::max());
  for (std::uint32_t i = 0; i < nodes.size(); ++i) remap[nodes[i]] = i;

  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t i = 0; i < nodes.size(); ++i) {
    for (std::uint32_t v : g.neighbors(nodes[i])) {
      const std::uint32_t j = remap[v];
      if (j != std::numeric_limits<std::uint32_t>::max() && i < j)
        edges.emplace_back(i, j);
    }
  }
  std::vector<std::string> labels;
  if (g.labeled()) {
    labels.reserve(nodes.size());
    for (std::uint32_t id : nodes) labels.push_back(g.label(id));
  }
  return Graph::from_edges(nodes.size(), edges, std::move(labels));
}

std::vector<std::vector<std::uint32_t>> connected_components(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<std::uint32_t>> comps;
  std::vector<bool> seen(n, false);
  std::vector<std::uint32_t> stack;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::uint32_t> comp;
    stack.push_back(s);
    seen[s] = true;
    while (!stack.empty()) {
      const std::uint32_t u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (std::uint32_t v : g.neighbors(u)) {
        if (!seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

std::vector<std::uint32_t> largest_component_nodes(const Graph& g) {
  auto comps = connected_components(g);
  if (comps.empty()) return {};
  // Components are ordered by smallest member, so the first maximum wins ties.
  std::size_t best = 0;
  for (std::size_t i = 1; i < comps.size(); ++i) {
    if (comps[i].size() > comps[best].size()) best = i;
  }
  return comps[best];
}

Graph largest_component(const Graph& g) {
  return induced_subgraph(g, largest_component_nodes(g));
}

}  // namespace techcomp
