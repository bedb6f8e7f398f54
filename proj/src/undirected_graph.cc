#include "hazard/undirected_graph.h"

#include <algorithm>

#include <fmt/core.h>

#include "hazard/error.h"
#include "hazard/hazard_matrix.h"

namespace hazard {

UndirectedGraph make_undirected_graph(std::size_t n,
                                      std::vector<std::pair<NodeId, NodeId>> edges) {
  if (n < 1 || n > kMaxNodes) throw DomainError("graph node count out of range");
  for (auto& [u, v] : edges) {
    if (u >= n || v >= n) throw IndexError(fmt::format("edge ({}, {}) outside [0, {})", u, v, n));
    if (u == v) throw DomainError(fmt::format("self-loop at node {}", u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw DomainError("duplicate edge");
  }
  return UndirectedGraph{n, std::move(edges)};
}

UndirectedGraph cycle_graph(std::size_t n) {
  if (n < 3) throw DomainError("cycle_graph needs n >= 3");
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>((i + 1) % n));
  }
  return make_undirected_graph(n, std::move(edges));
}

UndirectedGraph path_graph(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(i + 1));
  }
  return make_undirected_graph(n, std::move(edges));
}

UndirectedGraph complete_graph(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return make_undirected_graph(n, std::move(edges));
}

UndirectedGraph support_graph(const GraphSpec& spec) {
  if (!spec.undirected()) throw ContractError("support_graph needs an undirected spec");
  std::vector<std::pair<NodeId, NodeId>> edges;
  spec.for_each_entry([&](const EdgeProbability& e) {
    if (e.p > 0.0 && e.from != e.to) edges.emplace_back(e.from, e.to);
  });
  return make_undirected_graph(spec.num_nodes(), std::move(edges));
}

double adjacency_spectral_radius(const UndirectedGraph& graph) {
  std::vector<MatrixEntry> entries;
  entries.reserve(graph.edges.size() * 2);
  for (const auto& [u, v] : graph.edges) {
    entries.push_back({u, v, 1.0});
    entries.push_back({v, u, 1.0});
  }
  return symmetric_spectral_radius(NonnegativeMatrix(graph.n, std::move(entries))).value;
}

}  // namespace hazard
