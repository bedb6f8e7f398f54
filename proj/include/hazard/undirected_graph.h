#ifndef HAZARD_UNDIRECTED_GRAPH_H_
#define HAZARD_UNDIRECTED_GRAPH_H_

#include <cstddef>
#include <utility>
#include <vector>

#include "hazard/graph_spec.h"

namespace hazard {

// Deterministic simple graph used as the substrate of SIR and site
// percolation. Edges are stored once with first < second.
struct UndirectedGraph {
  std::size_t n = 0;
  std::vector<std::pair<NodeId, NodeId>> edges;
};

// Normalises, sorts and validates (no self-loops, no duplicates).
UndirectedGraph make_undirected_graph(std::size_t n,
                                      std::vector<std::pair<NodeId, NodeId>> edges);

UndirectedGraph cycle_graph(std::size_t n);
UndirectedGraph path_graph(std::size_t n);
UndirectedGraph complete_graph(std::size_t n);

// Pairs with positive probability in an undirected spec, self-loops
// dropped. Expands uniform blocks, so keep it to small specs.
UndirectedGraph support_graph(const GraphSpec& spec);

// rho(A) of the 0/1 adjacency matrix.
double adjacency_spectral_radius(const UndirectedGraph& graph);

}  // namespace hazard

#endif  // HAZARD_UNDIRECTED_GRAPH_H_
