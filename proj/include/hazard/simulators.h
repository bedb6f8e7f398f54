#ifndef HAZARD_SIMULATORS_H_
#define HAZARD_SIMULATORS_H_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "hazard/graph_spec.h"
#include "hazard/hazard_matrix.h"
#include "hazard/incubation.h"
#include "hazard/influencer_scheme.h"
#include "hazard/rng.h"
#include "hazard/undirected_graph.h"

namespace hazard {

// One realisation of the random adjacency matrix A, stored as sorted
// out-neighbour lists. Self-loops are dropped: they change neither
// reachability nor components.
class SampledGraph {
 public:
  SampledGraph() = default;
  // Builds from directed (from, to) pairs; duplicates are collapsed.
  SampledGraph(std::size_t n, std::vector<std::pair<NodeId, NodeId>> arcs);

  std::size_t num_nodes() const { return n_; }
  std::size_t num_arcs() const { return targets_.size(); }
  std::span<const NodeId> out_neighbors(NodeId i) const {
    return {targets_.data() + offsets_[i], targets_.data() + offsets_[i + 1]};
  }
  bool has_arc(NodeId i, NodeId j) const;
  bool symmetric() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> targets_;
};

struct ComponentStats {
  std::vector<std::size_t> sizes;  // non-increasing

  std::size_t largest() const { return sizes.empty() ? 0 : sizes.front(); }
  std::size_t n_at_least(std::size_t m) const;
  std::size_t total() const;
};

// Independent Bernoulli draw per stored entry; undirected entries are drawn
// once and mirrored. Uniform blocks are sampled by geometric skipping, so
// the cost is proportional to the number of realised edges.
SampledGraph sample_graph(const GraphSpec& spec, const TrialSeed& seed);

// Nodes reachable from `seeds` along directed arcs, sorted. Throws
// IndexError on an out-of-range seed.
NodeSet reachable_set(const SampledGraph& g, std::span<const NodeId> seeds);

// Connected components by union-find. Throws ContractError if g is not
// symmetric.
ComponentStats components(const SampledGraph& g);

// Keeps node i with probability p_i and returns the components of the
// subgraph induced by the survivors; removed nodes are not counted.
ComponentStats sample_site_percolation(const UndirectedGraph& graph,
                                       std::span<const double> node_probs,
                                       const TrialSeed& seed);

// Static SIR reduction: one incubation time D_i per node, one T_ij ~
// Exp(beta) per directed edge, and A_ij = 1{T_ij < D_i}. Out-edges of a
// node are correlated through D_i.
SampledGraph sample_sir_graph(const UndirectedGraph& graph, double beta,
                              const IncubationDist& incubation, const TrialSeed& seed);

// Final infected set of the SIR epidemic started from `initial`.
NodeSet sample_sir_final(const UndirectedGraph& graph, double beta,
                         const IncubationDist& incubation,
                         std::span<const NodeId> initial, const TrialSeed& seed);

// Continuous-time cascade at infinite horizon, each edge given by its rate
// integral Lambda_ij >= 0.
struct RateEntry {
  NodeId from = 0;
  NodeId to = 0;
  double lambda = 0.0;
};

struct RateSpec {
  std::size_t n = 0;
  Orientation orientation = Orientation::kDirected;
  std::vector<RateEntry> entries;
};

// Equivalent edge-probability spec, p_ij = 1 - exp(-Lambda_ij). Throws
// DomainError for negative or non-finite Lambda.
GraphSpec ctic_edge_spec(const RateSpec& rates);

// Hazard matrix of a cascade, built from Lambda directly.
HazardMatrix ctic_hazard(const RateSpec& rates);

NodeSet sample_dtic(const GraphSpec& probabilities, std::span<const NodeId> initial,
                    const TrialSeed& seed);
NodeSet sample_ctic(const RateSpec& rates, std::span<const NodeId> initial,
                    const TrialSeed& seed);

// Influencer set for one trial: fixed sets as-is, uniform subsets by
// partial Fisher-Yates, Bernoulli by one coin per node.
NodeSet draw_influencers(const InfluencerScheme& scheme, std::size_t n, TrialRng& rng);

}  // namespace hazard

#endif  // HAZARD_SIMULATORS_H_
