#ifndef HAZARD_EXACT_H_
#define HAZARD_EXACT_H_

#include <cstddef>
#include <span>

#include "hazard/graph_spec.h"
#include "hazard/influencer_scheme.h"
#include "hazard/simulators.h"
#include "hazard/undirected_graph.h"

namespace hazard {

// Brute-force oracles for small instances.
inline constexpr std::size_t kMaxExactEntries = 25;
inline constexpr std::size_t kMaxExactNodes = 64;
inline constexpr std::size_t kMaxExactSirNodes = 6;

// sigma(I) = E|R(I, A)| by enumerating all 2^m realisations of the stored
// entries (self-loops excluded, undirected pairs counted once). Throws
// CapacityError for m > 25 or n > 64.
double exact_influence(const GraphSpec& spec, std::span<const NodeId> initial);

// Expected influence averaged over the influencer scheme as well as the
// graph. Uses one enumeration: for each realisation, node v is reached
// unless the influencer set misses every node that can reach v.
double exact_scenario_influence(const GraphSpec& spec, const InfluencerScheme& scheme);

// Exact influence of a cascade given by rate integrals.
double exact_ctic_influence(const RateSpec& rates, std::span<const NodeId> initial);

// Expected SIR final size with exponential incubation (rate delta), by
// enumerating the joint out-edge pattern of each infected node. Throws
// CapacityError for n > 6.
double exact_sir_influence(const UndirectedGraph& graph, double beta, double delta,
                           std::span<const NodeId> initial);

}  // namespace hazard

#endif  // HAZARD_EXACT_H_
