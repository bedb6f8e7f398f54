#include "hazard/exact.h"

#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include <fmt/core.h>

#include "hazard/error.h"

namespace hazard {
namespace {

using Mask = std::uint64_t;

Mask bit(NodeId i) { return Mask{1} << i; }

// Calls visit(weight, adjacency) for every realisation of the non-loop
// entries of `spec`; adjacency[i] is the out-neighbour mask of node i.
void enumerate_realisations(const GraphSpec& spec,
                            const std::function<void(double, const std::vector<Mask>&)>& visit) {
  const std::size_t n = spec.num_nodes();
  if (n > kMaxExactNodes) {
    throw CapacityError(fmt::format("exact enumeration supports n <= {}, got {}",
                                    kMaxExactNodes, n));
  }
  // Self-loops are irrelevant to reachability and at most n of them exist.
  const auto too_many = [] {
    return CapacityError(
        fmt::format("exact enumeration supports at most {} entries", kMaxExactEntries));
  };
  if (spec.stored_entry_count() > kMaxExactEntries + n) throw too_many();
  std::vector<EdgeProbability> entries;
  spec.for_each_entry([&](const EdgeProbability& e) {
    if (e.from != e.to && e.p > 0.0) entries.push_back(e);
  });
  if (entries.size() > kMaxExactEntries) throw too_many();
  const bool mirror = spec.undirected();
  const std::size_t m = entries.size();
  std::vector<Mask> adjacency(n);
  for (Mask pattern = 0; pattern < (Mask{1} << m); ++pattern) {
    std::fill(adjacency.begin(), adjacency.end(), 0);
    double weight = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
      const auto& e = entries[k];
      if (pattern >> k & 1) {
        weight *= e.p;
        adjacency[e.from] |= bit(e.to);
        if (mirror) adjacency[e.to] |= bit(e.from);
      } else {
        weight *= 1.0 - e.p;
      }
    }
    visit(weight, adjacency);
  }
}

Mask closure_from(Mask reached, const std::vector<Mask>& adjacency) {
  for (;;) {
    Mask next = reached;
    for (Mask rest = reached; rest != 0; rest &= rest - 1) {
      next |= adjacency[std::countr_zero(rest)];
    }
    if (next == reached) return reached;
    reached = next;
  }
}

Mask to_mask(std::size_t n, std::span<const NodeId> nodes) {
  Mask mask = 0;
  for (NodeId i : nodes) {
    if (i >= n) throw IndexError(fmt::format("node {} out of range for n={}", i, n));
    mask |= bit(i);
  }
  return mask;
}

// P(a given node is missed by n0 uniform draws without replacement | k of
// the n nodes would reach it) = C(n - k, n0) / C(n, n0).
double uniform_miss_probability(std::size_t n, std::size_t n0, std::size_t k) {
  if (k + n0 > n) return 0.0;
  double ratio = 1.0;
  for (std::size_t t = 0; t < n0; ++t) {
    ratio *= static_cast<double>(n - k - t) / static_cast<double>(n - t);
  }
  return ratio;
}

}  // namespace

double exact_influence(const GraphSpec& spec, std::span<const NodeId> initial) {
  const Mask seeds = to_mask(spec.num_nodes(), initial);
  double total = 0.0;
  enumerate_realisations(spec, [&](double weight, const std::vector<Mask>& adjacency) {
    total += weight * std::popcount(closure_from(seeds, adjacency));
  });
  return total;
}

double exact_scenario_influence(const GraphSpec& spec, const InfluencerScheme& scheme) {
  const std::size_t n = spec.num_nodes();
  validate(scheme, n);
  if (const auto* fixed = std::get_if<FixedInfluencers>(&scheme)) {
    return exact_influence(spec, fixed->nodes);
  }
  const auto miss = [&](std::size_t k) {
    if (const auto* u = std::get_if<UniformInfluencers>(&scheme)) {
      return uniform_miss_probability(n, u->n0, k);
    }
    return std::pow(1.0 - std::get<BernoulliInfluencers>(scheme).q, static_cast<double>(k));
  };
  double total = 0.0;
  std::vector<std::size_t> ancestors(n);
  enumerate_realisations(spec, [&](double weight, const std::vector<Mask>& adjacency) {
    std::fill(ancestors.begin(), ancestors.end(), 0);
    for (NodeId u = 0; u < n; ++u) {
      for (Mask rest = closure_from(bit(u), adjacency); rest != 0; rest &= rest - 1) {
        ++ancestors[std::countr_zero(rest)];
      }
    }
    double reached = 0.0;
    for (std::size_t k : ancestors) reached += 1.0 - miss(k);
    total += weight * reached;
  });
  return total;
}

double exact_ctic_influence(const RateSpec& rates, std::span<const NodeId> initial) {
  return exact_influence(ctic_edge_spec(rates), initial);
}

double exact_sir_influence(const UndirectedGraph& graph, double beta, double delta,
                           std::span<const NodeId> initial) {
  const std::size_t n = graph.n;
  if (n > kMaxExactSirNodes) {
    throw CapacityError(fmt::format("exact SIR supports n <= {}, got {}", kMaxExactSirNodes, n));
  }
  if (!std::isfinite(beta) || beta < 0.0) throw DomainError("beta must be finite and >= 0");
  if (!std::isfinite(delta) || delta <= 0.0) throw DomainError("delta must be finite and > 0");
  std::vector<Mask> neighbors(n, 0);
  for (const auto& [u, v] : graph.edges) {
    neighbors[u] |= bit(v);
    neighbors[v] |= bit(u);
  }
  // E[exp(-j beta D)] for D ~ Exp(delta).
  const auto laplace = [&](int j) { return delta / (delta + j * beta); };
  // P(transmit to exactly `success` and not to `failure`), by
  // inclusion-exclusion over the successes.
  const auto pattern_probability = [&](Mask success, Mask failure) {
    const int f = std::popcount(failure);
    double p = 0.0;
    for (Mask t = success;; t = (t - 1) & success) {
      const int size = std::popcount(t);
      p += (size % 2 == 0 ? 1.0 : -1.0) * laplace(size + f);
      if (t == 0) break;
    }
    return p;
  };
  std::function<double(Mask, Mask)> expand = [&](Mask reached, Mask processed) -> double {
    const Mask pending = reached & ~processed;
    if (pending == 0) return std::popcount(reached);
    const auto u = static_cast<NodeId>(std::countr_zero(pending));
    const Mask open = neighbors[u] & ~reached;
    double total = 0.0;
    for (Mask success = open;; success = (success - 1) & open) {
      const double p = pattern_probability(success, open & ~success);
      if (p != 0.0) total += p * expand(reached | success, processed | bit(u));
      if (success == 0) break;
    }
    return total;
  };
  return expand(to_mask(n, initial), 0);
}

}  // namespace hazard
