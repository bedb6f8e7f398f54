#include "hazard/simulators.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <variant>

#include <fmt/core.h>

#include "hazard/error.h"

namespace hazard {
namespace {

using ArcList = std::vector<std::pair<NodeId, NodeId>>;

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), NodeId{0});
  }

  NodeId find(NodeId x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

  std::size_t size_of_root(NodeId root) const { return size_[root]; }

 private:
  std::vector<NodeId> parent_;
  std::vector<std::size_t> size_;
};

void add_arc(ArcList& arcs, NodeId i, NodeId j, bool mirror) {
  arcs.emplace_back(i, j);
  if (mirror) arcs.emplace_back(j, i);
}

// Visits the realised pairs of a uniform block in row-major order,
// skipping Geometric(p) gaps between successes.
template <typename Visit>
void sample_block(const UniformBlock& block, std::size_t n, TrialRng& rng, Visit&& visit) {
  const auto row_start = [&](std::uint64_t v) -> std::uint64_t {
    return block.with_self_loops ? v : v + 1;
  };
  const std::uint64_t rows = n - block.first;
  const double pairs = static_cast<double>(rows) *
                       static_cast<double>(block.with_self_loops ? rows + 1 : rows - 1) / 2.0;
  const double log_q = std::log1p(-block.p);
  std::uint64_t v = block.first;
  std::uint64_t w = row_start(v);
  bool first_step = true;
  while (v < n) {
    const double skip = std::floor(std::log(rng.uniform_open()) / log_q);
    if (skip > pairs) return;
    w += static_cast<std::uint64_t>(skip) + (first_step ? 0 : 1);
    first_step = false;
    while (w >= n && v < n) {
      w = w - n + row_start(v + 1);
      ++v;
    }
    if (v < n) visit(static_cast<NodeId>(v), static_cast<NodeId>(w));
  }
}

void check_seeds(std::size_t n, std::span<const NodeId> seeds) {
  for (NodeId s : seeds) {
    if (s >= n) throw IndexError(fmt::format("node {} out of range for n={}", s, n));
  }
}

}  // namespace

SampledGraph::SampledGraph(std::size_t n, ArcList arcs) : n_(n), offsets_(n + 1, 0) {
  std::erase_if(arcs, [](const auto& a) { return a.first == a.second; });
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  targets_.reserve(arcs.size());
  for (const auto& [from, to] : arcs) {
    if (from >= n || to >= n) {
      throw IndexError(fmt::format("arc ({}, {}) out of range for n={}", from, to, n));
    }
    ++offsets_[from + 1];
    targets_.push_back(to);
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
}

bool SampledGraph::has_arc(NodeId i, NodeId j) const {
  const auto out = out_neighbors(i);
  return std::binary_search(out.begin(), out.end(), j);
}

bool SampledGraph::symmetric() const {
  for (NodeId i = 0; i < n_; ++i) {
    for (NodeId j : out_neighbors(i)) {
      if (!has_arc(j, i)) return false;
    }
  }
  return true;
}

std::size_t ComponentStats::n_at_least(std::size_t m) const {
  return static_cast<std::size_t>(
      std::count_if(sizes.begin(), sizes.end(), [m](std::size_t s) { return s >= m; }));
}

std::size_t ComponentStats::total() const {
  return std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
}

SampledGraph sample_graph(const GraphSpec& spec, const TrialSeed& seed) {
  TrialRng rng(seed);
  const bool mirror = spec.undirected();
  ArcList arcs;
  for (const auto& e : spec.explicit_entries()) {
    if (rng.bernoulli(e.p)) add_arc(arcs, e.from, e.to, mirror);
  }
  if (const auto& block = spec.uniform_block()) {
    sample_block(*block, spec.num_nodes(), rng,
                 [&](NodeId i, NodeId j) { add_arc(arcs, i, j, mirror); });
  }
  return SampledGraph(spec.num_nodes(), std::move(arcs));
}

NodeSet reachable_set(const SampledGraph& g, std::span<const NodeId> seeds) {
  check_seeds(g.num_nodes(), seeds);
  std::vector<char> seen(g.num_nodes(), 0);
  std::vector<NodeId> queue;
  for (NodeId s : seeds) {
    if (!seen[s]) {
      seen[s] = 1;
      queue.push_back(s);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (NodeId j : g.out_neighbors(queue[head])) {
      if (!seen[j]) {
        seen[j] = 1;
        queue.push_back(j);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

ComponentStats components(const SampledGraph& g) {
  if (!g.symmetric()) throw ContractError("components() requires a symmetric graph");
  const std::size_t n = g.num_nodes();
  UnionFind uf(n);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j : g.out_neighbors(i)) {
      if (i < j) uf.unite(i, j);
    }
  }
  ComponentStats stats;
  for (NodeId i = 0; i < n; ++i) {
    if (uf.find(i) == i) stats.sizes.push_back(uf.size_of_root(i));
  }
  std::sort(stats.sizes.begin(), stats.sizes.end(), std::greater<>());
  return stats;
}

ComponentStats sample_site_percolation(const UndirectedGraph& graph,
                                       std::span<const double> node_probs,
                                       const TrialSeed& seed) {
  if (node_probs.size() != graph.n) {
    throw DomainError(fmt::format("expected {} node probabilities, got {}", graph.n,
                                  node_probs.size()));
  }
  TrialRng rng(seed);
  std::vector<char> alive(graph.n);
  for (std::size_t i = 0; i < graph.n; ++i) alive[i] = rng.bernoulli(node_probs[i]);
  UnionFind uf(graph.n);
  for (const auto& [u, v] : graph.edges) {
    if (alive[u] && alive[v]) uf.unite(u, v);
  }
  ComponentStats stats;
  for (NodeId i = 0; i < graph.n; ++i) {
    if (alive[i] && uf.find(i) == i) stats.sizes.push_back(uf.size_of_root(i));
  }
  std::sort(stats.sizes.begin(), stats.sizes.end(), std::greater<>());
  return stats;
}

SampledGraph sample_sir_graph(const UndirectedGraph& graph, double beta,
                              const IncubationDist& incubation, const TrialSeed& seed) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw DomainError(fmt::format("beta must be finite and >= 0, got {}", beta));
  }
  validate(incubation);
  TrialRng rng(seed);
  std::vector<double> recovery(graph.n);
  for (auto& d : recovery) d = sample(incubation, rng);
  ArcList arcs;
  if (beta == 0.0) return SampledGraph(graph.n, std::move(arcs));
  for (const auto& [u, v] : graph.edges) {
    if (rng.exponential(beta) < recovery[u]) arcs.emplace_back(u, v);
    if (rng.exponential(beta) < recovery[v]) arcs.emplace_back(v, u);
  }
  return SampledGraph(graph.n, std::move(arcs));
}

NodeSet sample_sir_final(const UndirectedGraph& graph, double beta,
                         const IncubationDist& incubation,
                         std::span<const NodeId> initial, const TrialSeed& seed) {
  check_seeds(graph.n, initial);
  return reachable_set(sample_sir_graph(graph, beta, incubation, seed), initial);
}

GraphSpec ctic_edge_spec(const RateSpec& rates) {
  std::vector<EdgeProbability> entries;
  entries.reserve(rates.entries.size());
  for (const auto& e : rates.entries) {
    if (!std::isfinite(e.lambda) || e.lambda < 0.0) {
      throw DomainError(fmt::format("rate integral must be finite and >= 0, got {}", e.lambda));
    }
    entries.push_back({e.from, e.to, -std::expm1(-e.lambda)});
  }
  return GraphSpec(rates.n, rates.orientation, std::move(entries), "ctic");
}

HazardMatrix ctic_hazard(const RateSpec& rates) {
  // Validation (and the index checks) come from building the edge spec.
  const GraphSpec spec = ctic_edge_spec(rates);
  std::vector<MatrixEntry> entries;
  for (const auto& e : rates.entries) {
    if (e.lambda == 0.0) continue;
    entries.push_back({e.from, e.to, e.lambda});
    if (spec.undirected() && e.from != e.to) entries.push_back({e.to, e.from, e.lambda});
  }
  return HazardMatrix(NonnegativeMatrix(rates.n, std::move(entries)));
}

NodeSet sample_dtic(const GraphSpec& probabilities, std::span<const NodeId> initial,
                    const TrialSeed& seed) {
  check_seeds(probabilities.num_nodes(), initial);
  return reachable_set(sample_graph(probabilities, seed), initial);
}

NodeSet sample_ctic(const RateSpec& rates, std::span<const NodeId> initial,
                    const TrialSeed& seed) {
  return sample_dtic(ctic_edge_spec(rates), initial, seed);
}

NodeSet draw_influencers(const InfluencerScheme& scheme, std::size_t n, TrialRng& rng) {
  if (const auto* fixed = std::get_if<FixedInfluencers>(&scheme)) return fixed->nodes;
  NodeSet out;
  if (const auto* uniform = std::get_if<UniformInfluencers>(&scheme)) {
    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), NodeId{0});
    for (std::size_t k = 0; k < uniform->n0; ++k) {
      const auto pick = k + static_cast<std::size_t>(rng.below(n - k));
      std::swap(perm[k], perm[pick]);
    }
    out.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(uniform->n0));
    std::sort(out.begin(), out.end());
    return out;
  }
  const double q = std::get<BernoulliInfluencers>(scheme).q;
  for (NodeId i = 0; i < n; ++i) {
    if (rng.bernoulli(q)) out.push_back(i);
  }
  return out;
}

}  // namespace hazard
