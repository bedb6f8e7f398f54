#ifndef HAZARD_GRAPH_SPEC_H_
#define HAZARD_GRAPH_SPEC_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hazard {

using NodeId = std::uint32_t;

// Largest node count any generator or loader will accept.
inline constexpr std::size_t kMaxNodes = std::size_t{1} << 26;

enum class Orientation { kDirected, kUndirected };

// One stored edge-presence probability. For undirected specs `from <= to`.
struct EdgeProbability {
  NodeId from = 0;
  NodeId to = 0;
  double p = 0.0;

  friend bool operator==(const EdgeProbability&, const EdgeProbability&) =
      default;
};

// Homogeneous block: every unordered pair {i, j} with first <= i, j < n
// (i == j only if with_self_loops) has presence probability p. Lets dense
// homogeneous models such as G(n, c/n) live in O(1) memory.
struct UniformBlock {
  NodeId first = 0;
  double p = 0.0;
  bool with_self_loops = false;

  friend bool operator==(const UniformBlock&, const UniformBlock&) = default;
};

// Immutable description of a random graph with independent edge variables:
// node count plus the expected adjacency matrix P = (E[A_ij]).
//
// Every stored probability lies in [0, 1); probability-one edges are
// rejected because the Hazard matrix would be infinite.
class GraphSpec {
 public:
  // Throws InvalidProbabilityError, IndexError or DomainError (duplicate
  // pairs, forbidden self-loops, entries overlapping the block, block on a
  // directed spec).
  GraphSpec(std::size_t n, Orientation orientation,
            std::vector<EdgeProbability> entries, std::string label = {},
            bool allow_self_loops = false,
            std::optional<UniformBlock> block = std::nullopt);

  std::size_t num_nodes() const { return n_; }
  bool undirected() const { return orientation_ == Orientation::kUndirected; }
  Orientation orientation() const { return orientation_; }
  const std::string& label() const { return label_; }
  bool allows_self_loops() const { return allow_self_loops_; }

  // Explicit entries sorted by (from, to); excludes the uniform block.
  std::span<const EdgeProbability> explicit_entries() const { return entries_; }
  const std::optional<UniformBlock>& uniform_block() const { return block_; }

  // P_ij; for undirected specs probability(i, j) == probability(j, i).
  double probability(NodeId i, NodeId j) const;

  // Explicit entries plus the pairs covered by the block.
  std::size_t stored_entry_count() const;
  std::size_t block_pair_count() const;

  // max_ij P_ij.
  double max_probability() const;

  // Visits every stored entry (explicit first, then block pairs in
  // (from, to) order). Block expansion is O(n^2); meant for small specs.
  template <typename Visitor>
  void for_each_entry(Visitor&& visit) const {
    for (const auto& e : entries_) visit(e);
    if (!block_) return;
    const auto n = static_cast<NodeId>(n_);
    for (NodeId i = block_->first; i < n; ++i) {
      for (NodeId j = block_->with_self_loops ? i : i + 1; j < n; ++j) {
        visit(EdgeProbability{i, j, block_->p});
      }
    }
  }

  // Same n, orientation and P; label and representation are ignored.
  friend bool operator==(const GraphSpec& a, const GraphSpec& b);

 private:
  std::size_t n_;
  Orientation orientation_;
  std::vector<EdgeProbability> entries_;
  std::string label_;
  bool allow_self_loops_;
  std::optional<UniformBlock> block_;
};

// Validates and stores a weight vector: all entries >= 0, positive sum.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> w);

  std::span<const double> values() const { return w_; }
  std::size_t size() const { return w_.size(); }
  double sum() const { return sum_; }

 private:
  std::vector<double> w_;
  double sum_;
};

// Throws InvalidProbabilityError unless p is finite and 0 <= p < 1.
void check_probability(double p, const char* what);

// G(n, c/n) with i.i.d. entries on all pairs i <= j (self-loops included),
// so its Hazard radius is exactly -n ln(1 - c/n).
GraphSpec erdos_spec(std::size_t n, double c);

// Poissonian graph process: P_ij = 1 - exp(-w_i w_j / sum_k w_k), i <= j.
GraphSpec norros_reittu_spec(const WeightVector& w);

// Star centred on node 0 with probability p on every spoke.
GraphSpec star_spec(std::size_t n, double p);

// Homogeneous bond percolation on the periodic d-dimensional lattice with
// `side` nodes per axis. For side == 2 the two neighbours along an axis
// coincide and the parallel bonds are merged into 1 - (1-p)^2.
GraphSpec grid_spec(std::size_t d, std::size_t side, double p);

// Star on node 0 with spoke probability a, plus G(n-1, b) among nodes
// 1..n-1. Requires 0 <= b < a < 1.
GraphSpec random_star_spec(std::size_t n, double a, double b);

}  // namespace hazard

#endif  // HAZARD_GRAPH_SPEC_H_
