#ifndef HAZARD_HAZARD_MATRIX_H_
#define HAZARD_HAZARD_MATRIX_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hazard/graph_spec.h"

namespace hazard {

struct MatrixEntry {
  NodeId row = 0;
  NodeId col = 0;
  double value = 0.0;
};

// Symmetric constant block: value on every (i, j), i != j (and i == j when
// `diagonal`), with first <= i, j < n.
struct ConstantBlock {
  NodeId first = 0;
  double value = 0.0;
  bool diagonal = false;
};

// Sparse nonnegative n x n matrix: explicit entries plus an optional
// constant block. Columns can be masked (zeroed) after construction.
class NonnegativeMatrix {
 public:
  NonnegativeMatrix(std::size_t n, std::vector<MatrixEntry> entries,
                    std::optional<ConstantBlock> block = std::nullopt);

  std::size_t num_nodes() const { return n_; }
  std::span<const MatrixEntry> entries() const { return entries_; }
  const std::optional<ConstantBlock>& block() const { return block_; }

  double value(NodeId i, NodeId j) const;
  bool column_masked(NodeId j) const;

  // Zeroes column j for every j in `columns`. Throws IndexError.
  NonnegativeMatrix with_masked_columns(std::span<const NodeId> columns) const;

  // Applies f entrywise; f must map 0 to 0.
  NonnegativeMatrix transformed(const std::function<double(double)>& f) const;

  // y = ((M + M^T) / 2) x.
  void symmetric_product(std::span<const double> x, std::span<double> y) const;

  // max_i sum_j ((M + M^T)/2)_ij, an upper bound on the spectral radius.
  double max_symmetric_row_sum() const;

  double max_value() const;

  // Row-major dense copy of M (tests and small instances only).
  std::vector<double> to_dense() const;

 private:
  std::size_t n_;
  std::vector<MatrixEntry> entries_;
  std::optional<ConstantBlock> block_;
  std::vector<bool> masked_;  // empty when nothing is masked
};

// H_ij = -ln(1 - P_ij).
class HazardMatrix {
 public:
  explicit HazardMatrix(NonnegativeMatrix m) : m_(std::move(m)) {}

  const NonnegativeMatrix& matrix() const { return m_; }
  std::size_t num_nodes() const { return m_.num_nodes(); }
  double value(NodeId i, NodeId j) const { return m_.value(i, j); }

  // The expected adjacency P = 1 - exp(-H) implied by this matrix.
  NonnegativeMatrix expected_adjacency() const;

 private:
  NonnegativeMatrix m_;
};

struct PowerIterationOptions {
  double tol = 1e-10;
  std::size_t max_iter = 100000;
};

struct PowerIterationResult {
  double value = 0.0;
  std::size_t iterations = 0;
  // Relative eigenvalue change at the last step.
  double change = 0.0;
  // ||S x - value x|| / value for the final unit vector x.
  double residual = 0.0;
};

struct HazardSummary {
  double rho_h = 0.0;       // spectral radius of (H + H^T)/2
  double rho_p = 0.0;       // spectral radius of (P + P^T)/2
  double max_p = 0.0;       // ||P||_inf = max_ij P_ij
  std::size_t iterations = 0;
  double residual = 0.0;
};

HazardMatrix hazard_matrix(const GraphSpec& spec);

// Hazard matrix with incoming edges of `nodes` removed:
// H_ij(I) = 1{j not in I} H_ij.
HazardMatrix masked_hazard_matrix(const GraphSpec& spec,
                                  std::span<const NodeId> nodes);

// Largest eigenvalue of (M + M^T)/2 by power iteration from the all-ones
// vector, on the shifted operator S + sI so bipartite spectra converge.
// Throws ConvergenceError carrying the last estimate.
PowerIterationResult symmetric_spectral_radius(
    const NonnegativeMatrix& m, const PowerIterationOptions& options = {});

// rho_H together with rho(P) computed the same way.
HazardSummary hazard_radius(const HazardMatrix& h, double tol = 1e-10,
                            std::size_t max_iter = 100000);

}  // namespace hazard

#endif  // HAZARD_HAZARD_MATRIX_H_
