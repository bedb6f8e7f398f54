#include "hazard/hazard_matrix.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include <fmt/core.h>

#include "hazard/error.h"

namespace hazard {
namespace {

bool in_block(const ConstantBlock& b, NodeId i, NodeId j) {
  return i >= b.first && j >= b.first && (i != j || b.diagonal);
}

double hazard_of(double p) { return -std::log1p(-p); }

}  // namespace

NonnegativeMatrix::NonnegativeMatrix(std::size_t n, std::vector<MatrixEntry> entries,
                                     std::optional<ConstantBlock> block)
    : n_(n), entries_(std::move(entries)), block_(block) {
  for (const auto& e : entries_) {
    if (e.row >= n_ || e.col >= n_) {
      throw IndexError(fmt::format("matrix entry ({}, {}) outside [0, {})", e.row,
                                   e.col, n_));
    }
  }
  std::sort(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  if (block_ && block_->value == 0.0) block_.reset();
}

bool NonnegativeMatrix::column_masked(NodeId j) const {
  return !masked_.empty() && masked_[j];
}

double NonnegativeMatrix::value(NodeId i, NodeId j) const {
  if (i >= n_ || j >= n_) throw IndexError("matrix index out of range");
  if (column_masked(j)) return 0.0;
  double v = block_ && in_block(*block_, i, j) ? block_->value : 0.0;
  const auto it = std::lower_bound(
      entries_.begin(), entries_.end(), std::pair{i, j}, [](const MatrixEntry& e, auto key) {
        return e.row != key.first ? e.row < key.first : e.col < key.second;
      });
  if (it != entries_.end() && it->row == i && it->col == j) v += it->value;
  return v;
}

NonnegativeMatrix NonnegativeMatrix::with_masked_columns(
    std::span<const NodeId> columns) const {
  NonnegativeMatrix out = *this;
  if (out.masked_.empty()) out.masked_.assign(n_, false);
  for (NodeId j : columns) {
    if (j >= n_) throw IndexError(fmt::format("masked node {} outside [0, {})", j, n_));
    out.masked_[j] = true;
  }
  std::erase_if(out.entries_, [&](const MatrixEntry& e) { return out.masked_[e.col]; });
  return out;
}

NonnegativeMatrix NonnegativeMatrix::transformed(
    const std::function<double(double)>& f) const {
  NonnegativeMatrix out = *this;
  for (auto& e : out.entries_) e.value = f(e.value);
  if (out.block_) out.block_->value = f(out.block_->value);
  return out;
}

void NonnegativeMatrix::symmetric_product(std::span<const double> x,
                                          std::span<double> y) const {
  std::fill(y.begin(), y.end(), 0.0);
  for (const auto& e : entries_) {
    y[e.row] += 0.5 * e.value * x[e.col];
    y[e.col] += 0.5 * e.value * x[e.row];
  }
  if (!block_) return;
  const double v = block_->value;
  // Unmasked block sum; masking column j removes (i, j) from M and (j, i)
  // from M^T, so each half is handled separately.
  double total = 0.0;
  double total_unmasked = 0.0;
  for (std::size_t j = block_->first; j < n_; ++j) {
    total += x[j];
    if (!column_masked(static_cast<NodeId>(j))) total_unmasked += x[j];
  }
  for (std::size_t i = block_->first; i < n_; ++i) {
    const bool masked_i = column_masked(static_cast<NodeId>(i));
    // (M x)_i: sum over unmasked j in block, excluding j == i unless diagonal.
    double mx = total_unmasked;
    if (!block_->diagonal && !masked_i) mx -= x[i];
    // (M^T x)_i = sum_j M_ji x_j: zero if column i is masked.
    double mtx = 0.0;
    if (!masked_i) mtx = block_->diagonal ? total : total - x[i];
    y[i] += 0.5 * v * (mx + mtx);
  }
}

double NonnegativeMatrix::max_symmetric_row_sum() const {
  std::vector<double> ones(n_, 1.0), rows(n_);
  symmetric_product(ones, rows);
  return rows.empty() ? 0.0 : *std::max_element(rows.begin(), rows.end());
}

double NonnegativeMatrix::max_value() const {
  double best = 0.0;
  for (const auto& e : entries_) best = std::max(best, e.value);
  if (block_) {
    const std::size_t m = n_ - block_->first;
    const bool any_unmasked = [&] {
      for (std::size_t j = block_->first; j < n_; ++j) {
        if (!column_masked(static_cast<NodeId>(j))) return true;
      }
      return false;
    }();
    if ((m >= 2 || block_->diagonal) && any_unmasked) best = std::max(best, block_->value);
  }
  return best;
}

std::vector<double> NonnegativeMatrix::to_dense() const {
  std::vector<double> d(n_ * n_, 0.0);
  for (const auto& e : entries_) d[e.row * n_ + e.col] += e.value;
  if (block_) {
    for (std::size_t i = block_->first; i < n_; ++i) {
      for (std::size_t j = block_->first; j < n_; ++j) {
        if ((i != j || block_->diagonal) && !column_masked(static_cast<NodeId>(j))) {
          d[i * n_ + j] += block_->value;
        }
      }
    }
  }
  return d;
}

NonnegativeMatrix HazardMatrix::expected_adjacency() const {
  return m_.transformed([](double h) { return -std::expm1(-h); });
}

HazardMatrix hazard_matrix(const GraphSpec& spec) {
  std::vector<MatrixEntry> entries;
  entries.reserve(spec.explicit_entries().size() * (spec.undirected() ? 2 : 1));
  for (const auto& e : spec.explicit_entries()) {
    if (e.p == 0.0) continue;
    const double h = hazard_of(e.p);
    entries.push_back({e.from, e.to, h});
    if (spec.undirected() && e.from != e.to) entries.push_back({e.to, e.from, h});
  }
  std::optional<ConstantBlock> block;
  if (const auto& b = spec.uniform_block()) {
    block = ConstantBlock{b->first, hazard_of(b->p), b->with_self_loops};
  }
  return HazardMatrix(NonnegativeMatrix(spec.num_nodes(), std::move(entries), block));
}

HazardMatrix masked_hazard_matrix(const GraphSpec& spec, std::span<const NodeId> nodes) {
  return HazardMatrix(hazard_matrix(spec).matrix().with_masked_columns(nodes));
}

PowerIterationResult symmetric_spectral_radius(const NonnegativeMatrix& m,
                                               const PowerIterationOptions& options) {
  if (!(options.tol > 0.0)) throw DomainError("power iteration tolerance must be > 0");
  const std::size_t n = m.num_nodes();
  const double bound = m.max_symmetric_row_sum();
  PowerIterationResult result;
  if (bound == 0.0) return result;

  const double shift = 0.5 * bound;
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n))), y(n);
  double previous = -1.0;
  for (std::size_t it = 1; it <= options.max_iter; ++it) {
    m.symmetric_product(x, y);
    const double lambda = std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
    double res2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) res2 += (y[i] - lambda * x[i]) * (y[i] - lambda * x[i]);
    result.value = lambda;
    result.iterations = it;
    result.residual = lambda > 0.0 ? std::sqrt(res2) / lambda : 0.0;
    result.change = previous < 0.0 ? 1.0 : std::abs(lambda - previous) / lambda;
    if (previous >= 0.0 && result.change <= options.tol) return result;
    previous = lambda;

    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] += shift * x[i];
      norm2 += y[i] * y[i];
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] * inv;
  }
  throw ConvergenceError(
      fmt::format("power iteration did not converge in {} iterations (change {:.3g})",
                  options.max_iter, result.change),
      result.value);
}

HazardSummary hazard_radius(const HazardMatrix& h, double tol, std::size_t max_iter) {
  const PowerIterationOptions options{tol, max_iter};
  const auto rh = symmetric_spectral_radius(h.matrix(), options);
  const auto p = h.expected_adjacency();
  const auto rp = symmetric_spectral_radius(p, options);
  HazardSummary s;
  s.rho_h = rh.value;
  s.rho_p = rp.value;
  s.max_p = p.max_value();
  s.iterations = rh.iterations;
  s.residual = rh.residual;
  return s;
}

}  // namespace hazard
