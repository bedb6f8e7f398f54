#ifndef HAZARD_PERCOLATION_BOUNDS_H_
#define HAZARD_PERCOLATION_BOUNDS_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>

#include "hazard/hazard_matrix.h"
#include "hazard/influence_bounds.h"
#include "hazard/stats.h"
#include "hazard/undirected_graph.h"

namespace hazard {

// kappa = (2e/27)^(2/3), the critical-window constant of the giant
// component bound.
double kappa();
// Positive root of e^x = 2x + 1.
double eta();
// sqrt(eta/8) (sqrt(1 + 8/(2 eta + 1)) - 1), the critical-window constant
// of the N(m) bound (about 0.32).
double kappa1();

struct PercolationBoundReport {
  double bound = 0.0;  // after clamping
  double unclamped = 0.0;
  bool clamped = false;
  Regime regime = Regime::kSubcritical;
  double a_used = 0.0;  // 0 means the a -> 0+ limit
  std::map<std::string, double> constants;
};

// Bound on E[C1] for bond percolation, with threshold kappa n^(-1/3):
//   sub:   1/2 + sqrt(1/4 + n rho / (1 - rho))
//   crit:  gamma0 n + n^(2/3) / sqrt(kappa)
//   super: gamma0 n + c_n sqrt(n) + 2
PercolationBoundReport giant_component_bound(std::size_t n, double rho_h);

// Implicit giant-component inequality
//   E[C1 (1 - exp(-a (C1 - 1)))] <= n (1 - exp(-rho_h gamma(rho_h, a))).
SampleSummary implicit_giant_inequality_lhs(std::span<const double> c1_samples, double a);
double implicit_giant_inequality_rhs(std::size_t n, double rho_h, double a);

// Objective of the N(m) bound for a given a > 0:
//   (n/m) (1 - exp(-rho gamma(rho, a))) / (1 - exp(-a (m - 1))).
double n_components_objective(std::size_t n, std::size_t m, double rho_h, double a);

// Bound on E[N(m)], minimised over a: evaluates the default a from the
// closed-form derivation (a -> 0+ when rho < 1, eta/m near criticality,
// sqrt(2 gamma0 / (B (m - 1))) above it), then golden-section search in
// log a over [1e-9, 10]; returns the smallest value, clamped to n/m.
// m == 1 returns n; m == 0 throws DomainError.
PercolationBoundReport n_components_bound(std::size_t n, std::size_t m, double rho_h);

// Three-branch closed form with threshold kappa1 / sqrt(m).
PercolationBoundReport n_components_closed_form(std::size_t n, std::size_t m,
                                                double rho_h);

// Hazard matrix of site percolation on an undirected graph where node i
// survives with probability p_i:
//   H_ij = -(ln(1 - p_i) + ln(1 - p_j)) / 2 on every edge {i, j}.
// Throws InvalidProbabilityError unless every p_i lies in [0, 1).
HazardMatrix site_percolation_hazard(const UndirectedGraph& graph,
                                     std::span<const double> node_probs);

}  // namespace hazard

#endif  // HAZARD_PERCOLATION_BOUNDS_H_
