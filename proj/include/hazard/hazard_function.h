#ifndef HAZARD_HAZARD_FUNCTION_H_
#define HAZARD_HAZARD_FUNCTION_H_

#include <functional>
#include <string_view>

namespace hazard {

inline constexpr double kDefaultResidualTol = 1e-12;
inline constexpr double kDefaultWidthTol = 1e-14;
inline constexpr int kGamma1ScanPoints = 10000;

// Which root of the defining equation a solution represents.
enum class RootBranch {
  kUnique,       // gamma: the single root in [0, 1]
  kLimitAtZero,  // gamma0 for rho <= 1, gamma1 at rho = 0: the a -> 0 limit 0
  kSmallest,     // gamma0 for rho > 1 (positive root), gamma1 (first crossing)
};

std::string_view to_string(RootBranch branch);

struct GammaSolution {
  double value = 0.0;
  double residual = 0.0;  // |f(value)| of the defining equation
  RootBranch branch = RootBranch::kUnique;
};

// Bisection for a root of f in [lo, hi] given f(lo) < 0 < f(hi). Stops when
// the bracket is narrower than `width_tol` and |f(mid)| <= `residual_tol`,
// or the bracket stops shrinking in floating point. Returns the bracket
// end (or midpoint) with the smallest |f|.
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double residual_tol = kDefaultResidualTol,
                   double width_tol = kDefaultWidthTol);

// Hazard function: the unique gamma in [0, 1] with
//   gamma - 1 + exp(-rho * gamma - a) = 0.
// a == 0 is defined by continuity as gamma0(rho).
GammaSolution gamma(double rho, double a, double tol = kDefaultResidualTol);

// lim_{a -> 0+} gamma(rho, a): 0 for rho <= 1, otherwise the positive root
// of gamma - 1 + exp(-rho * gamma) = 0.
GammaSolution gamma0(double rho, double tol = kDefaultResidualTol);

// Smallest root in (0, 1] of x - 1 + exp(-rho x - rho a / x) = 0.
//
// Found by scanning kGamma1ScanPoints equally spaced points for the first
// sign change and refining by bisection, so two roots closer together than
// the grid spacing can be missed. rho == 0 returns 0.
GammaSolution gamma1(double rho, double a, double tol = kDefaultResidualTol);

struct GammaUpperEstimates {
  // gamma0(rho) + sqrt(2a) * min(1, 1/sqrt(rho)); valid for every rho.
  double sqrt_bound = 0.0;
  // gamma0 + a (1 - gamma0) / (1 - rho (1 - gamma0)); +inf at rho == 1.
  double linear_bound = 0.0;
};

GammaUpperEstimates gamma_upper_estimates(double rho, double a);

}  // namespace hazard

#endif  // HAZARD_HAZARD_FUNCTION_H_
