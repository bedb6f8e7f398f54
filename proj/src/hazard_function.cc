#include "hazard/hazard_function.h"

#include <cmath>
#include <limits>

#include <fmt/core.h>

#include "hazard/error.h"

namespace hazard {
namespace {

void check_rho(double rho) {
  if (!std::isfinite(rho) || rho < 0.0) {
    throw DomainError(fmt::format("rho must be finite and >= 0, got {}", rho));
  }
}

void check_a(double a, bool allow_zero) {
  if (!std::isfinite(a) || a < 0.0 || (!allow_zero && a == 0.0)) {
    throw DomainError(fmt::format("a must be finite and {}, got {}",
                                  allow_zero ? ">= 0" : "> 0", a));
  }
}

}  // namespace

std::string_view to_string(RootBranch branch) {
  switch (branch) {
    case RootBranch::kUnique:
      return "unique";
    case RootBranch::kLimitAtZero:
      return "limit-at-zero";
    case RootBranch::kSmallest:
      return "smallest";
  }
  return "unknown";
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double residual_tol, double width_tol) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if (f_mid < 0.0) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
    if (hi - lo <= width_tol &&
        std::min(std::abs(f_lo), std::abs(f_hi)) <= residual_tol) {
      break;
    }
  }
  return std::abs(f_lo) <= std::abs(f_hi) ? lo : hi;
}

GammaSolution gamma(double rho, double a, double tol) {
  check_rho(rho);
  check_a(a, /*allow_zero=*/true);
  if (a == 0.0) return gamma0(rho, tol);
  const auto f = [&](double g) { return g + std::expm1(-rho * g - a); };
  const double root = bisect_root(f, 0.0, 1.0, tol);
  return {root, std::abs(f(root)), RootBranch::kUnique};
}

GammaSolution gamma0(double rho, double tol) {
  check_rho(rho);
  if (rho <= 1.0) return {0.0, 0.0, RootBranch::kLimitAtZero};
  const auto f = [&](double g) { return g + std::expm1(-rho * g); };
  // Below the positive root f is negative; walk down until it is.
  double lo = 0.5;
  while (f(lo) >= 0.0) {
    lo *= 0.5;
    if (lo < std::numeric_limits<double>::min()) {
      return {0.0, 0.0, RootBranch::kLimitAtZero};
    }
  }
  const double root = bisect_root(f, lo, 1.0, tol);
  return {root, std::abs(f(root)), RootBranch::kSmallest};
}

GammaSolution gamma1(double rho, double a, double tol) {
  check_rho(rho);
  check_a(a, /*allow_zero=*/false);
  if (rho == 0.0) return {0.0, 0.0, RootBranch::kLimitAtZero};
  const auto f = [&](double x) {
    if (x <= 0.0) return -1.0;  // limit as x -> 0+
    return x + std::expm1(-rho * x - rho * a / x);
  };
  double prev = 0.0;
  for (int k = 1; k <= kGamma1ScanPoints; ++k) {
    const double x = static_cast<double>(k) / kGamma1ScanPoints;
    const double fx = f(x);
    if (fx == 0.0) return {x, 0.0, RootBranch::kSmallest};
    if (fx > 0.0) {
      const double root = bisect_root(f, prev, x, tol);
      return {root, std::abs(f(root)), RootBranch::kSmallest};
    }
    prev = x;
  }
  throw Error(fmt::format("gamma1: no sign change on (0, 1] for rho={}, a={}", rho, a));
}

GammaUpperEstimates gamma_upper_estimates(double rho, double a) {
  check_rho(rho);
  check_a(a, /*allow_zero=*/true);
  const double g0 = gamma0(rho).value;
  GammaUpperEstimates out;
  const double shrink = rho > 1.0 ? 1.0 / std::sqrt(rho) : 1.0;
  out.sqrt_bound = g0 + std::sqrt(2.0 * a) * shrink;
  out.linear_bound = rho == 1.0 ? std::numeric_limits<double>::infinity()
                                : g0 + a * (1.0 - g0) / (1.0 - rho * (1.0 - g0));
  return out;
}

}  // namespace hazard
