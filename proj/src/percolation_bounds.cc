#include "hazard/percolation_bounds.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/core.h>

#include "hazard/error.h"
#include "hazard/graph_spec.h"
#include "hazard/hazard_function.h"

namespace hazard {
namespace {

constexpr double kMinA = 1e-9;
constexpr double kMaxA = 10.0;
constexpr int kGoldenIterations = 200;

void check_rho_h(double rho_h) {
  if (!std::isfinite(rho_h) || rho_h < 0.0) {
    throw DomainError(fmt::format("rho_H must be finite and >= 0, got {}", rho_h));
  }
}

Regime regime_for(double rho_h, double threshold) {
  if (rho_h < 1.0 - threshold) return Regime::kSubcritical;
  if (rho_h > 1.0 + threshold) return Regime::kSupercritical;
  return Regime::kCritical;
}

// B = rho (1 - gamma0)^2 / (1 - rho + rho gamma0), shared by the
// supercritical branches.
double supercritical_b(double rho_h, double g0) {
  return rho_h * (1.0 - g0) * (1.0 - g0) / (1.0 - rho_h + rho_h * g0);
}

PercolationBoundReport finish(PercolationBoundReport r, double cap) {
  r.clamped = r.unclamped > cap;
  r.bound = std::min(r.unclamped, cap);
  return r;
}

}  // namespace

double kappa() { return std::pow(2.0 * std::numbers::e / 27.0, 2.0 / 3.0); }

double eta() {
  static const double value =
      bisect_root([](double x) { return std::exp(x) - 2.0 * x - 1.0; }, 0.5, 2.0, 1e-15, 1e-15);
  return value;
}

double kappa1() {
  const double e = eta();
  return std::sqrt(e / 8.0) * (std::sqrt(1.0 + 8.0 / (2.0 * e + 1.0)) - 1.0);
}

PercolationBoundReport giant_component_bound(std::size_t n, double rho_h) {
  if (n < 1) throw DomainError("n must be >= 1");
  check_rho_h(rho_h);
  const double dn = static_cast<double>(n);
  const double k = kappa();
  const double threshold = k / std::cbrt(dn);
  PercolationBoundReport r;
  r.regime = regime_for(rho_h, threshold);
  r.constants["kappa"] = k;
  r.constants["threshold"] = threshold;
  switch (r.regime) {
    case Regime::kSubcritical:
      r.unclamped = 0.5 + std::sqrt(0.25 + dn * rho_h / (1.0 - rho_h));
      break;
    case Regime::kCritical: {
      const double g0 = gamma0(rho_h).value;
      r.constants["gamma0"] = g0;
      r.unclamped = g0 * dn + std::pow(dn, 2.0 / 3.0) / std::sqrt(k);
      break;
    }
    case Regime::kSupercritical: {
      const double g0 = gamma0(rho_h).value;
      const double c_n = 2.0 / std::sqrt(std::numbers::e) * std::sqrt(supercritical_b(rho_h, g0));
      r.constants["gamma0"] = g0;
      r.constants["c_n"] = c_n;
      r.unclamped = g0 * dn + c_n * std::sqrt(dn) + 2.0;
      break;
    }
  }
  return finish(r, dn);
}

SampleSummary implicit_giant_inequality_lhs(std::span<const double> c1_samples, double a) {
  if (c1_samples.empty()) throw DomainError("implicit giant inequality needs samples");
  if (!(a > 0.0)) throw DomainError("a must be > 0");
  std::vector<double> terms;
  terms.reserve(c1_samples.size());
  for (double c1 : c1_samples) terms.push_back(-c1 * std::expm1(-a * (c1 - 1.0)));
  return summarize(terms);
}

double implicit_giant_inequality_rhs(std::size_t n, double rho_h, double a) {
  if (!(a > 0.0)) throw DomainError("a must be > 0");
  check_rho_h(rho_h);
  return -static_cast<double>(n) * std::expm1(-rho_h * gamma(rho_h, a).value);
}

double n_components_objective(std::size_t n, std::size_t m, double rho_h, double a) {
  if (m < 2) throw DomainError("n_components_objective needs m >= 2");
  if (!(a > 0.0)) throw DomainError("a must be > 0");
  const double numerator = -std::expm1(-rho_h * gamma(rho_h, a).value);
  const double denominator = -std::expm1(-a * static_cast<double>(m - 1));
  return static_cast<double>(n) / static_cast<double>(m) * numerator / denominator;
}

PercolationBoundReport n_components_bound(std::size_t n, std::size_t m, double rho_h) {
  if (m == 0) throw DomainError("m must be >= 1");
  check_rho_h(rho_h);
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  PercolationBoundReport r;
  const double threshold = kappa1() / std::sqrt(dm);
  r.regime = regime_for(rho_h, threshold);
  r.constants["threshold"] = threshold;
  if (m == 1) {
    r.unclamped = dn;
    return finish(r, dn);
  }

  double best = std::numeric_limits<double>::infinity();
  double best_a = 0.0;
  const auto consider = [&](double a, double value) {
    if (value < best) {
      best = value;
      best_a = a;
    }
  };

  if (rho_h < 1.0) consider(0.0, dn / dm * rho_h / ((1.0 - rho_h) * (dm - 1.0)));
  double default_a = 0.0;
  if (r.regime == Regime::kCritical) {
    default_a = eta() / dm;
  } else if (r.regime == Regime::kSupercritical) {
    const double g0 = gamma0(rho_h).value;
    default_a = std::sqrt(2.0 * g0 / (supercritical_b(rho_h, g0) * (dm - 1.0)));
  }
  if (default_a > 0.0) {
    r.constants["default_a"] = default_a;
    consider(default_a, n_components_objective(n, m, rho_h, default_a));
  }

  // Golden-section search on log a; the objective is not known to be
  // unimodal, which is why the default a above is always kept.
  const auto objective = [&](double u) { return n_components_objective(n, m, rho_h, std::exp(u)); };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = std::log(kMinA), hi = std::log(kMaxA);
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = objective(x1), f2 = objective(x2);
  for (int it = 0; it < kGoldenIterations && hi - lo > 1e-12; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = objective(x2);
    }
  }
  consider(std::exp(x1), f1);
  consider(std::exp(x2), f2);

  r.a_used = best_a;
  r.unclamped = best;
  return finish(r, dn / dm);
}

PercolationBoundReport n_components_closed_form(std::size_t n, std::size_t m, double rho_h) {
  if (m == 0) throw DomainError("m must be >= 1");
  check_rho_h(rho_h);
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  const double k1 = kappa1();
  PercolationBoundReport r;
  const double threshold = k1 / std::sqrt(dm);
  r.regime = regime_for(rho_h, threshold);
  r.constants["kappa1"] = k1;
  r.constants["eta"] = eta();
  r.constants["threshold"] = threshold;
  if (m == 1) {
    r.unclamped = dn;
    return finish(r, dn);
  }
  switch (r.regime) {
    case Regime::kSubcritical:
      r.unclamped = dn / (dm * (dm - 1.0)) * rho_h / (1.0 - rho_h);
      break;
    case Regime::kCritical:
      r.unclamped = dn / std::pow(dm, 1.5) / k1;
      break;
    case Regime::kSupercritical: {
      const double g0 = gamma0(rho_h).value;
      const double c_n = supercritical_b(rho_h, g0);
      const double c_n_prime = std::sqrt(g0 * c_n);
      r.constants["gamma0"] = g0;
      r.constants["c_n"] = c_n;
      r.constants["c_n_prime"] = c_n_prime;
      r.unclamped = dn / dm * (g0 + c_n_prime / std::sqrt(dm - 1.0) + c_n / (dm - 1.0));
      break;
    }
  }
  return finish(r, dn / dm);
}

HazardMatrix site_percolation_hazard(const UndirectedGraph& graph,
                                     std::span<const double> node_probs) {
  if (node_probs.size() != graph.n) {
    throw DomainError(fmt::format("expected {} node probabilities, got {}", graph.n,
                                  node_probs.size()));
  }
  for (double p : node_probs) check_probability(p, "node survival probability");
  std::vector<MatrixEntry> entries;
  entries.reserve(graph.edges.size() * 2);
  for (const auto& [u, v] : graph.edges) {
    const double h = -(std::log1p(-node_probs[u]) + std::log1p(-node_probs[v])) / 2.0;
    if (h == 0.0) continue;
    entries.push_back({u, v, h});
    entries.push_back({v, u, h});
  }
  return HazardMatrix(NonnegativeMatrix(graph.n, std::move(entries)));
}

}  // namespace hazard
