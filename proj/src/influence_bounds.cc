#include "hazard/influence_bounds.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/core.h>

#include "hazard/error.h"
#include "hazard/hazard_function.h"

namespace hazard {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_rho_h(double rho_h) {
  if (!std::isfinite(rho_h) || rho_h < 0.0) {
    throw DomainError(fmt::format("rho_H must be finite and >= 0, got {}", rho_h));
  }
}

void check_n0(std::size_t n, std::size_t n0, std::size_t min_n0) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (n0 < min_n0 || n0 > n) {
    throw DomainError(fmt::format("n0 = {} outside [{}, {}]", n0, min_n0, n));
  }
}

void check_q(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError(fmt::format("q = {} outside [0, 1]", q));
}

BoundReport finish(BoundReport r, std::size_t n) {
  const double cap = static_cast<double>(n);
  r.clamped = r.unclamped > cap;
  r.bound = std::min(r.unclamped, cap);
  return r;
}

}  // namespace

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::kSubcritical:
      return "subcritical";
    case Regime::kCritical:
      return "critical";
    case Regime::kSupercritical:
      return "supercritical";
  }
  return "unknown";
}

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kFixed:
      return "fixed";
    case ScenarioKind::kUniform:
      return "uniform";
    case ScenarioKind::kBernoulli:
      return "bernoulli";
  }
  return "unknown";
}

std::string_view to_string(BoundForm form) {
  return form == BoundForm::kTheorem ? "theorem" : "closed_form";
}

RegimeClassification classify_regime(ScenarioKind kind, std::size_t n, double param,
                                     double rho_h) {
  check_rho_h(rho_h);
  double threshold = 0.0;
  switch (kind) {
    case ScenarioKind::kFixed:
    case ScenarioKind::kUniform: {
      const double n0 = param;
      const double rest = static_cast<double>(n) - n0;
      if (rest <= 0.0) {
        threshold = kInf;
      } else if (kind == ScenarioKind::kFixed) {
        threshold = std::cbrt(n0 / (4.0 * rest));
      } else {
        threshold = std::sqrt(n0 / (2.0 * rest));
      }
      break;
    }
    case ScenarioKind::kBernoulli:
      threshold = param >= 1.0 ? kInf : std::sqrt(-std::log1p(-param) / 2.0);
      break;
  }
  Regime regime = Regime::kCritical;
  if (rho_h < 1.0 - threshold) {
    regime = Regime::kSubcritical;
  } else if (rho_h > 1.0 + threshold) {
    regime = Regime::kSupercritical;
  }
  return {regime, threshold};
}

BoundReport worst_case_bound(std::size_t n, std::size_t n0, double rho_h) {
  check_n0(n, n0, 1);
  check_rho_h(rho_h);
  BoundReport r;
  r.scenario = ScenarioKind::kFixed;
  r.form = BoundForm::kTheorem;
  const auto cls = classify_regime(ScenarioKind::kFixed, n, static_cast<double>(n0), rho_h);
  r.regime = cls.regime;
  r.constants["n0"] = static_cast<double>(n0);
  r.constants["delta_n"] = cls.threshold;
  if (n0 == n) {
    r.unclamped = static_cast<double>(n);
    return finish(r, n);
  }
  const double rest = static_cast<double>(n - n0);
  const double a = static_cast<double>(n0) / rest;
  const auto g1 = gamma1(rho_h, a);
  r.constants["a"] = a;
  r.constants["gamma1"] = g1.value;
  r.constants["gamma1_residual"] = g1.residual;
  r.unclamped = static_cast<double>(n0) + g1.value * rest;
  return finish(r, n);
}

BoundReport worst_case_closed_form(std::size_t n, std::size_t n0, double rho_h) {
  check_n0(n, n0, 1);
  check_rho_h(rho_h);
  BoundReport r;
  r.scenario = ScenarioKind::kFixed;
  r.form = BoundForm::kClosedForm;
  const double dn0 = static_cast<double>(n0);
  const double rest = static_cast<double>(n - n0);
  const auto cls = classify_regime(ScenarioKind::kFixed, n, dn0, rho_h);
  r.regime = cls.regime;
  r.constants["n0"] = dn0;
  r.constants["delta_n"] = cls.threshold;
  switch (cls.regime) {
    case Regime::kSubcritical:
      r.unclamped = worst_case_subcritical_form(n, n0, rho_h);
      break;
    case Regime::kCritical:
      r.unclamped = dn0 + std::pow(2.0, 4.0 / 3.0) * std::cbrt(dn0) * std::pow(rest, 2.0 / 3.0);
      break;
    case Regime::kSupercritical: {
      const double g0 = gamma0(rho_h).value;
      const double survive = (1.0 - g0) * rho_h;
      const double c_n = std::sqrt(survive / (1.0 - survive));
      r.constants["gamma0"] = g0;
      r.constants["c_n"] = c_n;
      r.unclamped = dn0 + rest * g0 + c_n * std::sqrt(dn0 * rest);
      break;
    }
  }
  return finish(r, n);
}

double worst_case_subcritical_form(std::size_t n, std::size_t n0, double rho_h) {
  check_n0(n, n0, 0);
  check_rho_h(rho_h);
  if (!(rho_h < 1.0)) throw DomainError("subcritical form needs rho_H < 1");
  const double dn0 = static_cast<double>(n0);
  return dn0 + std::sqrt(rho_h / (1.0 - rho_h)) * std::sqrt(dn0 * static_cast<double>(n - n0));
}

BoundReport uniform_bound(std::size_t n, std::size_t n0, double rho_h) {
  check_n0(n, n0, 0);
  check_rho_h(rho_h);
  BoundReport r;
  r.scenario = ScenarioKind::kUniform;
  r.form = BoundForm::kTheorem;
  const auto cls = classify_regime(ScenarioKind::kUniform, n, static_cast<double>(n0), rho_h);
  r.regime = cls.regime;
  r.constants["n0"] = static_cast<double>(n0);
  r.constants["delta_prime_n"] = cls.threshold;
  if (n0 == n) {
    r.unclamped = static_cast<double>(n);
    return finish(r, n);
  }
  const double rest = static_cast<double>(n - n0);
  const double a = static_cast<double>(n0) * rho_h / rest;
  const auto g = gamma(rho_h, a);
  r.constants["a"] = a;
  r.constants["gamma"] = g.value;
  r.unclamped = static_cast<double>(n0) + g.value * rest;
  return finish(r, n);
}

BoundReport uniform_closed_form(std::size_t n, std::size_t n0, double rho_h) {
  check_n0(n, n0, 0);
  check_rho_h(rho_h);
  BoundReport r;
  r.scenario = ScenarioKind::kUniform;
  r.form = BoundForm::kClosedForm;
  const double dn0 = static_cast<double>(n0);
  const double rest = static_cast<double>(n - n0);
  const auto cls = classify_regime(ScenarioKind::kUniform, n, dn0, rho_h);
  r.regime = cls.regime;
  r.constants["n0"] = dn0;
  r.constants["delta_prime_n"] = cls.threshold;
  switch (cls.regime) {
    case Regime::kSubcritical:
      r.unclamped = dn0 / (1.0 - rho_h);
      break;
    case Regime::kCritical:
      r.unclamped = dn0 + std::sqrt(8.0 * dn0 * rest);
      break;
    case Regime::kSupercritical: {
      const double g0 = gamma0(rho_h).value;
      r.constants["gamma0"] = g0;
      r.unclamped = rest * g0 + dn0 / (1.0 - rho_h * (1.0 - g0));
      break;
    }
  }
  return finish(r, n);
}

BoundReport bernoulli_bound(std::size_t n, double q, double rho_h) {
  check_q(q);
  check_rho_h(rho_h);
  BoundReport r;
  r.scenario = ScenarioKind::kBernoulli;
  r.form = BoundForm::kTheorem;
  const auto cls = classify_regime(ScenarioKind::kBernoulli, n, q, rho_h);
  r.regime = cls.regime;
  r.constants["q"] = q;
  r.constants["d_q"] = cls.threshold;
  if (q == 1.0) {
    r.degenerate = true;
    r.unclamped = static_cast<double>(n);
    return finish(r, n);
  }
  const double a = -std::log1p(-q);
  const auto g = gamma(rho_h, a);
  r.constants["a"] = a;
  r.constants["gamma"] = g.value;
  r.unclamped = g.value * static_cast<double>(n);
  return finish(r, n);
}

BoundReport bernoulli_closed_form(std::size_t n, double q, double rho_h) {
  check_q(q);
  check_rho_h(rho_h);
  BoundReport r;
  r.scenario = ScenarioKind::kBernoulli;
  r.form = BoundForm::kClosedForm;
  const auto cls = classify_regime(ScenarioKind::kBernoulli, n, q, rho_h);
  r.regime = cls.regime;
  r.constants["q"] = q;
  r.constants["d_q"] = cls.threshold;
  const double dn = static_cast<double>(n);
  if (q == 1.0) {
    r.degenerate = true;
    r.unclamped = dn;
    return finish(r, n);
  }
  const double a = -std::log1p(-q);
  r.constants["a"] = a;
  switch (cls.regime) {
    case Regime::kSubcritical:
      r.unclamped = a * dn / (1.0 - rho_h);
      break;
    case Regime::kCritical:
      r.unclamped = dn * std::sqrt(8.0 * a);
      break;
    case Regime::kSupercritical: {
      const double g0 = gamma0(rho_h).value;
      r.constants["gamma0"] = g0;
      r.unclamped = dn * g0 + a * (1.0 - g0) * dn / (1.0 - rho_h * (1.0 - g0));
      break;
    }
  }
  return finish(r, n);
}

BoundReport theorem_bound(const InfluencerScheme& scheme, std::size_t n, double rho_h) {
  validate(scheme, n);
  if (const auto* f = std::get_if<FixedInfluencers>(&scheme)) {
    return worst_case_bound(n, f->nodes.size(), rho_h);
  }
  if (const auto* u = std::get_if<UniformInfluencers>(&scheme)) {
    return uniform_bound(n, u->n0, rho_h);
  }
  return bernoulli_bound(n, std::get<BernoulliInfluencers>(scheme).q, rho_h);
}

BoundReport closed_form_bound(const InfluencerScheme& scheme, std::size_t n,
                              double rho_h) {
  validate(scheme, n);
  if (const auto* f = std::get_if<FixedInfluencers>(&scheme)) {
    return worst_case_closed_form(n, f->nodes.size(), rho_h);
  }
  if (const auto* u = std::get_if<UniformInfluencers>(&scheme)) {
    return uniform_closed_form(n, u->n0, rho_h);
  }
  return bernoulli_closed_form(n, std::get<BernoulliInfluencers>(scheme).q, rho_h);
}

double sir_hazard_radius(double rho_a, double beta, const IncubationDist& incubation) {
  if (!(std::isfinite(rho_a) && rho_a >= 0.0)) throw DomainError("rho(A) must be >= 0");
  if (!(std::isfinite(beta) && beta > 0.0)) throw DomainError("beta must be > 0");
  validate(incubation);
  if (const auto* e = std::get_if<ExponentialIncubation>(&incubation)) {
    return std::log1p(beta / e->rate) * rho_a;
  }
  if (const auto* d = std::get_if<DeterministicIncubation>(&incubation)) {
    return beta * d->duration * rho_a;
  }
  return -rho_a * std::log(laplace_transform(incubation, beta));
}

double draief_bound(std::size_t n, std::size_t n0, double beta, double delta,
                    double rho_a) {
  check_n0(n, n0, 0);
  if (!(beta > 0.0 && delta > 0.0 && rho_a >= 0.0)) {
    throw DomainError("draief_bound needs beta > 0, delta > 0, rho(A) >= 0");
  }
  const double load = beta / delta * rho_a;
  if (!(load < 1.0)) {
    throw DomainError(fmt::format("draief_bound undefined: (beta/delta) rho(A) = {} >= 1", load));
  }
  return std::sqrt(static_cast<double>(n) * static_cast<double>(n0)) / (1.0 - load);
}

SirThresholdReport sir_threshold_report(const SirParams& params) {
  SirThresholdReport r;
  r.rho_h = sir_hazard_radius(params.rho_a, params.beta, params.incubation);
  r.mean_incubation = mean(params.incubation);
  r.hazard_subcritical = r.rho_h < 1.0;
  const double load = params.beta * params.rho_a;
  r.generic_mean = load * r.mean_incubation < 1.0;
  if (const auto* e = std::get_if<ExponentialIncubation>(&params.incubation)) {
    r.classical = load < e->rate;
    r.exponential_form = params.beta / e->rate < std::expm1(1.0 / params.rho_a);
  }
  if (const auto* l = std::get_if<LogNormalIncubation>(&params.incubation)) {
    r.lognormal_form = l->mu + 0.5 * l->sigma * l->sigma < -std::log(load);
  }
  return r;
}

}  // namespace hazard
