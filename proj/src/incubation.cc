#include "hazard/incubation.h"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/core.h>

#include "hazard/error.h"

namespace hazard {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr double kLaplaceRelTol = 1e-10;

double parse_double(const std::string& text, const std::string& whole) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw DomainError(fmt::format("bad number '{}' in incubation '{}'", text, whole));
  }
  return v;
}

double lognormal_laplace(const LogNormalIncubation& d, double s) {
  if (s == 0.0) return 1.0;
  if (d.sigma == 0.0) return std::exp(-s * std::exp(d.mu));
  // E[exp(-s e^{mu + sigma z})] with z ~ N(0, 1). The integrand is below
  // 1e-300 outside |z| < 38, so the finite interval loses nothing.
  const auto integrand = [&](double z) {
    return std::exp(-0.5 * z * z - s * std::exp(d.mu + d.sigma * z)) /
           std::sqrt(2.0 * std::numbers::pi);
  };
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, -38.0, 38.0, 30, kLaplaceRelTol, &error, &l1);
  if (!(error <= kLaplaceRelTol * value) && error > 1e-300) {
    throw ConvergenceError(
        fmt::format("log-normal Laplace transform: error estimate {:.3g} on {:.6g}",
                    error, value),
        value);
  }
  return value;
}

}  // namespace

void validate(const IncubationDist& dist) {
  std::visit(overloaded{
                 [](const ExponentialIncubation& d) {
                   if (!(std::isfinite(d.rate) && d.rate > 0.0))
                     throw DomainError("exponential incubation needs rate > 0");
                 },
                 [](const LogNormalIncubation& d) {
                   if (!std::isfinite(d.mu) || !std::isfinite(d.sigma) || d.sigma < 0.0)
                     throw DomainError("log-normal incubation needs finite mu, sigma >= 0");
                 },
                 [](const DeterministicIncubation& d) {
                   if (!(std::isfinite(d.duration) && d.duration > 0.0))
                     throw DomainError("deterministic incubation needs duration > 0");
                 },
             },
             dist);
}

double mean(const IncubationDist& dist) {
  return std::visit(
      overloaded{
          [](const ExponentialIncubation& d) { return 1.0 / d.rate; },
          [](const LogNormalIncubation& d) { return std::exp(d.mu + 0.5 * d.sigma * d.sigma); },
          [](const DeterministicIncubation& d) { return d.duration; },
      },
      dist);
}

double laplace_transform(const IncubationDist& dist, double s) {
  validate(dist);
  if (!(s >= 0.0)) throw DomainError("Laplace transform argument must be >= 0");
  return std::visit(overloaded{
                        [&](const ExponentialIncubation& d) { return d.rate / (d.rate + s); },
                        [&](const LogNormalIncubation& d) { return lognormal_laplace(d, s); },
                        [&](const DeterministicIncubation& d) {
                          return std::exp(-s * d.duration);
                        },
                    },
                    dist);
}

double sample(const IncubationDist& dist, TrialRng& rng) {
  return std::visit(overloaded{
                        [&](const ExponentialIncubation& d) { return rng.exponential(d.rate); },
                        [&](const LogNormalIncubation& d) {
                          return std::exp(d.mu + d.sigma * rng.normal());
                        },
                        [&](const DeterministicIncubation& d) { return d.duration; },
                    },
                    dist);
}

IncubationDist parse_incubation(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw DomainError(fmt::format("incubation '{}' must look like kind:params", text));
  }
  const std::string kind = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  IncubationDist dist;
  if (kind == "exp") {
    dist = ExponentialIncubation{parse_double(rest, text)};
  } else if (kind == "fixed") {
    dist = DeterministicIncubation{parse_double(rest, text)};
  } else if (kind == "lognormal") {
    const auto comma = rest.find(',');
    if (comma == std::string::npos) {
      throw DomainError(fmt::format("incubation '{}' needs mu,sigma", text));
    }
    dist = LogNormalIncubation{parse_double(rest.substr(0, comma), text),
                               parse_double(rest.substr(comma + 1), text)};
  } else {
    throw DomainError(fmt::format("unknown incubation kind '{}'", kind));
  }
  validate(dist);
  return dist;
}

std::string to_string(const IncubationDist& dist) {
  return std::visit(
      overloaded{
          [](const ExponentialIncubation& d) { return fmt::format("exp:{}", d.rate); },
          [](const LogNormalIncubation& d) {
            return fmt::format("lognormal:{},{}", d.mu, d.sigma);
          },
          [](const DeterministicIncubation& d) { return fmt::format("fixed:{}", d.duration); },
      },
      dist);
}

}  // namespace hazard
