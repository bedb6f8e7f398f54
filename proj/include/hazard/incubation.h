#ifndef HAZARD_INCUBATION_H_
#define HAZARD_INCUBATION_H_

#include <string>
#include <variant>

#include "hazard/rng.h"

namespace hazard {

// Recovery ("incubation") time distributions for SIR. All times share the
// unit of 1 / beta.
struct ExponentialIncubation {
  double rate = 1.0;  // delta
};
struct LogNormalIncubation {
  double mu = 0.0;
  double sigma = 0.0;
};
struct DeterministicIncubation {
  double duration = 1.0;
};

using IncubationDist =
    std::variant<ExponentialIncubation, LogNormalIncubation, DeterministicIncubation>;

// Throws DomainError unless rate > 0, sigma >= 0, duration > 0 (all finite).
void validate(const IncubationDist& dist);

double mean(const IncubationDist& dist);

// E[exp(-s D)] for s >= 0. The log-normal case is adaptive Gauss-Kronrod
// quadrature over the Gaussian variable, relative tolerance 1e-10;
// throws ConvergenceError if the error estimate stays above it.
double laplace_transform(const IncubationDist& dist, double s);

double sample(const IncubationDist& dist, TrialRng& rng);

// "exp:<rate>", "lognormal:<mu>,<sigma>", "fixed:<d>".
IncubationDist parse_incubation(const std::string& text);
std::string to_string(const IncubationDist& dist);

}  // namespace hazard

#endif  // HAZARD_INCUBATION_H_
