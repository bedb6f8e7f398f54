#ifndef HAZARD_INFLUENCE_BOUNDS_H_
#define HAZARD_INFLUENCE_BOUNDS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "hazard/incubation.h"
#include "hazard/influencer_scheme.h"

namespace hazard {

enum class Regime { kSubcritical, kCritical, kSupercritical };
enum class ScenarioKind { kFixed, kUniform, kBernoulli };
enum class BoundForm { kTheorem, kClosedForm };

std::string_view to_string(Regime regime);
std::string_view to_string(ScenarioKind kind);
std::string_view to_string(BoundForm form);

// Upper bound on expected influence plus the intermediates that produced it.
struct BoundReport {
  double bound = 0.0;      // after clamping to n
  double unclamped = 0.0;
  bool clamped = false;
  bool degenerate = false;  // Bernoulli q == 1: the bound is n by definition
  Regime regime = Regime::kSubcritical;
  ScenarioKind scenario = ScenarioKind::kFixed;
  BoundForm form = BoundForm::kTheorem;
  std::map<std::string, double> constants;
};

struct RegimeClassification {
  Regime regime = Regime::kSubcritical;
  double threshold = 0.0;  // delta_n, delta'_n or d_q
};

// Closed intervals: |rho_h - 1| <= threshold is critical. `param` is n0
// (fixed / uniform) or q (Bernoulli).
//   fixed:     delta_n  = (n0 / (4 (n - n0)))^(1/3)
//   uniform:   delta'_n = sqrt(n0 / (2 (n - n0)))
//   Bernoulli: d_q      = sqrt(-ln(1 - q) / 2)
RegimeClassification classify_regime(ScenarioKind kind, std::size_t n, double param,
                                     double rho_h);

// Fixed influencer set of size n0, 1 <= n0 <= n:
//   n0 + gamma1(rho_h, n0 / (n - n0)) (n - n0).
BoundReport worst_case_bound(std::size_t n, std::size_t n0, double rho_h);
// Three-branch relaxation of worst_case_bound.
BoundReport worst_case_closed_form(std::size_t n, std::size_t n0, double rho_h);
// Its subcritical expression n0 + sqrt(rho/(1-rho)) sqrt(n0 (n - n0)),
// valid for any rho_h < 1; throws DomainError otherwise.
double worst_case_subcritical_form(std::size_t n, std::size_t n0, double rho_h);

// n0 uniformly random influencers, 0 <= n0 <= n:
//   n0 + gamma(rho_h, n0 rho_h / (n - n0)) (n - n0).
BoundReport uniform_bound(std::size_t n, std::size_t n0, double rho_h);
BoundReport uniform_closed_form(std::size_t n, std::size_t n0, double rho_h);

// Independent influencers with probability q: gamma(rho_h, -ln(1-q)) n.
BoundReport bernoulli_bound(std::size_t n, double q, double rho_h);
BoundReport bernoulli_closed_form(std::size_t n, double q, double rho_h);

// Dispatch on the scheme (fixed uses |I| as n0).
BoundReport theorem_bound(const InfluencerScheme& scheme, std::size_t n, double rho_h);
BoundReport closed_form_bound(const InfluencerScheme& scheme, std::size_t n,
                              double rho_h);

// Hazard radius of the SIR reduction on a graph with adjacency spectral
// radius rho_a: -rho_a ln E[exp(-beta D)].
double sir_hazard_radius(double rho_a, double beta, const IncubationDist& incubation);

// Comparison bound sqrt(n n0) / (1 - (beta/delta) rho_a); requires
// beta rho_a < delta.
double draief_bound(std::size_t n, std::size_t n0, double beta, double delta,
                    double rho_a);

struct SirParams {
  double beta = 0.0;
  IncubationDist incubation = ExponentialIncubation{1.0};
  double rho_a = 0.0;
};

// Which sufficient subcriticality conditions hold. Conditions that only
// exist for one incubation family are empty for the others.
struct SirThresholdReport {
  double rho_h = 0.0;
  double mean_incubation = 0.0;
  bool hazard_subcritical = false;       // rho_h < 1
  std::optional<bool> classical;         // beta rho_a < delta
  std::optional<bool> exponential_form;  // beta/delta < exp(1/rho_a) - 1
  bool generic_mean = false;             // beta rho_a E[D] < 1
  std::optional<bool> lognormal_form;    // mu + sigma^2/2 < -ln(beta rho_a)
};

SirThresholdReport sir_threshold_report(const SirParams& params);

}  // namespace hazard

#endif  // HAZARD_INFLUENCE_BOUNDS_H_
