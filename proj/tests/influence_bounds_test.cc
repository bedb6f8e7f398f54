#include <cmath>

#include <gtest/gtest.h>

#include "hazard/error.h"
#include "hazard/hazard_function.h"
#include "hazard/incubation.h"
#include "hazard/influence_bounds.h"

namespace hazard {
namespace {

TEST(WorstCaseBoundTest, Examples) {
  EXPECT_DOUBLE_EQ(worst_case_bound(50, 5, 0.0).bound, 5.0);
  EXPECT_DOUBLE_EQ(worst_case_bound(50, 50, 3.0).bound, 50.0);
  const double b = worst_case_bound(1000, 1, 0.5).bound;
  EXPECT_LE(b, 1.0 + std::sqrt(999.0));
  EXPECT_GT(b, 1.0);
  EXPECT_THROW(worst_case_bound(10, 0, 0.5), DomainError);
  EXPECT_THROW(worst_case_bound(10, 11, 0.5), DomainError);
}

TEST(WorstCaseClosedFormTest, Branches) {
  EXPECT_NEAR(worst_case_closed_form(1000, 1, 1.0).bound,
              1.0 + std::pow(2.0, 4.0 / 3.0) * std::pow(999.0, 2.0 / 3.0), 1e-9);
  EXPECT_NEAR(worst_case_closed_form(1000, 1, 1.0).bound, 252.8, 0.1);
  EXPECT_NEAR(worst_case_closed_form(1000, 1, 0.5).bound, 1.0 + std::sqrt(999.0), 1e-9);
  const double g0 = gamma0(2.0).value;
  const double c_n = std::sqrt((1 - g0) * 2 / (1 - (1 - g0) * 2));
  EXPECT_NEAR(worst_case_closed_form(100, 1, 2.0).bound,
              std::min(100.0, 99 * g0 + 1 + c_n * std::sqrt(99.0)), 1e-9);
  EXPECT_EQ(worst_case_closed_form(100, 1, 2.0).regime, Regime::kSupercritical);
}

TEST(UniformBoundTest, Examples) {
  EXPECT_DOUBLE_EQ(uniform_bound(100, 0, 0.7).bound, 0.0);
  EXPECT_DOUBLE_EQ(uniform_bound(100, 0, 1.0).bound, 0.0);
  EXPECT_DOUBLE_EQ(uniform_closed_form(100, 10, 0.5).bound, 20.0);
  const auto crit = uniform_closed_form(100, 10, 1.0);
  EXPECT_EQ(crit.regime, Regime::kCritical);
  EXPECT_NEAR(crit.bound, 10.0 + std::sqrt(7200.0), 1e-9);
  EXPECT_LE(crit.bound, 100.0);
  EXPECT_TRUE(uniform_closed_form(10, 5, 1.0).clamped);
}

TEST(BernoulliBoundTest, Examples) {
  EXPECT_DOUBLE_EQ(bernoulli_bound(100, 0.0, 0.9).bound, 0.0);
  EXPECT_NEAR(bernoulli_closed_form(100, 0.1, 0.5).bound, -std::log(0.9) * 100 / 0.5, 1e-9);
  EXPECT_NEAR(bernoulli_closed_form(100, 0.1, 0.5).bound, 21.07, 0.01);
  EXPECT_NEAR(bernoulli_bound(100, 1e-12, 2.0).bound, 100 * gamma0(2.0).value, 1e-6);
  const auto degenerate = bernoulli_bound(100, 1.0, 0.5);
  EXPECT_TRUE(degenerate.degenerate);
  EXPECT_EQ(degenerate.bound, 100.0);
  EXPECT_THROW(bernoulli_bound(100, 1.5, 0.5), DomainError);
}

TEST(ClassifyRegimeTest, Thresholds) {
  EXPECT_NEAR(classify_regime(ScenarioKind::kFixed, 1000, 1, 1.0).threshold,
              std::cbrt(1.0 / 3996.0), 1e-12);
  EXPECT_NEAR(classify_regime(ScenarioKind::kFixed, 1000, 1, 1.0).threshold, 0.0630, 1e-4);
  EXPECT_NEAR(classify_regime(ScenarioKind::kUniform, 100, 50, 1.0).threshold, std::sqrt(0.5),
              1e-12);
  EXPECT_NEAR(classify_regime(ScenarioKind::kBernoulli, 100, 0.1, 1.0).threshold, 0.2295, 1e-4);
  // Closed interval: exactly on the edge is critical.
  const double t = std::sqrt(-std::log1p(-0.1) / 2.0);
  EXPECT_EQ(classify_regime(ScenarioKind::kBernoulli, 100, 0.1, 1.0 + t).regime,
            Regime::kCritical);
  EXPECT_EQ(classify_regime(ScenarioKind::kBernoulli, 100, 0.1, 1.0 + t * 1.0001).regime,
            Regime::kSupercritical);
}

TEST(BoundPropertiesTest, TheoremBelowClosedForm) {
  for (std::size_t n : {10u, 100u, 1000u, 10000u}) {
    for (double rho = 0.0; rho <= 4.0; rho += 0.05) {
      for (std::size_t n0 : {std::size_t{1}, n / 10, n / 2}) {
        if (n0 == 0) continue;
        EXPECT_LE(worst_case_bound(n, n0, rho).bound,
                  worst_case_closed_form(n, n0, rho).bound + 1e-9)
            << n << " " << n0 << " " << rho;
        EXPECT_LE(uniform_bound(n, n0, rho).bound, uniform_closed_form(n, n0, rho).bound + 1e-9)
            << n << " " << n0 << " " << rho;
      }
      for (double q : {1e-4, 0.01, 0.1, 0.5}) {
        EXPECT_LE(bernoulli_bound(n, q, rho).bound, bernoulli_closed_form(n, q, rho).bound + 1e-9)
            << n << " " << q << " " << rho;
      }
    }
  }
}

TEST(BoundPropertiesTest, MonotoneInRho) {
  for (std::size_t n : {100u, 10000u}) {
    double prev_fixed = 0.0, prev_uniform = 0.0, prev_bern = 0.0;
    for (double rho = 0.0; rho <= 4.0; rho += 0.01) {
      const double f = worst_case_bound(n, 3, rho).bound;
      const double u = uniform_bound(n, 3, rho).bound;
      const double b = bernoulli_bound(n, 0.01, rho).bound;
      EXPECT_GE(f, prev_fixed - 1e-9);
      EXPECT_GE(u, prev_uniform - 1e-9);
      EXPECT_GE(b, prev_bern - 1e-9);
      prev_fixed = f;
      prev_uniform = u;
      prev_bern = b;
    }
  }
}

TEST(BoundPropertiesTest, BoundsWithinRange) {
  for (double rho : {0.0, 0.5, 1.0, 3.0, 50.0}) {
    const auto r = worst_case_bound(100, 7, rho);
    EXPECT_GE(r.bound, 7.0);
    EXPECT_LE(r.bound, 100.0);
  }
}

TEST(SchemeDispatchTest, MatchesDirectCalls) {
  EXPECT_EQ(theorem_bound(parse_scheme("fixed:0,1,2"), 50, 0.8).bound,
            worst_case_bound(50, 3, 0.8).bound);
  EXPECT_EQ(closed_form_bound(parse_scheme("uniform:4"), 50, 0.8).bound,
            uniform_closed_form(50, 4, 0.8).bound);
  EXPECT_EQ(theorem_bound(parse_scheme("bernoulli:0.2"), 50, 0.8).bound,
            bernoulli_bound(50, 0.2, 0.8).bound);
  EXPECT_THROW(theorem_bound(parse_scheme("fixed:60"), 50, 0.8), IndexError);
}

TEST(SirHazardRadiusTest, Incubations) {
  EXPECT_NEAR(sir_hazard_radius(2.0, 1.0, ExponentialIncubation{1.0}), 2 * std::log(2.0), 1e-14);
  EXPECT_NEAR(sir_hazard_radius(2.0, 1.0, DeterministicIncubation{0.5}), 1.0, 1e-15);
  const LogNormalIncubation ln{-1.0, 0.5};
  const double beta = 0.05, rho_a = 3.0;
  const double rho_h = sir_hazard_radius(rho_a, beta, ln);
  EXPECT_LE(rho_h, beta * rho_a * std::exp(ln.mu + ln.sigma * ln.sigma / 2));
  EXPECT_GT(rho_h, 0.0);
  EXPECT_THROW(sir_hazard_radius(2.0, 0.0, ExponentialIncubation{1.0}), DomainError);
}

TEST(DraiefBoundTest, Examples) {
  EXPECT_NEAR(draief_bound(100, 1, 0.25, 1.0, 2.0), 20.0, 1e-12);
  const double rho_h = 2 * std::log(1.25);
  EXPECT_NEAR(rho_h, 0.4463, 1e-4);
  const double ours = worst_case_closed_form(100, 1, rho_h).bound;
  EXPECT_NEAR(ours, 1 + std::sqrt(rho_h / (1 - rho_h)) * std::sqrt(99.0), 1e-9);
  EXPECT_NEAR(ours, 9.93, 0.01);
  EXPECT_LE(ours, 20.0);
  EXPECT_THROW(draief_bound(100, 1, 0.5, 1.0, 2.0), DomainError);
}

TEST(SirThresholdReportTest, CycleGap) {
  const auto r = sir_threshold_report({0.6, ExponentialIncubation{1.0}, 2.0});
  ASSERT_TRUE(r.classical && r.exponential_form);
  EXPECT_FALSE(*r.classical);
  EXPECT_TRUE(*r.exponential_form);
  EXPECT_TRUE(r.hazard_subcritical);
  EXPECT_NEAR(std::expm1(0.5), 0.6487, 1e-4);
}

TEST(SirThresholdReportTest, SmallBetaSatisfiesEverything) {
  const auto r = sir_threshold_report({1e-9, ExponentialIncubation{1.0}, 2.0});
  EXPECT_TRUE(r.hazard_subcritical && *r.classical && *r.exponential_form && r.generic_mean);
}

TEST(SirThresholdReportTest, LogNormalBoundaryIsNotStrict) {
  // mu + sigma^2/2 == -ln(beta rho_a) with beta rho_a = 1/2.
  const auto r = sir_threshold_report({0.25, LogNormalIncubation{-std::log(0.5), 0.0}, 2.0});
  ASSERT_TRUE(r.lognormal_form.has_value());
  EXPECT_FALSE(*r.lognormal_form);
}

}  // namespace
}  // namespace hazard
