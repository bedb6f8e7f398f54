#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "hazard/error.h"
#include "hazard/graph_spec.h"
#include "hazard/hazard_function.h"
#include "hazard/hazard_matrix.h"
#include "hazard/percolation_bounds.h"

namespace hazard {
namespace {

// Largest eigenvalue of the symmetrised dense matrix, by Eigen.
double dense_radius(const std::vector<double>& dense, std::size_t n) {
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = dense[i * n + j];
  }
  const Eigen::MatrixXd s = (m + m.transpose()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

GraphSpec random_spec(std::mt19937_64& rng, std::size_t n, bool undirected) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<EdgeProbability> entries;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = undirected ? i + 1 : 0; j < n; ++j) {
      if (i == j || unit(rng) < 0.4) continue;
      entries.push_back({i, j, 0.95 * unit(rng)});
    }
  }
  return GraphSpec(n, undirected ? Orientation::kUndirected : Orientation::kDirected,
                   std::move(entries));
}

// Fixed-point iteration g <- 1 - exp(-rho g - a) started from `start`.
double fixed_point(double rho, double a, double start) {
  double g = start;
  for (int it = 0; it < 2'000'000; ++it) {
    const double next = -std::expm1(-rho * g - a);
    if (std::abs(next - g) < 1e-15) return next;
    g = next;
  }
  return g;
}

// Smallest root of x - 1 + exp(-rho x - rho a / x) on (0, 1] by a fine
// scan followed by long-double bisection.
double gamma1_oracle(double rho, double a) {
  const auto f = [&](long double x) {
    return x - 1.0L + std::exp(-static_cast<long double>(rho) * x - rho * a / x);
  };
  const int steps = 1'000'000;
  long double prev = 1e-300L;
  for (int k = 1; k <= steps; ++k) {
    const long double x = static_cast<long double>(k) / steps;
    if (f(x) >= 0) {
      long double lo = prev, hi = x;
      for (int it = 0; it < 200; ++it) {
        const long double mid = (lo + hi) / 2;
        (f(mid) < 0 ? lo : hi) = mid;
      }
      return static_cast<double>((lo + hi) / 2);
    }
    prev = x;
  }
  return NAN;
}

TEST(HazardMatrixTest, EntriesAreMinusLogOneMinusP) {
  const GraphSpec spec(3, Orientation::kUndirected,
                       {{0, 1, -std::expm1(-1.0)}, {1, 2, 0.5}});
  const HazardMatrix h = hazard_matrix(spec);
  EXPECT_DOUBLE_EQ(h.value(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(h.value(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(h.value(2, 1), std::log(2.0));
  EXPECT_EQ(h.value(0, 2), 0.0);
}

TEST(HazardMatrixTest, ZeroSpecGivesZeroRadius) {
  const GraphSpec spec(4, Orientation::kUndirected, {});
  const auto s = hazard_radius(hazard_matrix(spec));
  EXPECT_EQ(s.rho_h, 0.0);
  EXPECT_EQ(s.rho_p, 0.0);
}

TEST(HazardMatrixTest, SirEdgeHazardIsLogTwo) {
  // beta == delta gives p = 1/2 on every edge.
  const GraphSpec spec(2, Orientation::kUndirected, {{0, 1, 0.5}});
  EXPECT_NEAR(hazard_matrix(spec).value(0, 1), std::log(2.0), 1e-15);
}

TEST(MaskedHazardMatrixTest, Masks) {
  const GraphSpec spec = star_spec(3, 0.5);
  const HazardMatrix none = masked_hazard_matrix(spec, {});
  EXPECT_EQ(none.matrix().to_dense(), hazard_matrix(spec).matrix().to_dense());
  const std::vector<NodeId> all = {0, 1, 2};
  for (double v : masked_hazard_matrix(spec, all).matrix().to_dense()) EXPECT_EQ(v, 0.0);
  const std::vector<NodeId> hub = {0};
  const HazardMatrix h = masked_hazard_matrix(spec, hub);
  EXPECT_NEAR(h.value(0, 1), std::log(2.0), 1e-15);
  EXPECT_NEAR(h.value(0, 2), std::log(2.0), 1e-15);
  EXPECT_EQ(h.value(1, 0), 0.0);
  EXPECT_EQ(h.value(2, 0), 0.0);
  const std::vector<NodeId> bad = {3};
  EXPECT_THROW(masked_hazard_matrix(spec, bad), IndexError);
}

TEST(MaskedHazardMatrixTest, MasksUniformBlocks) {
  const GraphSpec spec = erdos_spec(6, 2.0);
  const std::vector<NodeId> mask = {1, 4};
  const HazardMatrix h = masked_hazard_matrix(spec, mask);
  const std::vector<double> dense = h.matrix().to_dense();
  const double full = -std::log1p(-2.0 / 6.0);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      EXPECT_DOUBLE_EQ(dense[i * 6 + j], (j == 1 || j == 4) ? 0.0 : full);
    }
  }
  EXPECT_NEAR(hazard_radius(h).rho_h, dense_radius(dense, 6), 1e-9);
}

TEST(HazardRadiusTest, MatchesDenseEigensolver) {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t n = 2 + rep % 7;
    const GraphSpec spec = random_spec(rng, n, rep % 2 == 0);
    const HazardMatrix h = hazard_matrix(spec);
    EXPECT_NEAR(hazard_radius(h).rho_h, dense_radius(h.matrix().to_dense(), n), 1e-8)
        << "rep " << rep;
  }
}

TEST(HazardRadiusTest, BipartiteInstancesConverge) {
  EXPECT_NEAR(hazard_radius(hazard_matrix(star_spec(101, 0.1))).rho_h, -10.0 * std::log(0.9),
              1e-9);
  EXPECT_NEAR(hazard_radius(hazard_matrix(grid_spec(2, 4, 0.3))).rho_h, -4.0 * std::log(0.7),
              1e-9);
}

TEST(HazardRadiusTest, ErdosClosedForm) {
  for (std::size_t n : {2u, 10u, 100u, 1000u, 65536u}) {
    for (double c : {0.5, 1.0, 2.0}) {
      if (c >= static_cast<double>(n)) continue;
      const double expected = -static_cast<double>(n) * std::log1p(-c / static_cast<double>(n));
      EXPECT_NEAR(hazard_radius(hazard_matrix(erdos_spec(n, c))).rho_h, expected, 1e-10)
          << n << " " << c;
    }
  }
  EXPECT_NEAR(hazard_radius(hazard_matrix(erdos_spec(100, 0.5))).rho_h, 0.50125, 1e-5);
}

TEST(HazardRadiusTest, NorrosReittu) {
  EXPECT_NEAR(hazard_radius(hazard_matrix(norros_reittu_spec(WeightVector({1, 1, 2})))).rho_h,
              1.5, 1e-8);
  EXPECT_NEAR(
      hazard_radius(hazard_matrix(norros_reittu_spec(WeightVector({1, 1, 1, 1})))).rho_h, 1.0,
      1e-8);
}

TEST(HazardRadiusTest, RandomStarClosedForm) {
  const double a = -std::log(0.8), b = -std::log(0.9);
  const double expected = (8 * b + std::sqrt(64 * b * b + 36 * a * a)) / 2;
  EXPECT_NEAR(hazard_radius(hazard_matrix(random_star_spec(10, 0.2, 0.1))).rho_h, expected,
              1e-9);
}

TEST(HazardRadiusTest, GridNearCritical) {
  // 1 - exp(-1/(2d)) at d = 13; side 2 keeps the lattice small.
  const GraphSpec spec = grid_spec(13, 2, 0.038);
  EXPECT_NEAR(hazard_radius(hazard_matrix(spec)).rho_h, -26.0 * std::log1p(-0.038), 1e-8);
  EXPECT_NEAR(-std::expm1(-1.0 / 26.0), 0.038, 5e-4);
}

TEST(HazardRadiusTest, SandwichAroundRhoP) {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 40; ++rep) {
    const GraphSpec spec = random_spec(rng, 3 + rep % 6, rep % 3 != 0);
    const auto s = hazard_radius(hazard_matrix(spec));
    if (s.max_p == 0.0) continue;
    EXPECT_LE(s.rho_p, s.rho_h + 1e-10);
    EXPECT_LE(s.rho_h, -std::log1p(-s.max_p) / s.max_p * s.rho_p + 1e-10);
  }
}

TEST(HazardRadiusTest, SitePercolationTorus) {
  std::vector<double> probs(16, 0.4);
  const UndirectedGraph torus = support_graph(grid_spec(2, 4, 0.5));
  EXPECT_NEAR(hazard_radius(site_percolation_hazard(torus, probs)).rho_h,
              -4.0 * std::log(0.6), 1e-9);
}

TEST(HazardRadiusTest, ConvergenceFailureReportsEstimate) {
  std::mt19937_64 rng(3);
  const GraphSpec spec = random_spec(rng, 6, false);
  try {
    symmetric_spectral_radius(hazard_matrix(spec).matrix(), {.tol = 1e-300, .max_iter = 2});
    FAIL() << "two iterations at a 1e-300 tolerance should not converge";
  } catch (const ConvergenceError& e) {
    EXPECT_GT(e.best_estimate(), 0.0);
  }
}

TEST(GammaTest, ZeroRhoIsClosedForm) {
  EXPECT_NEAR(gamma(0.0, std::log(2.0)).value, 0.5, 1e-14);
  for (int k = 0; k < 100; ++k) {
    const double a = 0.01 + (5.0 - 0.01) * k / 99.0;
    EXPECT_NEAR(gamma(0.0, a).value, -std::expm1(-a), 1e-10);
  }
}

TEST(GammaTest, MatchesFixedPointOracle) {
  for (double rho : {0.1, 0.5, 0.9, 1.0, 1.3, 2.0, 4.0}) {
    for (double a : {1e-6, 1e-3, 0.02, 0.3, 2.0}) {
      const auto g = gamma(rho, a);
      EXPECT_NEAR(g.value, fixed_point(rho, a, 0.0), 1e-9) << rho << " " << a;
      EXPECT_LE(g.residual, 1e-12);
    }
  }
  // 1 - exp(-0.18689 - 0.02) = 0.18689; also below sqrt(2 * 0.02) = 0.2.
  EXPECT_NEAR(gamma(1.0, 0.02).value, 0.18689, 1e-5);
  EXPECT_LE(gamma(1.0, 0.02).value, 0.2);
  EXPECT_NEAR(gamma(2.0, 1e-9).value, gamma0(2.0).value, 1e-6);
}

TEST(GammaTest, DomainErrors) {
  EXPECT_THROW(gamma(-1.0, 0.1), DomainError);
  EXPECT_THROW(gamma(1.0, -0.1), DomainError);
  EXPECT_THROW(gamma(NAN, 0.1), DomainError);
  EXPECT_THROW(gamma1(1.0, 0.0), DomainError);
}

TEST(Gamma0Test, Values) {
  EXPECT_EQ(gamma0(0.7).value, 0.0);
  EXPECT_EQ(gamma0(1.0).value, 0.0);
  EXPECT_NEAR(gamma0(2.0).value, 0.79681, 1e-5);
  EXPECT_NEAR(gamma0(1.5).value, 0.5828, 1e-4);
  for (double rho : {1.01, 1.1, 1.5, 2.0, 3.0, 8.0}) {
    const auto g = gamma0(rho);
    EXPECT_NEAR(g.value, fixed_point(rho, 0.0, 1.0), 1e-9);
    EXPECT_LE(g.residual, 1e-12);
    EXPECT_LE(g.value, 2.0 * (rho - 1.0));
  }
}

TEST(Gamma1Test, MatchesScanOracle) {
  for (double rho : {0.2, 0.8, 1.0, 1.3, 2.0, 5.0}) {
    for (double a : {1e-6, 1e-3, 0.05, 0.5, 3.0}) {
      const auto g = gamma1(rho, a);
      EXPECT_NEAR(g.value, gamma1_oracle(rho, a), 1e-9) << rho << " " << a;
      EXPECT_LE(g.residual, 1e-12);
    }
  }
  EXPECT_NEAR(gamma1(2.0, 1e-6).value, 0.7968, 1e-3);
  EXPECT_EQ(gamma1(0.0, 0.3).value, 0.0);
  EXPECT_LE(gamma1(1.3, 0.05).residual, 1e-12);
}

TEST(GammaUpperEstimatesTest, Examples) {
  EXPECT_NEAR(gamma_upper_estimates(1.0, 0.02).sqrt_bound, 0.2, 1e-12);
  EXPECT_NEAR(gamma_upper_estimates(0.5, 0.1).linear_bound, 0.2, 1e-12);
  const auto tiny = gamma_upper_estimates(0.0, 1e-14);
  EXPECT_LT(tiny.sqrt_bound, 1e-6);
  EXPECT_LT(tiny.linear_bound, 1e-6);
  EXPECT_TRUE(std::isinf(gamma_upper_estimates(1.0, 0.1).linear_bound));
}

TEST(GammaUpperEstimatesTest, BoundsHoldOnGrid) {
  for (int i = 0; i < 40; ++i) {
    const double rho = 0.05 + 0.1 * i;
    for (int j = 0; j < 40; ++j) {
      const double a = 1e-4 * std::pow(10.0, 4.0 * j / 39.0);
      const double g = gamma(rho, a).value;
      const auto est = gamma_upper_estimates(rho, a);
      EXPECT_LE(g, est.sqrt_bound + 1e-9);
      if (rho != 1.0) {
        EXPECT_LE(g, est.linear_bound + 1e-9);
      }
    }
  }
}

TEST(BisectRootTest, FindsRoot) {
  const double r = bisect_root([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-14, 1e-15);
  EXPECT_NEAR(r, std::sqrt(2.0), 1e-14);
}

}  // namespace
}  // namespace hazard
