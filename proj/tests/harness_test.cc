#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "hazard/error.h"
#include "hazard/harness.h"

namespace hazard {
namespace {

using nlohmann::json;

std::string config_error_path(const json& j) {
  try {
    config_from_json(j);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "<none>";
}

json small_config() {
  return json::parse(R"({
    "model": {"name": "erdos", "n": 300, "c": 1.5},
    "scenario": "fixed:0,1",
    "trials": 400,
    "seed": 42,
    "estimands": ["influence", "c1", "n_at_least:5", "linkperco_lhs:0.3"]
  })");
}

TEST(ConfigTest, ErrorsNameTheField) {
  json j = small_config();
  j["bogus"] = 1;
  EXPECT_EQ(config_error_path(j), "/bogus");
  j = small_config();
  j["trials"] = 0;
  EXPECT_EQ(config_error_path(j), "/trials");
  j = small_config();
  j.erase("model");
  EXPECT_EQ(config_error_path(j), "/model");
  j = small_config();
  j["estimands"][1] = "c2";
  EXPECT_EQ(config_error_path(j), "/estimands/1");
  j = small_config();
  j["model"]["c"] = "big";
  EXPECT_EQ(config_error_path(j), "/model/c");
  j = small_config();
  j["scenario"] = "sometimes:3";
  EXPECT_EQ(config_error_path(j), "/scenario");
  j = small_config();
  j["process"] = "diffusion";
  EXPECT_EQ(config_error_path(j), "/process");
  EXPECT_EQ(config_error_path(json::array()), "");
}

TEST(ConfigTest, UnknownModelIsConfigError) {
  ModelConfig m;
  m.name = "hypercube";
  try {
    build_model(m);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.path(), "/model/name");
  }
  m.name = "erdos";
  m.params = {{"n", 10}};
  EXPECT_THROW(build_model(m), ConfigError);
}

TEST(ConfigTest, RoundTripAndHash) {
  const ExperimentConfig c = config_from_json(small_config());
  const ExperimentConfig back = config_from_json(config_to_json(c));
  EXPECT_EQ(config_to_json(back), config_to_json(c));
  EXPECT_EQ(config_hash(back), config_hash(c));
  EXPECT_EQ(config_hash(c).size(), 16u);
  ExperimentConfig threaded = c;
  threaded.threads = 7;
  EXPECT_EQ(config_hash(threaded), config_hash(c));
  ExperimentConfig reseeded = c;
  reseeded.seed = 43;
  EXPECT_NE(config_hash(reseeded), config_hash(c));
}

TEST(MonteCarloTest, ByteIdenticalRerun) {
  const ExperimentConfig c = config_from_json(small_config());
  std::ostringstream first, second;
  write_estimates_csv(c, run_monte_carlo(c), first);
  write_estimates_csv(c, run_monte_carlo(c), second);
  EXPECT_EQ(first.str(), second.str());
  EXPECT_NE(first.str().find("# seed=42"), std::string::npos);
  EXPECT_NE(first.str().find("# tool=hazard_cli 1.0.0"), std::string::npos);
  EXPECT_NE(first.str().find("# config_hash=" + config_hash(c)), std::string::npos);
}

TEST(MonteCarloTest, ThreadCountDoesNotChangeResults) {
  ExperimentConfig c = config_from_json(small_config());
  c.threads = 1;
  const ExperimentResult one = run_monte_carlo(c);
  c.threads = 5;
  const ExperimentResult five = run_monte_carlo(c);
  EXPECT_EQ(one.samples, five.samples);
  ASSERT_EQ(one.estimates.size(), five.estimates.size());
  for (std::size_t k = 0; k < one.estimates.size(); ++k) {
    EXPECT_EQ(one.estimates[k].mean, five.estimates[k].mean);
  }
}

TEST(MonteCarloTest, ZeroHazardGivesSeedCount) {
  ExperimentConfig c = config_from_json(small_config());
  c.model.params["c"] = 0.0;
  c.scenario = FixedInfluencers{{0, 1, 2}};
  c.estimands = {Estimand{}};
  const ExperimentResult r = run_monte_carlo(c);
  EXPECT_EQ(r.rho_h, 0.0);
  EXPECT_EQ(r.estimates.at(0).mean, 3.0);
  for (const auto& b : r.bounds) EXPECT_DOUBLE_EQ(b.value, 3.0) << b.name;
  for (const auto& check : validate_bounds(r)) EXPECT_TRUE(check.passed);
}

TEST(MonteCarloTest, StandardErrorScalesWithTrials) {
  ExperimentConfig c = config_from_json(small_config());
  c.estimands = {Estimand{EstimandKind::kLargest}};
  c.trials = 1000;
  const double se1 = run_monte_carlo(c).estimates.at(0).standard_error;
  c.trials = 4000;
  const double se4 = run_monte_carlo(c).estimates.at(0).standard_error;
  EXPECT_NEAR(se1 / se4, 2.0, 0.4);
}

TEST(MonteCarloTest, SmallBatteryValidates) {
  ExperimentConfig c = config_from_json(small_config());
  for (const auto& check : validate_bounds(c)) {
    EXPECT_TRUE(check.passed) << check.estimand << " " << check.bound << " " << check.margin;
  }
  c.process = ProcessKind::kSir;
  c.model = ModelConfig{"cycle", {{"n", 60}}, {}, {}};
  c.beta = 0.3;
  c.estimands = {Estimand{}};
  const ExperimentResult r = run_monte_carlo(c);
  bool has_draief = false;
  for (const auto& b : r.bounds) has_draief |= b.name == "draief";
  EXPECT_TRUE(has_draief);
  for (const auto& check : validate_bounds(r)) EXPECT_TRUE(check.passed) << check.bound;
}

TEST(DefaultTrialsTest, Policy) {
  EXPECT_EQ(default_trials(10), 10000u);
  EXPECT_EQ(default_trials(1000), 10000u);
  EXPECT_EQ(default_trials(10000), 200u);
  EXPECT_EQ(default_trials(100000), 200u);
}

TEST(ValidateBoundsTest, UsesThreeStandardErrors) {
  ExperimentResult r;
  r.estimates = {{"influence", 10.0, 1.0, 100, 1}};
  r.bounds = {{"influence", "theorem", 7.0, Regime::kSubcritical, {}},
              {"influence", "closed_form", 6.9, Regime::kSubcritical, {}}};
  const auto checks = validate_bounds(r);
  ASSERT_EQ(checks.size(), 2u);
  EXPECT_TRUE(checks[0].passed);
  EXPECT_DOUBLE_EQ(checks[0].margin, 0.0);
  EXPECT_FALSE(checks[1].passed);
}

TEST(SweepTest, RowsPerGridPoint) {
  SweepConfig s{config_from_json(small_config()), "c", {0.5, 1.0, 2.0}};
  s.base.estimands = {Estimand{EstimandKind::kLargest}};
  s.base.trials = 50;
  s.base.model.params["n"] = 10000;
  std::ostringstream out;
  run_sweep(s, out);
  std::istringstream in(out.str());
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') rows.push_back(line);
  }
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].rfind("value,n,rho_h,regime,estimand,mean", 0), 0u);
  EXPECT_NE(rows[1].find("subcritical"), std::string::npos);
  EXPECT_NE(rows[2].find(",critical"), std::string::npos);
  EXPECT_NE(rows[3].find("supercritical"), std::string::npos);
  s.values.clear();
  EXPECT_THROW(run_sweep(s, out), ConfigError);
}

TEST(LinkPercoTest, ZeroHazardIsExact) {
  const double a = 0.4;
  const LinkPercoCheck c = run_linkperco_check(erdos_spec(50, 0.0), a, 20, 1);
  EXPECT_NEAR(c.lhs.mean, 50 * -std::expm1(-a), 1e-12);
  EXPECT_NEAR(c.rhs, 50 * -std::expm1(-a), 1e-12);
  EXPECT_TRUE(c.passed);
}

TEST(LinkPercoTest, ErdosChecksPass) {
  EXPECT_TRUE(run_linkperco_check(erdos_spec(1000, 1.0), 0.05, 10000, 3).passed);
  EXPECT_TRUE(run_linkperco_check(erdos_spec(1000, 2.0), 0.5, 2000, 4).passed);
}

TEST(TightnessTest, Constructions) {
  const auto rows = run_tightness({0.5, {100, 400}, 200, 1, 0});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(rows[0].a, 0.5 / std::sqrt(99.0), 1e-15);
  EXPECT_EQ(rows[0].b, 0.0);
  EXPECT_FALSE(rows[0].reference.has_value());
  const auto super = run_tightness({2.0, {1000}, 20, 1, 0});
  EXPECT_NEAR(super[0].b, 0.002, 1e-15);
  ASSERT_TRUE(super[0].reference.has_value());
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(HAZARD_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(CliTest, ExitCodes) {
  EXPECT_EQ(run_cli("bound --model erdos --n 1000 --c 0.5 --m 10"), 0);
  EXPECT_EQ(run_cli("bound --rho 1.0 --nodes 1000"), 0);
  EXPECT_EQ(run_cli("simulate --model erdos --n 200 --c 1 --trials 50 --out -"), 0);
  EXPECT_EQ(run_cli("validate --model erdos --n 200 --c 0.5 --trials 200 --estimand c1"), 0);
  EXPECT_EQ(run_cli("no-such-command"), 2);
  EXPECT_EQ(run_cli("simulate --model erdos --n 200 --c 1 --bogus"), 2);
  EXPECT_EQ(run_cli("simulate --config /nonexistent/config.json"), 2);
  EXPECT_EQ(run_cli("simulate --model erdos --n 10 --c 20"), 2);
  EXPECT_EQ(run_cli("sweep --model erdos --n 100 --param c --values ''"), 2);
}

TEST(CliTest, ValidationFailureExitsOne) {
  // A single trial has zero standard error; with this seed the one
  // realisation reaches all 6 nodes, above the bound on the expectation.
  EXPECT_EQ(run_cli("validate --model complete --n 6 --p 0.3 --trials 1 --seed 1"), 1);
}

TEST(CliTest, ConfigFileRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto cfg = dir / "hazard_harness_test_config.json";
  const auto out1 = dir / "hazard_harness_test_a.csv";
  const auto out2 = dir / "hazard_harness_test_b.csv";
  std::ofstream(cfg) << small_config().dump();
  ASSERT_EQ(run_cli("simulate --config " + cfg.string() + " --threads 1 --out " + out1.string()), 0);
  ASSERT_EQ(run_cli("simulate --config " + cfg.string() + " --threads 3 --out " + out2.string()), 0);
  const auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  EXPECT_EQ(slurp(out1), slurp(out2));
  EXPECT_FALSE(slurp(out1).empty());
}

}  // namespace
}  // namespace hazard
