#ifndef HAZARD_HARNESS_H_
#define HAZARD_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hazard/graph_spec.h"
#include "hazard/hazard_matrix.h"
#include "hazard/incubation.h"
#include "hazard/influence_bounds.h"
#include "hazard/influencer_scheme.h"
#include "hazard/stats.h"
#include "hazard/undirected_graph.h"

namespace hazard {

inline constexpr std::string_view kToolVersion = "1.0.0";

// Named generator plus its numeric parameters, or an edge-list file.
//   erdos: n, c                 star: n, p
//   norros_reittu: weights      grid: d, side, p
//   random_star: n, a, b        cycle | path | complete: n (p optional)
//   edge_list: path
struct ModelConfig {
  std::string name = "erdos";
  std::map<std::string, double> params;
  std::vector<double> weights;
  std::string path;
};

enum class ProcessKind { kBond, kSite, kSir };

enum class EstimandKind {
  kInfluence,     // |R(I, A)|
  kLargest,       // C1
  kNAtLeast,      // N(m)
  kLinkPercoLhs,  // sum_k C_k (1 - exp(-a C_k))
  kGiantLhs,      // C1 (1 - exp(-a (C1 - 1)))
};

struct Estimand {
  EstimandKind kind = EstimandKind::kInfluence;
  double param = 0.0;  // m or a
};

// "influence", "c1", "n_at_least:<m>", "linkperco_lhs:<a>", "giant_lhs:<a>".
Estimand parse_estimand(const std::string& text);
std::string to_string(const Estimand& e);

struct ExperimentConfig {
  ModelConfig model;
  ProcessKind process = ProcessKind::kBond;
  double site_p = 0.5;  // node survival probability for site percolation
  double beta = 1.0;    // SIR transmission rate
  IncubationDist incubation = ExponentialIncubation{1.0};
  InfluencerScheme scenario = FixedInfluencers{{0}};
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0: hardware concurrency
  std::vector<Estimand> estimands{Estimand{}};
  bool theorem_bounds = true;
  bool closed_form_bounds = true;
};

// Throws ConfigError naming the offending field path (e.g. "/trials").
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
// Canonical form; config_from_json(config_to_json(c)) reproduces c.
nlohmann::json config_to_json(const ExperimentConfig& c);
// FNV-1a of the canonical JSON text, as 16 hex digits.
std::string config_hash(const ExperimentConfig& c);

GraphSpec build_model(const ModelConfig& model);
// Substrate graph for SIR and site percolation: named deterministic graphs
// directly, otherwise the support of the undirected model.
UndirectedGraph build_base_graph(const ModelConfig& model);

// Trial count used when neither the config nor the command line sets one:
// 10^4 for n <= 10^3, 200 above.
std::size_t default_trials(std::size_t n);

struct SimEstimate {
  std::string estimand;
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t trials = 0;
  std::uint64_t master_seed = 0;
};

struct NamedBound {
  std::string estimand;
  std::string name;  // "theorem", "closed_form", "draief", "implicit"
  double value = 0.0;
  Regime regime = Regime::kSubcritical;
  std::map<std::string, double> constants;
};

struct ExperimentResult {
  std::string label;
  std::size_t n = 0;
  double rho_h = 0.0;
  std::vector<SimEstimate> estimates;
  std::vector<NamedBound> bounds;
  std::map<std::string, std::vector<double>> samples;  // per estimand, trial order
};

// Runs the trials on a worker pool. Trial t draws its graph from
// TrialSeed{seed, t}, so results do not depend on the thread count.
ExperimentResult run_monte_carlo(const ExperimentConfig& config);

struct BoundCheck {
  std::string estimand;
  std::string bound;
  double mean = 0.0;
  double standard_error = 0.0;
  double bound_value = 0.0;
  double margin = 0.0;  // bound + 3 se - mean
  bool passed = false;
};

// mean <= bound + 3 se for every (estimand, bound) pair.
std::vector<BoundCheck> validate_bounds(const ExperimentResult& result);
std::vector<BoundCheck> validate_bounds(const ExperimentConfig& config);

// Grid over one model parameter ("c", "p", ...) or the SIR rate "beta".
struct SweepConfig {
  ExperimentConfig base;
  std::string parameter = "c";
  std::vector<double> values;
};

// One CSV row per (grid point, estimand).
void run_sweep(const SweepConfig& sweep, std::ostream& csv);

// Random star-network constructions reaching the order of the bounds:
// a = rho/sqrt(n-1), b = 0 for rho < 1; a = 1/sqrt(n ln n), b = rho/n
// otherwise. Estimates sigma({0}) for each n.
struct TightnessConfig {
  double rho = 0.5;
  std::vector<std::size_t> ns;
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

struct TightnessRow {
  std::size_t n = 0;
  double a = 0.0;
  double b = 0.0;
  double rho_h = 0.0;
  SimEstimate influence;
  double scaled = 0.0;  // sigma/sqrt(n), sigma/n^(2/3) or sigma/n
  std::optional<double> reference;  // gamma0(rho) when rho > 1
};

std::vector<TightnessRow> run_tightness(const TightnessConfig& config);
void write_tightness_csv(const TightnessConfig& config, const std::vector<TightnessRow>& rows,
                         std::ostream& csv);

struct LinkPercoCheck {
  SampleSummary lhs;
  double rhs = 0.0;  // gamma(rho_h, a) n
  bool passed = false;
};

LinkPercoCheck run_linkperco_check(const GraphSpec& spec, double a, std::size_t trials,
                                   std::uint64_t seed, unsigned threads = 0);

// Sufficient SIR subcriticality conditions on a fixed graph for a grid of
// beta/delta ratios (exponential incubation with rate delta).
void run_sir_threshold_sweep(const UndirectedGraph& graph, double delta,
                             const std::vector<double>& ratios, std::ostream& csv);

void write_checks_csv(const ExperimentConfig& config, const ExperimentResult& result,
                      const std::vector<BoundCheck>& checks, std::ostream& csv);
void write_estimates_csv(const ExperimentConfig& config, const ExperimentResult& result,
                         std::ostream& csv);

}  // namespace hazard

#endif  // HAZARD_HARNESS_H_
