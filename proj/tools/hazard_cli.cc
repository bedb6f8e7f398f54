// Command-line front end: bounds, Monte Carlo experiments, sweeps and
// bound validation.
//
// Exit codes: 0 success, 1 a bound check failed, 2 usage or config error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <fmt/core.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "hazard/error.h"
#include "hazard/exact.h"
#include "hazard/harness.h"
#include "hazard/hazard_function.h"
#include "hazard/hazard_matrix.h"
#include "hazard/influence_bounds.h"
#include "hazard/percolation_bounds.h"
#include "hazard/report_json.h"
#include "hazard/simulators.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

// Model flags shared by most subcommands.
struct ModelFlags {
  std::string name;
  std::optional<double> n, c, p, a, b, d, side;
  std::vector<double> weights;
  std::string edge_list;

  void add(CLI::App* app) {
    app->add_option("--model", name,
                    "erdos|star|grid|random_star|norros_reittu|cycle|path|complete|edge_list");
    app->add_option("--n", n, "number of nodes");
    app->add_option("--c", c, "mean degree (erdos)");
    app->add_option("--p", p, "edge probability");
    app->add_option("--a", a, "hub probability (random_star)");
    app->add_option("--b", b, "background probability (random_star)");
    app->add_option("--d", d, "lattice dimension (grid)");
    app->add_option("--side", side, "nodes per axis (grid)");
    app->add_option("--weights", weights, "node weights (norros_reittu)")->delimiter(',');
    app->add_option("--edge-list", edge_list, "edge-list file");
  }

  bool given() const { return !name.empty() || !edge_list.empty(); }

  void apply(hazard::ModelConfig& m) const {
    if (!edge_list.empty()) {
      m.name = "edge_list";
      m.path = edge_list;
    }
    if (!name.empty()) m.name = name;
    const auto set = [&](const char* key, const std::optional<double>& v) {
      if (v) m.params[key] = *v;
    };
    set("n", n);
    set("c", c);
    set("p", p);
    set("a", a);
    set("b", b);
    set("d", d);
    set("side", side);
    if (!weights.empty()) m.weights = weights;
  }
};

// Flags that override fields of an experiment config.
struct RunFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<unsigned> threads;
  std::string scenario;
  std::vector<std::string> estimands;
  std::string process;
  std::optional<double> site_p, beta;
  std::string incubation;
  std::string out;
  std::string json_out;

  void add(CLI::App* app) {
    app->add_option("--config", config_path, "JSON experiment config");
    app->add_option("--seed", seed, "master seed");
    app->add_option("--trials", trials, "Monte Carlo trials");
    app->add_option("--threads", threads, "worker threads (0: all cores)");
    app->add_option("--scenario", scenario, "fixed:<ids>|uniform:<n0>|bernoulli:<q>");
    app->add_option("--estimand", estimands,
                    "influence|c1|n_at_least:<m>|linkperco_lhs:<a>|giant_lhs:<a>");
    app->add_option("--process", process, "bond|site|sir");
    app->add_option("--site-p", site_p, "node survival probability (site)");
    app->add_option("--beta", beta, "SIR transmission rate");
    app->add_option("--incubation", incubation, "exp:<rate>|lognormal:<mu>,<sigma>|fixed:<d>");
    app->add_option("--out", out, "CSV output path ('-' for stdout)");
    app->add_option("--json", json_out, "JSON output path");
  }

  hazard::ExperimentConfig build(const ModelFlags& model) const {
    json j = json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw hazard::ConfigError(config_path, "cannot open config file");
      try {
        j = json::parse(in);
      } catch (const json::parse_error& e) {
        throw hazard::ConfigError(config_path, e.what());
      }
    }
    if (!j.contains("model")) j["model"] = json::object();
    if (seed) j["seed"] = *seed;
    if (trials) j["trials"] = *trials;
    if (threads) j["threads"] = *threads;
    if (!scenario.empty()) j["scenario"] = scenario;
    if (!estimands.empty()) j["estimands"] = estimands;
    if (!process.empty()) j["process"] = process;
    if (site_p) j["site_p"] = *site_p;
    if (beta) j["beta"] = *beta;
    if (!incubation.empty()) j["incubation"] = incubation;
    const bool trials_given = j.contains("trials");
    hazard::ExperimentConfig c = hazard::config_from_json(j);
    model.apply(c.model);
    if (!trials_given) {
      const std::size_t n = c.process == hazard::ProcessKind::kBond
                                ? hazard::build_model(c.model).num_nodes()
                                : hazard::build_base_graph(c.model).n;
      c.trials = hazard::default_trials(n);
    }
    return c;
  }
};

// Writes to `path`, or stdout for "-" or an empty path when `fallback`.
template <typename Writer>
void emit(const std::string& path, bool fallback_stdout, Writer&& write) {
  if (path == "-" || (path.empty() && fallback_stdout)) {
    write(std::cout);
    return;
  }
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw hazard::ConfigError(path, "cannot open output file");
  write(out);
}

void emit_json(const std::string& path, const json& j, bool fallback_stdout) {
  emit(path, fallback_stdout, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw hazard::ConfigError("/values", "not a number: '" + item + "'");
    }
  }
  return out;
}

// "n <count> <directed|undirected>" followed by "i j lambda" lines.
hazard::RateSpec read_rates(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw hazard::ConfigError(path, "cannot open rate file");
  hazard::RateSpec rates;
  bool header = false;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (!header) {
      std::string tag, orientation;
      if (!(ls >> tag >> rates.n >> orientation) || tag != "n" ||
          (orientation != "directed" && orientation != "undirected")) {
        throw hazard::ParseError(line_no, "expected 'n <count> <directed|undirected>'");
      }
      rates.orientation = orientation == "directed" ? hazard::Orientation::kDirected
                                                    : hazard::Orientation::kUndirected;
      header = true;
      continue;
    }
    hazard::RateEntry e;
    if (!(ls >> e.from >> e.to >> e.lambda)) {
      throw hazard::ParseError(line_no, "expected 'i j lambda'");
    }
    rates.entries.push_back(e);
  }
  if (!header) throw hazard::ParseError(line_no, "missing header");
  return rates;
}

json bound_report(const ModelFlags& model, std::optional<double> rho, std::optional<std::size_t> n,
                  const std::string& scenario_text, std::optional<std::size_t> m) {
  json j = json::object();
  double rho_h = 0.0;
  std::size_t nodes = 0;
  if (model.given()) {
    hazard::ModelConfig mc;
    model.apply(mc);
    const hazard::GraphSpec spec = hazard::build_model(mc);
    const hazard::HazardSummary s = hazard::hazard_radius(hazard::hazard_matrix(spec));
    j["model"] = spec.label();
    j["hazard"] = hazard::to_json(s);
    rho_h = s.rho_h;
    nodes = spec.num_nodes();
  } else {
    if (!rho || !n) throw hazard::ConfigError("/rho", "give --model flags or both --rho and --n");
    rho_h = *rho;
    nodes = *n;
  }
  j["n"] = nodes;
  j["rho_h"] = rho_h;
  j["gamma0"] = hazard::gamma0(rho_h).value;
  if (!scenario_text.empty()) {
    const auto scheme = hazard::parse_scheme(scenario_text);
    j["scenario"] = hazard::to_string(scheme);
    j["influence"] = {{"theorem", hazard::to_json(hazard::theorem_bound(scheme, nodes, rho_h))},
                      {"closed_form",
                       hazard::to_json(hazard::closed_form_bound(scheme, nodes, rho_h))}};
  }
  j["giant_component"] = hazard::to_json(hazard::giant_component_bound(nodes, rho_h));
  if (m) {
    j["n_at_least"] = {
        {"m", *m},
        {"theorem", hazard::to_json(hazard::n_components_bound(nodes, *m, rho_h))},
        {"closed_form", hazard::to_json(hazard::n_components_closed_form(nodes, *m, rho_h))}};
  }
  return j;
}

int run_experiment(const hazard::ExperimentConfig& config, const RunFlags& flags,
                   bool check) {
  const hazard::ExperimentResult result = hazard::run_monte_carlo(config);
  const auto checks = hazard::validate_bounds(result);
  emit(flags.out, flags.json_out.empty(), [&](std::ostream& os) {
    if (check) {
      hazard::write_checks_csv(config, result, checks, os);
    } else {
      hazard::write_estimates_csv(config, result, os);
    }
  });
  emit_json(flags.json_out, hazard::experiment_report(config, result, checks), false);
  if (check) {
    for (const auto& c : checks) {
      if (!c.passed) return kExitValidation;
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hazard-radius influence and percolation bounds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(hazard::kToolVersion));

  // bound
  ModelFlags bound_model;
  std::optional<double> bound_rho;
  std::optional<std::size_t> bound_n_override, bound_m;
  std::string bound_scenario, bound_json;
  auto* bound = app.add_subcommand("bound", "Evaluate bounds for a model or a given rho_H");
  bound_model.add(bound);
  bound->add_option("--rho", bound_rho, "Hazard radius (instead of a model)");
  bound->add_option("--nodes", bound_n_override, "n when --rho is given");
  bound->add_option("--scenario", bound_scenario, "fixed:<ids>|uniform:<n0>|bernoulli:<q>");
  bound->add_option("--m", bound_m, "component size threshold for N(m)");
  bound->add_option("--json", bound_json, "JSON output path (default stdout)");

  // simulate / percolate / validate share the experiment flags.
  ModelFlags sim_model, perco_model, validate_model, sir_model, sweep_model;
  RunFlags sim_flags, perco_flags, validate_flags, sir_flags, sweep_flags;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimates of the estimands");
  sim_model.add(simulate);
  sim_flags.add(simulate);
  auto* percolate = app.add_subcommand("percolate", "Bond or site percolation experiment");
  perco_model.add(percolate);
  perco_flags.add(percolate);
  auto* validate = app.add_subcommand("validate", "Check empirical means against every bound");
  validate_model.add(validate);
  validate_flags.add(validate);

  // sir
  std::string sir_ratios;
  double sir_delta = 1.0;
  auto* sir = app.add_subcommand("sir", "SIR thresholds, radius and final-size experiment");
  sir_model.add(sir);
  sir_flags.add(sir);
  sir->add_option("--threshold-sweep", sir_ratios,
                  "comma-separated beta/delta ratios; prints threshold conditions");
  sir->add_option("--delta", sir_delta, "recovery rate for --threshold-sweep");

  // cascade
  std::string cascade_rates, cascade_mode = "ctic", cascade_seeds = "fixed:0", cascade_json;
  std::size_t cascade_trials = 10000;
  std::uint64_t cascade_seed = 1;
  auto* cascade = app.add_subcommand("cascade", "Independent cascade at infinite horizon");
  cascade->add_option("--rates", cascade_rates, "rate file: 'n <count> <orientation>' + 'i j v'")
      ->required();
  cascade->add_option("--mode", cascade_mode, "ctic (v = Lambda) or dtic (v = p)");
  cascade->add_option("--scenario", cascade_seeds, "fixed:<ids>");
  cascade->add_option("--trials", cascade_trials, "Monte Carlo trials");
  cascade->add_option("--seed", cascade_seed, "master seed");
  cascade->add_option("--json", cascade_json, "JSON output path (default stdout)");

  // sweep
  std::string sweep_param = "c", sweep_values;
  auto* sweep = app.add_subcommand("sweep", "Regime sweep over one parameter");
  sweep_model.add(sweep);
  sweep_flags.add(sweep);
  sweep->add_option("--param", sweep_param, "model parameter, 'beta' or 'site_p'");
  sweep->add_option("--values", sweep_values, "comma-separated grid")->required();

  // tightness
  hazard::TightnessConfig tight;
  std::string tight_out;
  auto* tightness = app.add_subcommand("tightness", "Random star-network constructions");
  tightness->add_option("--rho", tight.rho, "target Hazard radius")->required();
  tightness->add_option("--n", tight.ns, "node counts")->delimiter(',')->required();
  tightness->add_option("--trials", tight.trials, "Monte Carlo trials per n");
  tightness->add_option("--seed", tight.seed, "master seed");
  tightness->add_option("--threads", tight.threads, "worker threads (0: all cores)");
  tightness->add_option("--out", tight_out, "CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*bound) {
      emit_json(bound_json, bound_report(bound_model, bound_rho, bound_n_override,
                                         bound_scenario, bound_m),
                true);
      return kExitOk;
    }
    if (*simulate) return run_experiment(sim_flags.build(sim_model), sim_flags, false);
    if (*validate) return run_experiment(validate_flags.build(validate_model), validate_flags, true);
    if (*percolate) {
      auto config = perco_flags.build(perco_model);
      if (perco_flags.estimands.empty() && perco_flags.config_path.empty()) {
        config.estimands = {hazard::parse_estimand("c1")};
      }
      return run_experiment(config, perco_flags, true);
    }
    if (*sir) {
      if (!sir_ratios.empty()) {
        hazard::ModelConfig mc;
        sir_model.apply(mc);
        emit(sir_flags.out, true, [&](std::ostream& os) {
          hazard::run_sir_threshold_sweep(hazard::build_base_graph(mc), sir_delta,
                                          parse_list(sir_ratios), os);
        });
        return kExitOk;
      }
      auto config = sir_flags.build(sir_model);
      config.process = hazard::ProcessKind::kSir;
      const auto graph = hazard::build_base_graph(config.model);
      const double rho_a = hazard::adjacency_spectral_radius(graph);
      const auto report = hazard::sir_threshold_report({config.beta, config.incubation, rho_a});
      json j = hazard::to_json(report);
      j["rho_a"] = rho_a;
      if (sir_flags.trials) {
        const auto result = hazard::run_monte_carlo(config);
        j["experiment"] = hazard::experiment_report(config, result, hazard::validate_bounds(result));
        emit(sir_flags.out, false,
             [&](std::ostream& os) { hazard::write_estimates_csv(config, result, os); });
      }
      emit_json(sir_flags.json_out, j, true);
      return kExitOk;
    }
    if (*cascade) {
      const hazard::RateSpec rates = read_rates(cascade_rates);
      const auto scheme = hazard::parse_scheme(cascade_seeds);
      const auto* fixed = std::get_if<hazard::FixedInfluencers>(&scheme);
      if (!fixed) throw hazard::ConfigError("/scenario", "cascade takes a fixed seed set");
      hazard::validate(scheme, rates.n);
      std::optional<hazard::GraphSpec> spec;
      std::optional<hazard::HazardMatrix> h;
      if (cascade_mode == "ctic") {
        spec = hazard::ctic_edge_spec(rates);
        h = hazard::ctic_hazard(rates);
      } else if (cascade_mode == "dtic") {
        std::vector<hazard::EdgeProbability> entries;
        for (const auto& e : rates.entries) entries.push_back({e.from, e.to, e.lambda});
        spec.emplace(rates.n, rates.orientation, std::move(entries), "dtic");
        h = hazard::hazard_matrix(*spec);
      } else {
        throw hazard::ConfigError("/mode", "expected ctic or dtic");
      }
      const auto summary = hazard::hazard_radius(*h);
      json j = {{"mode", cascade_mode},
                {"n", rates.n},
                {"hazard", hazard::to_json(summary)}};
      if (!fixed->nodes.empty()) {
        j["theorem_bound"] = hazard::to_json(hazard::theorem_bound(scheme, rates.n, summary.rho_h));
      }
      std::vector<double> sizes(cascade_trials);
      for (std::size_t t = 0; t < cascade_trials; ++t) {
        sizes[t] = static_cast<double>(
            hazard::sample_dtic(*spec, fixed->nodes, {cascade_seed, t}).size());
      }
      const auto s = hazard::summarize(sizes);
      j["influence"] = {{"mean", s.mean}, {"stderr", s.standard_error}, {"trials", s.count}};
      try {
        j["exact_influence"] = hazard::exact_influence(*spec, fixed->nodes);
      } catch (const hazard::CapacityError&) {
        // Too large to enumerate; the Monte Carlo estimate stands alone.
      }
      emit_json(cascade_json, j, true);
      return kExitOk;
    }
    if (*sweep) {
      hazard::SweepConfig sc{sweep_flags.build(sweep_model), sweep_param, parse_list(sweep_values)};
      emit(sweep_flags.out, true, [&](std::ostream& os) { hazard::run_sweep(sc, os); });
      return kExitOk;
    }
    if (*tightness) {
      const auto rows = hazard::run_tightness(tight);
      emit(tight_out, true,
           [&](std::ostream& os) { hazard::write_tightness_csv(tight, rows, os); });
      return kExitOk;
    }
  } catch (const hazard::Error& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const CLI::Error& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
