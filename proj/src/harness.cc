#include "hazard/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>
#include <variant>

#include <fmt/core.h>
#include <fmt/ostream.h>

#include "hazard/edge_list.h"
#include "hazard/error.h"
#include "hazard/hazard_function.h"
#include "hazard/percolation_bounds.h"
#include "hazard/rng.h"
#include "hazard/simulators.h"

namespace hazard {
namespace {

using nlohmann::json;

// Separates the influencer-draw stream from the graph stream of a trial.
constexpr std::uint64_t kInfluencerStream = 0x5ca1ab1e0ddba11ULL;

std::string fmt_num(double x) { return fmt::format("{:.12g}", x); }

double param(const ModelConfig& m, const std::string& key) {
  const auto it = m.params.find(key);
  if (it == m.params.end()) throw ConfigError("/model/" + key, "missing parameter");
  return it->second;
}

double param_or(const ModelConfig& m, const std::string& key, double fallback) {
  const auto it = m.params.find(key);
  return it == m.params.end() ? fallback : it->second;
}

std::size_t count_param(const ModelConfig& m, const std::string& key) {
  const double v = param(m, key);
  if (!(v >= 0.0) || v != std::floor(v) || v > static_cast<double>(kMaxNodes)) {
    throw ConfigError("/model/" + key, fmt::format("expected a non-negative integer, got {}", v));
  }
  return static_cast<std::size_t>(v);
}

GraphSpec spec_from_graph(const UndirectedGraph& g, double p, std::string label) {
  std::vector<EdgeProbability> entries;
  entries.reserve(g.edges.size());
  for (const auto& [u, v] : g.edges) entries.push_back({u, v, p});
  return GraphSpec(g.n, Orientation::kUndirected, std::move(entries), std::move(label));
}

std::optional<UndirectedGraph> named_graph(const ModelConfig& m) {
  if (m.name == "cycle") return cycle_graph(count_param(m, "n"));
  if (m.name == "path") return path_graph(count_param(m, "n"));
  if (m.name == "complete") return complete_graph(count_param(m, "n"));
  return std::nullopt;
}

bool needs_components(const Estimand& e) { return e.kind != EstimandKind::kInfluence; }

Regime plain_regime(double rho_h) {
  if (rho_h < 1.0) return Regime::kSubcritical;
  if (rho_h > 1.0) return Regime::kSupercritical;
  return Regime::kCritical;
}

template <typename T>
T get_field(const json& j, const char* key, const std::string& path, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(path + "/" + key, e.what());
  }
}

// Everything a run needs once the model has been materialised.
struct Prepared {
  ExperimentConfig config;
  std::optional<GraphSpec> spec;        // bond
  std::optional<UndirectedGraph> base;  // site, SIR
  std::vector<double> node_probs;       // site
  std::size_t n = 0;
  double rho_h = 0.0;
  double rho_a = 0.0;
  std::string label;
};

void check_process_estimands(const ExperimentConfig& c, bool undirected) {
  for (std::size_t k = 0; k < c.estimands.size(); ++k) {
    const auto& e = c.estimands[k];
    const std::string path = fmt::format("/estimands/{}", k);
    if (needs_components(e) && (c.process == ProcessKind::kSir ||
                                (c.process == ProcessKind::kBond && !undirected))) {
      throw ConfigError(path, "component estimands need an undirected bond or site process");
    }
    if (e.kind == EstimandKind::kInfluence && c.process == ProcessKind::kSite) {
      throw ConfigError(path, "influence is not defined for site percolation");
    }
  }
}

Prepared prepare(const ExperimentConfig& c, std::optional<GraphSpec> spec = std::nullopt) {
  if (c.trials < 1) throw ConfigError("/trials", "must be >= 1");
  Prepared p;
  p.config = c;
  switch (c.process) {
    case ProcessKind::kBond: {
      p.spec = spec ? std::move(spec) : std::optional<GraphSpec>(build_model(c.model));
      p.n = p.spec->num_nodes();
      p.label = p.spec->label();
      p.rho_h = hazard_radius(hazard_matrix(*p.spec)).rho_h;
      check_process_estimands(c, p.spec->undirected());
      break;
    }
    case ProcessKind::kSite: {
      check_probability(c.site_p, "site_p");
      p.base = build_base_graph(c.model);
      p.n = p.base->n;
      p.node_probs.assign(p.n, c.site_p);
      p.rho_h = hazard_radius(site_percolation_hazard(*p.base, p.node_probs)).rho_h;
      p.label = fmt::format("site({}, p={})", c.model.name, c.site_p);
      check_process_estimands(c, true);
      break;
    }
    case ProcessKind::kSir: {
      validate(c.incubation);
      p.base = build_base_graph(c.model);
      p.n = p.base->n;
      p.rho_a = adjacency_spectral_radius(*p.base);
      p.rho_h = sir_hazard_radius(p.rho_a, c.beta, c.incubation);
      p.label = fmt::format("sir({}, beta={}, {})", c.model.name, c.beta, to_string(c.incubation));
      check_process_estimands(c, true);
      break;
    }
  }
  try {
    validate(c.scenario, p.n);
  } catch (const Error& e) {
    throw ConfigError("/scenario", e.what());
  }
  return p;
}

void add_bounds(const Prepared& p, ExperimentResult& out) {
  const auto& c = p.config;
  const std::size_t n = p.n;
  for (const auto& e : c.estimands) {
    const std::string name = to_string(e);
    switch (e.kind) {
      case EstimandKind::kInfluence: {
        const auto* fixed = std::get_if<FixedInfluencers>(&c.scenario);
        if (fixed && fixed->nodes.empty()) break;
        if (c.theorem_bounds) {
          const auto r = theorem_bound(c.scenario, n, p.rho_h);
          out.bounds.push_back({name, "theorem", r.bound, r.regime, r.constants});
        }
        if (c.closed_form_bounds) {
          const auto r = closed_form_bound(c.scenario, n, p.rho_h);
          out.bounds.push_back({name, "closed_form", r.bound, r.regime, r.constants});
        }
        const auto* expo = std::get_if<ExponentialIncubation>(&c.incubation);
        if (c.process == ProcessKind::kSir && fixed && expo && c.beta * p.rho_a < expo->rate) {
          const double d = draief_bound(n, fixed->nodes.size(), c.beta, expo->rate, p.rho_a);
          out.bounds.push_back({name, "draief", std::min(d, static_cast<double>(n)),
                                Regime::kSubcritical, {{"rho_a", p.rho_a}}});
        }
        break;
      }
      case EstimandKind::kLargest:
        if (c.closed_form_bounds) {
          const auto r = giant_component_bound(n, p.rho_h);
          out.bounds.push_back({name, "closed_form", r.bound, r.regime, r.constants});
        }
        break;
      case EstimandKind::kNAtLeast: {
        const auto m = static_cast<std::size_t>(e.param);
        if (c.theorem_bounds) {
          const auto r = n_components_bound(n, m, p.rho_h);
          auto constants = r.constants;
          constants["a"] = r.a_used;
          out.bounds.push_back({name, "theorem", r.bound, r.regime, constants});
        }
        if (c.closed_form_bounds) {
          const auto r = n_components_closed_form(n, m, p.rho_h);
          out.bounds.push_back({name, "closed_form", r.bound, r.regime, r.constants});
        }
        break;
      }
      case EstimandKind::kLinkPercoLhs:
        if (c.theorem_bounds) {
          const double g = gamma(p.rho_h, e.param).value;
          out.bounds.push_back({name, "theorem", g * static_cast<double>(n),
                                plain_regime(p.rho_h), {{"gamma", g}}});
        }
        break;
      case EstimandKind::kGiantLhs:
        if (c.theorem_bounds) {
          out.bounds.push_back({name, "theorem", implicit_giant_inequality_rhs(n, p.rho_h, e.param),
                                plain_regime(p.rho_h), {}});
        }
        break;
    }
  }
}

// Values of every estimand for one trial, in config order.
void run_trial(const Prepared& p, std::size_t t, std::span<double> values) {
  const auto& c = p.config;
  const TrialSeed seed{c.seed, t};
  bool want_influence = false;
  bool want_components = false;
  for (const auto& e : c.estimands) {
    (needs_components(e) ? want_components : want_influence) = true;
  }
  std::size_t influence = 0;
  ComponentStats stats;
  if (c.process == ProcessKind::kSite) {
    stats = sample_site_percolation(*p.base, p.node_probs, seed);
  } else {
    const SampledGraph g = c.process == ProcessKind::kBond
                               ? sample_graph(*p.spec, seed)
                               : sample_sir_graph(*p.base, c.beta, c.incubation, seed);
    if (want_influence) {
      TrialRng rng(TrialSeed{mix64(c.seed ^ kInfluencerStream), t});
      influence = reachable_set(g, draw_influencers(c.scenario, p.n, rng)).size();
    }
    if (want_components) stats = components(g);
  }
  for (std::size_t k = 0; k < c.estimands.size(); ++k) {
    const auto& e = c.estimands[k];
    double v = 0.0;
    switch (e.kind) {
      case EstimandKind::kInfluence:
        v = static_cast<double>(influence);
        break;
      case EstimandKind::kLargest:
        v = static_cast<double>(stats.largest());
        break;
      case EstimandKind::kNAtLeast:
        v = static_cast<double>(stats.n_at_least(static_cast<std::size_t>(e.param)));
        break;
      case EstimandKind::kLinkPercoLhs:
        for (std::size_t s : stats.sizes) {
          const double cs = static_cast<double>(s);
          v += -cs * std::expm1(-e.param * cs);
        }
        break;
      case EstimandKind::kGiantLhs: {
        const double c1 = static_cast<double>(stats.largest());
        v = c1 > 0.0 ? -c1 * std::expm1(-e.param * (c1 - 1.0)) : 0.0;
        break;
      }
    }
    values[k] = v;
  }
}

ExperimentResult run_prepared(const Prepared& p) {
  const auto& c = p.config;
  const std::size_t k_count = c.estimands.size();
  std::vector<double> table(c.trials * k_count);

  unsigned workers = c.threads ? c.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, c.trials));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto work = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < c.trials;) {
      try {
        run_trial(p, t, std::span<double>(table).subspan(t * k_count, k_count));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = c.trials;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  ExperimentResult out;
  out.label = p.label;
  out.n = p.n;
  out.rho_h = p.rho_h;
  for (std::size_t k = 0; k < k_count; ++k) {
    std::vector<double> column(c.trials);
    for (std::size_t t = 0; t < c.trials; ++t) column[t] = table[t * k_count + k];
    const SampleSummary s = summarize(column);
    const std::string name = to_string(c.estimands[k]);
    out.estimates.push_back({name, s.mean, s.standard_error, s.count, c.seed});
    out.samples[name] = std::move(column);
  }
  add_bounds(p, out);
  return out;
}

void write_metadata(std::ostream& os, std::uint64_t seed, const std::string& hash) {
  fmt::print(os, "# tool=hazard_cli {}\n# seed={}\n# config_hash={}\n", kToolVersion, seed, hash);
}

const NamedBound* find_bound(const ExperimentResult& r, const std::string& estimand,
                             const std::string& name) {
  for (const auto& b : r.bounds) {
    if (b.estimand == estimand && b.name == name) return &b;
  }
  return nullptr;
}

std::string opt_num(const NamedBound* b) { return b ? fmt_num(b->value) : ""; }

}  // namespace

Estimand parse_estimand(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  if (colon == std::string::npos) {
    if (head == "influence") return {EstimandKind::kInfluence, 0.0};
    if (head == "c1") return {EstimandKind::kLargest, 0.0};
    throw DomainError("unknown estimand '" + text + "'");
  }
  double value = 0.0;
  try {
    std::size_t used = 0;
    value = std::stod(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1) throw std::invalid_argument("trailing text");
  } catch (const std::exception&) {
    throw DomainError("bad estimand parameter in '" + text + "'");
  }
  if (head == "n_at_least") {
    if (!(value >= 1.0) || value != std::floor(value)) {
      throw DomainError("n_at_least needs an integer m >= 1");
    }
    return {EstimandKind::kNAtLeast, value};
  }
  if (head == "linkperco_lhs" || head == "giant_lhs") {
    if (!(value > 0.0) || !std::isfinite(value)) throw DomainError(head + " needs a > 0");
    return {head == "giant_lhs" ? EstimandKind::kGiantLhs : EstimandKind::kLinkPercoLhs, value};
  }
  throw DomainError("unknown estimand '" + text + "'");
}

std::string to_string(const Estimand& e) {
  switch (e.kind) {
    case EstimandKind::kInfluence:
      return "influence";
    case EstimandKind::kLargest:
      return "c1";
    case EstimandKind::kNAtLeast:
      return fmt::format("n_at_least:{}", e.param);
    case EstimandKind::kLinkPercoLhs:
      return fmt::format("linkperco_lhs:{}", e.param);
    case EstimandKind::kGiantLhs:
      return fmt::format("giant_lhs:{}", e.param);
  }
  return "unknown";
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("", "config must be a JSON object");
  static const std::vector<std::string> known = {
      "model", "process", "site_p", "beta", "incubation", "scenario", "trials",
      "seed", "threads", "estimands", "bounds"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("/" + key, "unknown field");
    }
  }
  ExperimentConfig c;
  if (!j.contains("model") || !j["model"].is_object()) {
    throw ConfigError("/model", "required object");
  }
  for (const auto& [key, value] : j["model"].items()) {
    const std::string path = "/model/" + key;
    if (key == "name") {
      if (!value.is_string()) throw ConfigError(path, "expected a string");
      c.model.name = value.get<std::string>();
    } else if (key == "path") {
      if (!value.is_string()) throw ConfigError(path, "expected a string");
      c.model.path = value.get<std::string>();
    } else if (key == "weights") {
      if (!value.is_array()) throw ConfigError(path, "expected an array of numbers");
      for (const auto& w : value) {
        if (!w.is_number()) throw ConfigError(path, "expected an array of numbers");
        c.model.weights.push_back(w.get<double>());
      }
    } else {
      if (!value.is_number()) throw ConfigError(path, "expected a number");
      c.model.params[key] = value.get<double>();
    }
  }
  const std::string process = get_field<std::string>(j, "process", "", "bond");
  if (process == "bond") {
    c.process = ProcessKind::kBond;
  } else if (process == "site") {
    c.process = ProcessKind::kSite;
  } else if (process == "sir") {
    c.process = ProcessKind::kSir;
  } else {
    throw ConfigError("/process", "expected bond, site or sir");
  }
  c.site_p = get_field<double>(j, "site_p", "", c.site_p);
  c.beta = get_field<double>(j, "beta", "", c.beta);
  if (!(c.beta >= 0.0) || !std::isfinite(c.beta)) throw ConfigError("/beta", "must be >= 0");
  try {
    c.incubation = parse_incubation(get_field<std::string>(j, "incubation", "", "exp:1"));
    validate(c.incubation);
  } catch (const Error& e) {
    throw ConfigError("/incubation", e.what());
  }
  try {
    c.scenario = parse_scheme(get_field<std::string>(j, "scenario", "", "fixed:0"));
  } catch (const Error& e) {
    throw ConfigError("/scenario", e.what());
  }
  if (j.contains("trials")) {
    const auto& t = j["trials"];
    if (!t.is_number_integer() || t.get<long long>() < 1) {
      throw ConfigError("/trials", "must be an integer >= 1");
    }
    c.trials = t.get<std::size_t>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ConfigError("/seed", "must be a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  c.threads = get_field<unsigned>(j, "threads", "", 0);
  if (j.contains("estimands")) {
    const auto& list = j["estimands"];
    if (!list.is_array() || list.empty()) throw ConfigError("/estimands", "expected a non-empty array");
    c.estimands.clear();
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string path = fmt::format("/estimands/{}", k);
      if (!list[k].is_string()) throw ConfigError(path, "expected a string");
      try {
        c.estimands.push_back(parse_estimand(list[k].get<std::string>()));
      } catch (const Error& e) {
        throw ConfigError(path, e.what());
      }
    }
  }
  if (j.contains("bounds")) {
    const auto& b = j["bounds"];
    if (!b.is_object()) throw ConfigError("/bounds", "expected an object");
    c.theorem_bounds = get_field<bool>(b, "theorem", "/bounds", true);
    c.closed_form_bounds = get_field<bool>(b, "closed_form", "/bounds", true);
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path, e.what());
  }
  return config_from_json(j);
}

json config_to_json(const ExperimentConfig& c) {
  json model = json::object();
  model["name"] = c.model.name;
  for (const auto& [k, v] : c.model.params) model[k] = v;
  if (!c.model.weights.empty()) model["weights"] = c.model.weights;
  if (!c.model.path.empty()) model["path"] = c.model.path;
  json estimands = json::array();
  for (const auto& e : c.estimands) estimands.push_back(to_string(e));
  static constexpr const char* kProcess[] = {"bond", "site", "sir"};
  return json{
      {"model", model},
      {"process", kProcess[static_cast<int>(c.process)]},
      {"site_p", c.site_p},
      {"beta", c.beta},
      {"incubation", to_string(c.incubation)},
      {"scenario", to_string(c.scenario)},
      {"trials", c.trials},
      {"seed", c.seed},
      {"threads", c.threads},
      {"estimands", estimands},
      {"bounds", {{"theorem", c.theorem_bounds}, {"closed_form", c.closed_form_bounds}}},
  };
}

std::string config_hash(const ExperimentConfig& c) {
  json canonical = config_to_json(c);
  canonical.erase("threads");  // scheduling does not change results
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

std::size_t default_trials(std::size_t n) { return n <= 1000 ? 10000 : 200; }

GraphSpec build_model(const ModelConfig& m) {
  try {
    if (m.name == "erdos") return erdos_spec(count_param(m, "n"), param(m, "c"));
    if (m.name == "star") return star_spec(count_param(m, "n"), param(m, "p"));
    if (m.name == "grid") {
      return grid_spec(count_param(m, "d"), count_param(m, "side"), param(m, "p"));
    }
    if (m.name == "random_star") {
      return random_star_spec(count_param(m, "n"), param(m, "a"), param(m, "b"));
    }
    if (m.name == "norros_reittu") {
      if (m.weights.empty()) throw ConfigError("/model/weights", "missing weights");
      return norros_reittu_spec(WeightVector(m.weights));
    }
    if (m.name == "edge_list") {
      if (m.path.empty()) throw ConfigError("/model/path", "missing path");
      return read_edge_list(std::filesystem::path(m.path));
    }
    if (auto g = named_graph(m)) {
      const double p = param_or(m, "p", 0.5);
      return spec_from_graph(*g, p, fmt::format("{}(n={}, p={})", m.name, g->n, p));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("/model", e.what());
  }
  throw ConfigError("/model/name", "unknown model '" + m.name + "'");
}

UndirectedGraph build_base_graph(const ModelConfig& m) {
  std::optional<UndirectedGraph> g;
  try {
    g = named_graph(m);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("/model", e.what());
  }
  if (g) return *g;
  // Only the support matters here, so lattices and stars need no p.
  ModelConfig structural = m;
  if ((m.name == "grid" || m.name == "star") && !m.params.contains("p")) {
    structural.params["p"] = 0.5;
  }
  const GraphSpec spec = build_model(structural);
  if (!spec.undirected()) throw ConfigError("/model", "base graph must be undirected");
  return support_graph(spec);
}

ExperimentResult run_monte_carlo(const ExperimentConfig& config) {
  return run_prepared(prepare(config));
}

std::vector<BoundCheck> validate_bounds(const ExperimentResult& result) {
  std::vector<BoundCheck> checks;
  for (const auto& b : result.bounds) {
    for (const auto& e : result.estimates) {
      if (e.estimand != b.estimand) continue;
      BoundCheck c;
      c.estimand = e.estimand;
      c.bound = b.name;
      c.mean = e.mean;
      c.standard_error = e.standard_error;
      c.bound_value = b.value;
      c.margin = b.value + 3.0 * e.standard_error - e.mean;
      // Relative slack for rounding when every trial gives the same value.
      c.passed = c.margin >= -1e-12 * std::abs(b.value);
      checks.push_back(c);
    }
  }
  return checks;
}

std::vector<BoundCheck> validate_bounds(const ExperimentConfig& config) {
  return validate_bounds(run_monte_carlo(config));
}

void run_sweep(const SweepConfig& sweep, std::ostream& csv) {
  if (sweep.values.empty()) throw ConfigError("/values", "sweep grid is empty");
  write_metadata(csv, sweep.base.seed, config_hash(sweep.base));
  fmt::print(csv, "# parameter={}\n", sweep.parameter);
  fmt::print(csv,
             "value,n,rho_h,regime,estimand,mean,stderr,trials,theorem_bound,"
             "closed_form_bound,draief_bound\n");
  for (double value : sweep.values) {
    ExperimentConfig c = sweep.base;
    if (sweep.parameter == "beta") {
      c.beta = value;
    } else if (sweep.parameter == "site_p") {
      c.site_p = value;
    } else {
      c.model.params[sweep.parameter] = value;
    }
    const ExperimentResult r = run_monte_carlo(c);
    for (const auto& e : r.estimates) {
      const NamedBound* theorem = find_bound(r, e.estimand, "theorem");
      const NamedBound* closed = find_bound(r, e.estimand, "closed_form");
      const NamedBound* draief = find_bound(r, e.estimand, "draief");
      const NamedBound* any = theorem ? theorem : closed;
      const Regime regime = any ? any->regime : plain_regime(r.rho_h);
      fmt::print(csv, "{},{},{},{},{},{},{},{},{},{},{}\n", fmt_num(value), r.n,
                 fmt_num(r.rho_h), to_string(regime), e.estimand, fmt_num(e.mean),
                 fmt_num(e.standard_error), e.trials, opt_num(theorem), opt_num(closed),
                 opt_num(draief));
    }
  }
}

std::vector<TightnessRow> run_tightness(const TightnessConfig& config) {
  if (!(config.rho > 0.0) || !std::isfinite(config.rho)) {
    throw ConfigError("/rho", "must be finite and > 0");
  }
  if (config.ns.empty()) throw ConfigError("/n", "need at least one n");
  std::vector<TightnessRow> rows;
  for (std::size_t n : config.ns) {
    if (n < 10) throw ConfigError("/n", "every n must be >= 10");
    const double dn = static_cast<double>(n);
    TightnessRow row;
    row.n = n;
    if (config.rho < 1.0) {
      row.a = config.rho / std::sqrt(dn - 1.0);
      row.b = 0.0;
    } else {
      row.a = 1.0 / std::sqrt(dn * std::log(dn));
      row.b = config.rho / dn;
    }
    ExperimentConfig c;
    c.model.name = "random_star";
    c.model.params = {{"n", dn}, {"a", row.a}, {"b", row.b}};
    c.scenario = FixedInfluencers{{0}};
    c.trials = config.trials;
    c.seed = config.seed;
    c.threads = config.threads;
    c.theorem_bounds = false;
    c.closed_form_bounds = false;
    const ExperimentResult r = run_monte_carlo(c);
    row.rho_h = r.rho_h;
    row.influence = r.estimates.front();
    if (config.rho < 1.0) {
      row.scaled = row.influence.mean / std::sqrt(dn);
    } else if (config.rho == 1.0) {
      row.scaled = row.influence.mean / std::pow(dn, 2.0 / 3.0);
    } else {
      row.scaled = row.influence.mean / dn;
      row.reference = gamma0(config.rho).value;
    }
    rows.push_back(row);
  }
  return rows;
}

void write_tightness_csv(const TightnessConfig& config, const std::vector<TightnessRow>& rows,
                         std::ostream& csv) {
  const json canonical = {{"rho", config.rho}, {"n", config.ns}, {"trials", config.trials},
                          {"seed", config.seed}};
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  write_metadata(csv, config.seed, fmt::format("{:016x}", h));
  fmt::print(csv, "rho,n,a,b,rho_h,mean,stderr,trials,scaled,reference\n");
  for (const auto& r : rows) {
    fmt::print(csv, "{},{},{},{},{},{},{},{},{},{}\n", fmt_num(config.rho), r.n, fmt_num(r.a),
               fmt_num(r.b), fmt_num(r.rho_h), fmt_num(r.influence.mean),
               fmt_num(r.influence.standard_error), r.influence.trials, fmt_num(r.scaled),
               r.reference ? fmt_num(*r.reference) : "");
  }
}

LinkPercoCheck run_linkperco_check(const GraphSpec& spec, double a, std::size_t trials,
                                   std::uint64_t seed, unsigned threads) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("a must be finite and > 0");
  if (!spec.undirected()) throw DomainError("link percolation needs an undirected spec");
  ExperimentConfig c;
  c.model.name = "spec";
  c.estimands = {Estimand{EstimandKind::kLinkPercoLhs, a}};
  c.trials = trials;
  c.seed = seed;
  c.threads = threads;
  c.closed_form_bounds = false;
  const ExperimentResult r = run_prepared(prepare(c, spec));
  LinkPercoCheck out;
  const auto& e = r.estimates.front();
  out.lhs = {e.mean, e.standard_error, e.trials};
  out.rhs = r.bounds.front().value;
  // The relative slack absorbs rounding when every trial gives the same value.
  out.passed = out.lhs.mean <= out.rhs * (1.0 + 1e-12) + 3.0 * out.lhs.standard_error;
  return out;
}

void run_sir_threshold_sweep(const UndirectedGraph& graph, double delta,
                             const std::vector<double>& ratios, std::ostream& csv) {
  if (ratios.empty()) throw ConfigError("/values", "sweep grid is empty");
  if (!(delta > 0.0)) throw DomainError("delta must be > 0");
  const double rho_a = adjacency_spectral_radius(graph);
  fmt::print(csv, "# tool=hazard_cli {}\n# n={} delta={}\n", kToolVersion, graph.n, fmt_num(delta));
  fmt::print(csv,
             "beta_over_delta,rho_a,rho_h,hazard_subcritical,classical,exponential_form,"
             "generic_mean\n");
  for (double ratio : ratios) {
    const SirThresholdReport r =
        sir_threshold_report({ratio * delta, ExponentialIncubation{delta}, rho_a});
    fmt::print(csv, "{},{},{},{},{},{},{}\n", fmt_num(ratio), fmt_num(rho_a), fmt_num(r.rho_h),
               int{r.hazard_subcritical}, int{r.classical.value_or(false)},
               int{r.exponential_form.value_or(false)}, int{r.generic_mean});
  }
}

void write_checks_csv(const ExperimentConfig& config, const ExperimentResult& result,
                      const std::vector<BoundCheck>& checks, std::ostream& csv) {
  write_metadata(csv, config.seed, config_hash(config));
  fmt::print(csv, "# model={}\n", result.label);
  fmt::print(csv, "estimand,bound,n,rho_h,mean,stderr,bound_value,margin,passed\n");
  for (const auto& c : checks) {
    fmt::print(csv, "{},{},{},{},{},{},{},{},{}\n", c.estimand, c.bound, result.n,
               fmt_num(result.rho_h), fmt_num(c.mean), fmt_num(c.standard_error),
               fmt_num(c.bound_value), fmt_num(c.margin), int{c.passed});
  }
}

void write_estimates_csv(const ExperimentConfig& config, const ExperimentResult& result,
                         std::ostream& csv) {
  write_metadata(csv, config.seed, config_hash(config));
  fmt::print(csv, "# model={}\n", result.label);
  fmt::print(csv, "estimand,n,rho_h,mean,stderr,trials,master_seed\n");
  for (const auto& e : result.estimates) {
    fmt::print(csv, "{},{},{},{},{},{},{}\n", e.estimand, result.n, fmt_num(result.rho_h),
               fmt_num(e.mean), fmt_num(e.standard_error), e.trials, e.master_seed);
  }
}

}  // namespace hazard
