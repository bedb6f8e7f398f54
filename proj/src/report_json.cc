#include "hazard/report_json.h"

#include <string>

namespace hazard {

using nlohmann::json;

json to_json(const HazardSummary& s) {
  return {{"rho_h", s.rho_h},
          {"rho_p", s.rho_p},
          {"max_p", s.max_p},
          {"iterations", s.iterations},
          {"residual", s.residual}};
}

json to_json(const BoundReport& r) {
  return {{"bound", r.bound},
          {"unclamped", r.unclamped},
          {"clamped", r.clamped},
          {"degenerate", r.degenerate},
          {"regime", std::string(to_string(r.regime))},
          {"scenario", std::string(to_string(r.scenario))},
          {"form", std::string(to_string(r.form))},
          {"constants", r.constants}};
}

json to_json(const PercolationBoundReport& r) {
  return {{"bound", r.bound},
          {"unclamped", r.unclamped},
          {"clamped", r.clamped},
          {"regime", std::string(to_string(r.regime))},
          {"a", r.a_used},
          {"constants", r.constants}};
}

json to_json(const SirThresholdReport& r) {
  json j = {{"rho_h", r.rho_h},
            {"mean_incubation", r.mean_incubation},
            {"hazard_subcritical", r.hazard_subcritical},
            {"generic_mean", r.generic_mean}};
  if (r.classical) j["classical"] = *r.classical;
  if (r.exponential_form) j["exponential_form"] = *r.exponential_form;
  if (r.lognormal_form) j["lognormal_form"] = *r.lognormal_form;
  return j;
}

json to_json(const SimEstimate& e) {
  return {{"estimand", e.estimand},
          {"mean", e.mean},
          {"stderr", e.standard_error},
          {"trials", e.trials},
          {"master_seed", e.master_seed}};
}

json to_json(const NamedBound& b) {
  return {{"estimand", b.estimand},
          {"bound", b.name},
          {"value", b.value},
          {"regime", std::string(to_string(b.regime))},
          {"constants", b.constants}};
}

json to_json(const BoundCheck& c) {
  return {{"estimand", c.estimand},   {"bound", c.bound},
          {"mean", c.mean},           {"stderr", c.standard_error},
          {"bound_value", c.bound_value}, {"margin", c.margin},
          {"passed", c.passed}};
}

json experiment_report(const ExperimentConfig& config, const ExperimentResult& result,
                       const std::vector<BoundCheck>& checks) {
  json estimates = json::array();
  for (const auto& e : result.estimates) estimates.push_back(to_json(e));
  json bounds = json::array();
  for (const auto& b : result.bounds) bounds.push_back(to_json(b));
  json j = {{"tool_version", std::string(kToolVersion)},
            {"config", config_to_json(config)},
            {"config_hash", config_hash(config)},
            {"model", result.label},
            {"n", result.n},
            {"rho_h", result.rho_h},
            {"estimates", estimates},
            {"bounds", bounds}};
  if (!checks.empty()) {
    json list = json::array();
    for (const auto& c : checks) list.push_back(to_json(c));
    j["checks"] = list;
  }
  return j;
}

}  // namespace hazard
