#ifndef HAZARD_REPORT_JSON_H_
#define HAZARD_REPORT_JSON_H_

#include <vector>

#include "json.hpp"

#include "hazard/harness.h"
#include "hazard/hazard_matrix.h"
#include "hazard/influence_bounds.h"
#include "hazard/percolation_bounds.h"

namespace hazard {

// JSON mirrors of the CSV outputs, with the bound constants included.
nlohmann::json to_json(const HazardSummary& s);
nlohmann::json to_json(const BoundReport& r);
nlohmann::json to_json(const PercolationBoundReport& r);
nlohmann::json to_json(const SirThresholdReport& r);
nlohmann::json to_json(const SimEstimate& e);
nlohmann::json to_json(const NamedBound& b);
nlohmann::json to_json(const BoundCheck& c);

// Experiment report: config, its hash, tool version, estimates, bounds
// and (if given) the bound checks.
nlohmann::json experiment_report(const ExperimentConfig& config, const ExperimentResult& result,
                                 const std::vector<BoundCheck>& checks = {});

}  // namespace hazard

#endif  // HAZARD_REPORT_JSON_H_
