#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "loclab/experiments.hpp"

namespace loclab {

struct RunConfig {
    GridParams grid;
    std::vector<ExperimentSpec> experiments;
    /// Fully resolved config (defaults merged in), for provenance output.
    nlohmann::json resolved;
};

/// Per-experiment bundled defaults as JSON, suitable for merging user
/// overrides on top of.
nlohmann::json default_experiment_json(const std::string& id);

/// Parses a top-level {grid, experiments} document. Unknown keys anywhere
/// are config errors. Each experiment entry is deep-merged over its
/// defaults; LOCLAB_FLOOR (if set) overrides every relative floor.
RunConfig parse_config(const nlohmann::json& doc);

RunConfig load_config(const std::string& path);

nlohmann::json state_to_json(const StateSpec& s);
nlohmann::json potential_to_json(const PotentialSpec& v);

}  // namespace loclab
