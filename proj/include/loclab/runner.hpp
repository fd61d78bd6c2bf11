#pragma once

#include <string>
#include <vector>

namespace loclab {

inline constexpr const char* kVersion = "1.0.0";

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdictFail = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalError = 3;

/// Runs every experiment in the config, writes per-experiment CSV/JSON/SVG
/// and manifest.json (always last) into out_dir.
int cmd_run(const std::string& config_path, const std::string& out_dir, int jobs);

int cmd_list(bool as_json);

/// Runs the config's single experiment once per value of the dotted
/// parameter path (e.g. "propagator.dt", "potential.v0"), aggregating the
/// verdicts into sweep.csv with a convergence column.
int cmd_sweep(const std::string& config_path, const std::string& param_path,
              const std::vector<double>& values, const std::string& out_dir);

}  // namespace loclab
