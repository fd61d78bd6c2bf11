#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "loclab/experiments.hpp"

namespace loclab {

/// Shortest round-trip-exact decimal (17 significant digits).
std::string format_g17(double v);

/// CSV time series with columns exactly
/// {t, l2, d1, d2, s1, s2, tail_R1, tail_R2, energy}.
std::string norm_reports_csv(const std::vector<NormReport>& reports);

nlohmann::json result_to_json(const ExperimentResult& res, const nlohmann::json& resolved);

/// |psi|^2 snapshots on a log scale, one polyline per sample time.
std::string svg_profiles(const std::string& title, const SubRunResult& run);

/// Every tracked norm against time on log-log axes.
std::string svg_norms(const std::string& title, const SubRunResult& run);

/// Writes <id>_<label>.csv per sub-run, <id>_result.json, and the two SVGs
/// per sub-run into out_dir. Returns the written file names.
std::vector<std::string> write_experiment_outputs(const std::string& out_dir,
                                                  const ExperimentResult& res,
                                                  const nlohmann::json& resolved);

}  // namespace loclab
