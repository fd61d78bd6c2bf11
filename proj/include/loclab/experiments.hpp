#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "loclab/analysis.hpp"
#include "loclab/operators.hpp"
#include "loclab/propagators.hpp"
#include "loclab/states.hpp"

namespace loclab {

struct GridParams {
    double x_min = -30.0;
    double x_max = 30.0;
    std::size_t n_points = 4096;
};

/// Instrumentation knobs: classifier windows/floors, spreading margins,
/// reported tail radii, and the experiment-specific scalars.
struct AnalysisParams {
    std::array<double, 2> window{0.0, 0.0};
    std::array<double, 2> control_window{0.0, 0.0};
    double floor_rel = 1e-13;
    int bins = 16;
    double margin = 1.0;
    std::vector<double> tail_radii{2.0, 5.0};
    int n_max = 2;
    std::vector<double> epsilons;    // E2 delta-width sequence
    double probe_time = 1.0;         // E2
    double core_half_width = 2.0;    // E2 uniform-modulus window
    double support_radius = 1.0;     // E1
};

struct ExperimentSpec {
    std::string id;
    GridParams grid;
    StateSpec state;
    StateSpec state_b;  // E3 thrown packet, E7 smooth control
    bool has_state_b = false;
    PotentialSpec potential;
    PotentialSpec potential_b;  // second scenario for E4/E5/E6
    bool has_potential_b = false;
    PropagatorConfig propagator;
    std::vector<double> sample_times;
    AnalysisParams analysis;
    std::map<std::string, double> thresholds;
};

enum class Verdict { Pass, Fail, Flagged };

const char* verdict_name(Verdict v);

/// One verdict ingredient: fails when `value` crosses `threshold` in the
/// direction given by `fail_above`.
struct Check {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool fail_above = true;
    bool pass = true;
};

struct SubRunResult {
    std::string label;
    bool informational = false;  // corroborating run; never affects verdict
    std::vector<NormReport> reports;
    std::vector<std::pair<double, FalloffClassification>> classifications;
    std::map<std::string, GrowthFit> fits;
    std::map<std::string, double> metrics;
    /// Decimated (x, |psi|^2) profiles per sample time, for plotting.
    std::vector<std::pair<double, std::vector<std::array<double, 2>>>> profiles;
    std::vector<std::string> warnings;
};

struct ExperimentResult {
    std::string id;
    Verdict verdict = Verdict::Pass;
    bool exploratory = false;
    std::vector<SubRunResult> runs;
    std::vector<Check> checks;
    std::vector<std::string> warnings;
    double wall_seconds = 0.0;
    /// Signed fail margin: max over checks of the threshold excess;
    /// negative means every check passed with room. Used by sweeps.
    double headline = 0.0;
};

struct ExperimentInfo {
    std::string id;
    std::string title;
    std::string claim;
};

const std::vector<ExperimentInfo>& experiment_registry();

ExperimentResult run_experiment(const ExperimentSpec& spec);

}  // namespace loclab
