#pragma once

#include <variant>

#include "loclab/wavefunction.hpp"

namespace loclab {

struct GaussianState {
    double x0 = 0.0;
    double p0 = 0.0;
    double sigma = 1.0;  // std of |psi|^2
};

/// C-infinity mollifier exp(-1/(1-u^2)), exactly zero for |u| >= 1.
struct BumpState {
    double center = 0.0;
    double radius = 1.0;
};

/// Gaussian hard-zeroed beyond |x - x0| > cutoff; the jump is deliberate.
struct TruncatedGaussianState {
    double x0 = 0.0;
    double sigma = 1.0;
    double cutoff = 2.0;
};

/// f(x) proportional to (1 + x^2)^(-p/2): falloff of exactly order p.
struct PowerTailState {
    double p = 2.0;
};

/// Narrow Gaussian of width epsilon; grid-convergent delta surrogate.
struct DeltaApproxState {
    double x0 = 0.0;
    double epsilon = 0.1;
};

/// Harmonic-oscillator eigenfunction shape: H_n(x/(sqrt(2) sigma)) times a
/// Gaussian whose ground state has position std sigma.
struct HermiteGaussianState {
    int n = 0;
    double sigma = 1.0;
};

using StateShape = std::variant<GaussianState, BumpState, TruncatedGaussianState,
                                PowerTailState, DeltaApproxState, HermiteGaussianState>;

struct StateSpec {
    StateShape shape;
    bool normalize = true;
};

void validate_state(const StateSpec& spec);

/// Samples the spec on the grid. Requires the characteristic width to be
/// resolved (>= 4 dx) and the support/core to fit inside the grid.
WaveFunction build_state(const StateSpec& spec, const GridPtr& grid);

}  // namespace loclab
