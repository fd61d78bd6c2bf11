#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "loclab/wavefunction.hpp"

namespace loclab {

enum class Regime { CompactSupport, Exponential, Polynomial, Undetermined };

/// Tail falloff decision over a radial window. For Polynomial the order is
/// the fitted power; for Exponential it is the winning stretch q in {1, 2}.
struct FalloffClassification {
    Regime regime = Regime::Undetermined;
    double order = 0.0;
    std::array<double, 2> fit_window{0.0, 0.0};
    double fit_residual = 0.0;
    double floor_fraction = 0.0;
};

const char* regime_name(Regime r);

/// Classifies |f| vs |x| over [r_lo, r_hi]. floor_rel is relative to
/// max|f| so the decision is amplitude-scale-equivariant. The window is
/// split into log-spaced bins and the per-bin RMS envelope is fitted, which
/// keeps oscillatory tails from drowning the model comparison.
FalloffClassification classify_falloff(const WaveFunction& f, double r_lo, double r_hi,
                                       double floor_rel = 1e-13, int bins = 16);

/// Same procedure on raw (radius, amplitude) samples with an absolute floor.
FalloffClassification classify_samples(std::span<const double> radii,
                                       std::span<const double> amps, double r_lo, double r_hi,
                                       double floor_abs, int bins = 16);

struct GrowthFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    double residual = 0.0;
    std::array<double, 2> t_window{0.0, 0.0};
};

/// Least-squares fit of log(norm) against log(1 + t). Requires >= 8 samples
/// whose (1 + t) values span at least one decade and positive norms.
GrowthFit fit_growth_exponent(std::span<const std::pair<double, double>> series);

/// True iff mass has appeared beyond r_support + margin. f0 must be
/// genuinely compactly supported inside r_support.
bool detect_spreading(const WaveFunction& f0, const WaveFunction& ft, double r_support,
                      double margin, double floor);

}  // namespace loclab
