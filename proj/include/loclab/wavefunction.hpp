#pragma once

#include <complex>
#include <vector>

#include "loclab/grid.hpp"

namespace loclab {

using cx = std::complex<double>;

/// Complex amplitudes sampled on a Grid. Value object; the grid is shared
/// and immutable. The same container holds position- and momentum-space
/// representations (momentum bins follow grid.k_values ordering).
struct WaveFunction {
    GridPtr grid;
    std::vector<cx> samples;
};

/// Validating constructor: sample count must match the grid and every
/// sample must be finite.
WaveFunction make_wavefunction(GridPtr grid, std::vector<cx> samples);

/// dx * sum conj(f_i) g_i. Throws shape_error on grid mismatch.
cx inner_product(const WaveFunction& f, const WaveFunction& g);

double l2_norm(const WaveFunction& f);

/// Unitary DFT (1/sqrt(n) convention) so that Parseval is an identity.
WaveFunction to_momentum(const WaveFunction& f);
WaveFunction to_position(const WaveFunction& f);

/// Scale samples in place by a complex factor.
WaveFunction scaled(const WaveFunction& f, cx factor);

}  // namespace loclab
