#include "loclab/wavefunction.hpp"

#include <cmath>

#include "loclab/errors.hpp"
#include "loclab/fft.hpp"

namespace loclab {

WaveFunction make_wavefunction(GridPtr grid, std::vector<cx> samples) {
    if (!grid) throw shape_error("wavefunction: null grid");
    if (samples.size() != grid->n_points)
        throw shape_error("wavefunction: sample count " + std::to_string(samples.size()) +
                          " does not match grid n_points " + std::to_string(grid->n_points));
    for (const cx& s : samples)
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
            throw numerical_error("wavefunction: non-finite sample");
    return WaveFunction{std::move(grid), std::move(samples)};
}

cx inner_product(const WaveFunction& f, const WaveFunction& g) {
    if (!f.grid || !g.grid || !f.grid->same_as(*g.grid))
        throw shape_error("inner_product: operands live on different grids");
    cx acc{0.0, 0.0};
    for (std::size_t i = 0; i < f.samples.size(); ++i)
        acc += std::conj(f.samples[i]) * g.samples[i];
    return acc * f.grid->dx;
}

double l2_norm(const WaveFunction& f) {
    double acc = 0.0;
    for (const cx& s : f.samples) acc += std::norm(s);
    return std::sqrt(acc * f.grid->dx);
}

WaveFunction to_momentum(const WaveFunction& f) {
    WaveFunction out = f;
    detail::raw_dft(out.samples, -1);
    const double scale = 1.0 / std::sqrt(static_cast<double>(out.samples.size()));
    for (cx& s : out.samples) s *= scale;
    return out;
}

WaveFunction to_position(const WaveFunction& f) {
    WaveFunction out = f;
    detail::raw_dft(out.samples, +1);
    const double scale = 1.0 / std::sqrt(static_cast<double>(out.samples.size()));
    for (cx& s : out.samples) s *= scale;
    return out;
}

WaveFunction scaled(const WaveFunction& f, cx factor) {
    WaveFunction out = f;
    for (cx& s : out.samples) s *= factor;
    return out;
}

}  // namespace loclab
