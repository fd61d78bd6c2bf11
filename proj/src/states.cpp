#include "loclab/states.hpp"

#include <cmath>
#include <string>

#include "loclab/errors.hpp"

namespace loclab {

namespace {

struct Validator {
    void operator()(const GaussianState& s) const {
        if (!(s.sigma > 0.0)) throw config_error("gaussian state: sigma must be > 0");
    }
    void operator()(const BumpState& s) const {
        if (!(s.radius > 0.0)) throw config_error("bump state: radius must be > 0");
    }
    void operator()(const TruncatedGaussianState& s) const {
        if (!(s.sigma > 0.0)) throw config_error("truncated gaussian: sigma must be > 0");
        if (!(s.cutoff > 0.0)) throw config_error("truncated gaussian: cutoff must be > 0");
    }
    void operator()(const PowerTailState& s) const {
        if (!(s.p >= 1.0)) throw config_error("power tail: p must be >= 1");
    }
    void operator()(const DeltaApproxState& s) const {
        if (!(s.epsilon > 0.0)) throw config_error("delta approx: epsilon must be > 0");
    }
    void operator()(const HermiteGaussianState& s) const {
        if (s.n < 0) throw config_error("hermite gaussian: n must be >= 0");
        if (!(s.sigma > 0.0)) throw config_error("hermite gaussian: sigma must be > 0");
    }
};

struct WidthOf {
    double operator()(const GaussianState& s) const { return s.sigma; }
    double operator()(const BumpState& s) const { return s.radius; }
    double operator()(const TruncatedGaussianState& s) const { return s.sigma; }
    double operator()(const PowerTailState&) const { return 1.0; }
    double operator()(const DeltaApproxState& s) const { return s.epsilon; }
    double operator()(const HermiteGaussianState& s) const { return s.sigma; }
};

// Core interval that must fit strictly inside the grid.
struct CoreOf {
    std::pair<double, double> operator()(const GaussianState& s) const {
        return {s.x0 - 5.0 * s.sigma, s.x0 + 5.0 * s.sigma};
    }
    std::pair<double, double> operator()(const BumpState& s) const {
        return {s.center - s.radius, s.center + s.radius};
    }
    std::pair<double, double> operator()(const TruncatedGaussianState& s) const {
        return {s.x0 - s.cutoff, s.x0 + s.cutoff};
    }
    std::pair<double, double> operator()(const PowerTailState&) const { return {-1.0, 1.0}; }
    std::pair<double, double> operator()(const DeltaApproxState& s) const {
        return {s.x0 - 5.0 * s.epsilon, s.x0 + 5.0 * s.epsilon};
    }
    std::pair<double, double> operator()(const HermiteGaussianState& s) const {
        const double half = (2.0 * s.n + 5.0) * s.sigma;
        return {-half, half};
    }
};

double hermite(int n, double u) {
    // Physicists' Hermite polynomials by recurrence.
    double h0 = 1.0, h1 = 2.0 * u;
    if (n == 0) return h0;
    if (n == 1) return h1;
    for (int i = 2; i <= n; ++i) {
        const double h2 = 2.0 * u * h1 - 2.0 * (i - 1) * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

struct Sampler {
    double x;
    cx operator()(const GaussianState& s) const {
        const double a = std::pow(2.0 * M_PI * s.sigma * s.sigma, -0.25);
        const double env = a * std::exp(-(x - s.x0) * (x - s.x0) / (4.0 * s.sigma * s.sigma));
        return env * std::polar(1.0, s.p0 * x);
    }
    cx operator()(const BumpState& s) const {
        const double u = (x - s.center) / s.radius;
        if (std::abs(u) >= 1.0) return cx{0.0, 0.0};
        return cx{std::exp(-1.0 / (1.0 - u * u)), 0.0};
    }
    cx operator()(const TruncatedGaussianState& s) const {
        if (std::abs(x - s.x0) > s.cutoff) return cx{0.0, 0.0};
        return (*this)(GaussianState{s.x0, 0.0, s.sigma});
    }
    cx operator()(const PowerTailState& s) const {
        return cx{std::pow(1.0 + x * x, -0.5 * s.p), 0.0};
    }
    cx operator()(const DeltaApproxState& s) const {
        return (*this)(GaussianState{s.x0, 0.0, s.epsilon});
    }
    cx operator()(const HermiteGaussianState& s) const {
        const double u = x / (std::sqrt(2.0) * s.sigma);
        return cx{hermite(s.n, u) * std::exp(-x * x / (4.0 * s.sigma * s.sigma)), 0.0};
    }
};

}  // namespace

void validate_state(const StateSpec& spec) { std::visit(Validator{}, spec.shape); }

WaveFunction build_state(const StateSpec& spec, const GridPtr& grid) {
    validate_state(spec);
    const double width = std::visit(WidthOf{}, spec.shape);
    if (width < 4.0 * grid->dx)
        throw config_error("state under-resolved: characteristic width " + std::to_string(width) +
                           " < 4 dx = " + std::to_string(4.0 * grid->dx));
    const auto [lo, hi] = std::visit(CoreOf{}, spec.shape);
    if (lo < grid->x_min || hi > grid->x_max)
        throw config_error("state core [" + std::to_string(lo) + ", " + std::to_string(hi) +
                           "] exceeds grid [" + std::to_string(grid->x_min) + ", " +
                           std::to_string(grid->x_max) + "]");
    std::vector<cx> samples(grid->n_points);
    for (std::size_t i = 0; i < grid->n_points; ++i)
        samples[i] = std::visit(Sampler{grid->position(i)}, spec.shape);
    WaveFunction f = make_wavefunction(grid, std::move(samples));
    if (spec.normalize) {
        const double norm = l2_norm(f);
        if (norm == 0.0) throw numerical_error("build_state: zero-norm state");
        for (cx& s : f.samples) s /= norm;
    }
    return f;
}

}  // namespace loclab
