#include "loclab/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "loclab/errors.hpp"

namespace loclab {

namespace {

struct Validator {
    void operator()(const Free&) const {}
    void operator()(const RectangularBarrier& p) const {
        if (!(p.a < p.b)) throw config_error("barrier: requires a < b");
        if (!(p.v0 > 0.0)) throw config_error("barrier: requires v0 > 0");
    }
    void operator()(const DoubleWallTrap& p) const {
        if (!(p.a1 < p.a2 && p.a2 < p.a3 && p.a3 < p.a4))
            throw config_error("trap: requires a1 < a2 < a3 < a4");
        if (!(p.v_wall > 0.0) || !std::isfinite(p.v_wall))
            throw config_error("trap: requires finite v_wall > 0");
    }
    void operator()(const SmoothBounded& p) const {
        if (!(p.width > 0.0)) throw config_error("smooth potential: requires width > 0");
    }
    void operator()(const Tabulated& p) const {
        if (p.x.size() != p.v.size() || p.x.empty())
            throw config_error("tabulated potential: x and v must be equal-length and non-empty");
        if (!std::is_sorted(p.x.begin(), p.x.end()))
            throw config_error("tabulated potential: x must be increasing");
    }
};

struct Eval {
    double x;
    double operator()(const Free&) const { return 0.0; }
    double operator()(const RectangularBarrier& p) const {
        return (x >= p.a && x < p.b) ? p.v0 : 0.0;
    }
    double operator()(const DoubleWallTrap& p) const {
        if (x >= p.a1 && x < p.a2) return p.v_wall;
        if (x >= p.a3 && x < p.a4) return p.v_wall;
        return 0.0;
    }
    double operator()(const SmoothBounded& p) const {
        const double u = (x - p.center) / p.width;
        if (p.form == SmoothForm::GaussianBump) return p.amplitude * std::exp(-0.5 * u * u);
        const double c = std::cosh(u);
        return p.amplitude / (c * c);
    }
    double operator()(const Tabulated& p) const {
        // Nearest-neighbor lookup.
        auto it = std::lower_bound(p.x.begin(), p.x.end(), x);
        if (it == p.x.begin()) return p.v.front();
        if (it == p.x.end()) return p.v.back();
        const std::size_t hi = static_cast<std::size_t>(it - p.x.begin());
        return (x - p.x[hi - 1] <= p.x[hi] - x) ? p.v[hi - 1] : p.v[hi];
    }
};

struct SupNorm {
    double operator()(const Free&) const { return 0.0; }
    double operator()(const RectangularBarrier& p) const { return std::abs(p.v0); }
    double operator()(const DoubleWallTrap& p) const { return std::abs(p.v_wall); }
    double operator()(const SmoothBounded& p) const { return std::abs(p.amplitude); }
    double operator()(const Tabulated& p) const {
        double m = 0.0;
        for (double v : p.v) m = std::max(m, std::abs(v));
        return m;
    }
};

}  // namespace

void validate_potential(const PotentialSpec& spec) { std::visit(Validator{}, spec); }

double eval_potential(const PotentialSpec& spec, double x) { return std::visit(Eval{x}, spec); }

std::vector<double> sample_potential(const PotentialSpec& spec, const Grid& grid) {
    std::vector<double> v(grid.n_points);
    for (std::size_t i = 0; i < grid.n_points; ++i)
        v[i] = eval_potential(spec, grid.position(i));
    return v;
}

bool is_free(const PotentialSpec& spec) { return std::holds_alternative<Free>(spec); }

KatoConstants kato_constants(const PotentialSpec& spec) {
    validate_potential(spec);
    return KatoConstants{0.0, std::visit(SupNorm{}, spec)};
}

}  // namespace loclab
