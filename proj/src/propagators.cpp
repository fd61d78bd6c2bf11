#include "loclab/propagators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "loclab/errors.hpp"
#include "loclab/fft.hpp"

namespace loclab {

namespace {

WaveFunction free_phase(const WaveFunction& f, double t, double mass) {
    WaveFunction out = f;
    detail::raw_dft(out.samples, -1);
    const auto& ks = out.grid->k_values;
    const double inv_n = 1.0 / static_cast<double>(out.samples.size());
    for (std::size_t j = 0; j < out.samples.size(); ++j)
        out.samples[j] *= std::polar(inv_n, -ks[j] * ks[j] * t / (2.0 * mass));
    detail::raw_dft(out.samples, +1);
    return out;
}

// Reusable split-operator tables for one (grid, V, dt, mass) combination.
struct SplitOperatorTables {
    std::vector<cx> exp_half_v;
    std::vector<cx> exp_kinetic;  // includes the 1/n DFT round-trip factor

    SplitOperatorTables(const Grid& grid, const PotentialSpec& V, double dt, double mass) {
        exp_half_v.resize(grid.n_points);
        exp_kinetic.resize(grid.n_points);
        const double inv_n = 1.0 / static_cast<double>(grid.n_points);
        for (std::size_t i = 0; i < grid.n_points; ++i) {
            exp_half_v[i] = std::polar(1.0, -eval_potential(V, grid.position(i)) * dt / 2.0);
            const double k = grid.k_values[i];
            exp_kinetic[i] = std::polar(inv_n, -k * k * dt / (2.0 * mass));
        }
    }

    void step(std::vector<cx>& s) const {
        for (std::size_t i = 0; i < s.size(); ++i) s[i] *= exp_half_v[i];
        detail::raw_dft(s, -1);
        for (std::size_t i = 0; i < s.size(); ++i) s[i] *= exp_kinetic[i];
        detail::raw_dft(s, +1);
        for (std::size_t i = 0; i < s.size(); ++i) s[i] *= exp_half_v[i];
    }
};

// Cayley-form Crank-Nicolson workspace. Wall intervals of a DoubleWallTrap
// become exact Dirichlet blocks: those points are pinned to zero and the
// tridiagonal coupling across them is cut, so the active regions evolve
// unitarily and independently.
struct CrankNicolsonTables {
    std::vector<double> h_diag;
    double h_off = 0.0;
    std::vector<bool> active;
    double dt = 0.0;

    CrankNicolsonTables(const Grid& grid, const PotentialSpec& V, double dt_, double mass)
        : dt(dt_) {
        const std::size_t n = grid.n_points;
        h_diag.resize(n);
        active.assign(n, true);
        h_off = -1.0 / (2.0 * mass * grid.dx * grid.dx);
        const auto* trap = std::get_if<DoubleWallTrap>(&V);
        for (std::size_t i = 0; i < n; ++i) {
            const double x = grid.position(i);
            double v = eval_potential(V, x);
            if (trap && ((x >= trap->a1 && x < trap->a2) || (x >= trap->a3 && x < trap->a4))) {
                active[i] = false;
                v = 0.0;
            }
            h_diag[i] = 1.0 / (mass * grid.dx * grid.dx) + v;
        }
    }

    void step(std::vector<cx>& s) const {
        const std::size_t n = s.size();
        const cx ih{0.0, 0.5 * dt};
        // b = (1 - i dt H / 2) s, with coupling cut at inactive points.
        std::vector<cx> b(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (!active[i]) {
                b[i] = cx{0.0, 0.0};
                continue;
            }
            cx h = h_diag[i] * s[i];
            if (i > 0 && active[i - 1]) h += h_off * s[i - 1];
            if (i + 1 < n && active[i + 1]) h += h_off * s[i + 1];
            b[i] = s[i] - ih * h;
        }
        // Thomas solve of (1 + i dt H / 2) s_new = b.
        std::vector<cx> cp(n), dp(n);
        cx prev_cp{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) {
            if (!active[i]) {
                cp[i] = cx{0.0, 0.0};
                dp[i] = cx{0.0, 0.0};
                prev_cp = cx{0.0, 0.0};
                continue;
            }
            const cx lower = (i > 0 && active[i - 1]) ? ih * h_off : cx{0.0, 0.0};
            const cx upper = (i + 1 < n && active[i + 1]) ? ih * h_off : cx{0.0, 0.0};
            const cx denom = (1.0 + ih * h_diag[i]) - lower * prev_cp;
            if (std::abs(denom) < 1e-300)
                throw numerical_error("crank-nicolson: tridiagonal solve breakdown");
            cp[i] = upper / denom;
            dp[i] = (b[i] - lower * ((i > 0) ? dp[i - 1] : cx{0.0, 0.0})) / denom;
            prev_cp = cp[i];
        }
        cx next{0.0, 0.0};
        for (std::size_t ri = n; ri-- > 0;) {
            if (!active[ri]) {
                s[ri] = cx{0.0, 0.0};
                next = cx{0.0, 0.0};
                continue;
            }
            s[ri] = dp[ri] - cp[ri] * next;
            next = s[ri];
        }
    }
};

void check_scheme(const PropagatorConfig& c, const PotentialSpec& V) {
    if (!(c.dt > 0.0)) throw config_error("propagator: dt must be > 0");
    if (!(c.mass > 0.0)) throw config_error("propagator: mass must be > 0");
    switch (c.scheme) {
        case Scheme::ExactFree:
            if (!is_free(V)) throw config_error("exact-free scheme requires a free potential");
            break;
        case Scheme::SplitOperator:
            if (c.boundary != Boundary::Periodic)
                throw config_error("split-operator scheme requires periodic boundary");
            break;
        case Scheme::CrankNicolson:
            if (c.boundary != Boundary::Dirichlet)
                throw config_error("crank-nicolson scheme requires dirichlet boundary");
            break;
    }
}

}  // namespace

WaveFunction evolve_free_exact(const WaveFunction& f, double t, double mass) {
    return free_phase(f, t, mass);
}

WaveFunction free_gaussian_oracle(const GridPtr& grid, double x0, double p0, double sigma,
                                  double mass, double t) {
    const double amp = std::pow(2.0 * M_PI * sigma * sigma, -0.25);
    const cx beta{1.0, t / (2.0 * mass * sigma * sigma)};
    const cx pref = amp / std::sqrt(beta);
    const double xc = x0 + p0 * t / mass;
    const double phase0 = -p0 * p0 * t / (2.0 * mass);
    std::vector<cx> samples(grid->n_points);
    for (std::size_t i = 0; i < grid->n_points; ++i) {
        const double x = grid->position(i);
        const cx arg = -(x - xc) * (x - xc) / (4.0 * sigma * sigma * beta) +
                       cx{0.0, p0 * x + phase0};
        samples[i] = pref * std::exp(arg);
    }
    return make_wavefunction(grid, std::move(samples));
}

WaveFunction step_split_operator(const WaveFunction& f, const PotentialSpec& V, double dt,
                                 double mass) {
    SplitOperatorTables tables(*f.grid, V, dt, mass);
    WaveFunction out = f;
    tables.step(out.samples);
    return out;
}

WaveFunction step_crank_nicolson(const WaveFunction& f, const PotentialSpec& V, double dt,
                                 double mass, Boundary boundary) {
    if (boundary != Boundary::Dirichlet)
        throw config_error("crank-nicolson scheme requires dirichlet boundary");
    CrankNicolsonTables tables(*f.grid, V, dt, mass);
    WaveFunction out = f;
    tables.step(out.samples);
    return out;
}

double momentum_radius(const WaveFunction& f, double mass_fraction) {
    const WaveFunction fk = to_momentum(f);
    const auto& ks = fk.grid->k_values;
    std::vector<std::size_t> order(ks.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return std::abs(ks[a]) < std::abs(ks[b]); });
    double total = 0.0;
    for (const cx& s : fk.samples) total += std::norm(s);
    if (total == 0.0) return 0.0;
    double acc = 0.0;
    for (std::size_t j : order) {
        acc += std::norm(fk.samples[j]);
        if (acc >= mass_fraction * total) return std::abs(ks[j]);
    }
    return std::abs(ks[order.back()]);
}

EvolveResult evolve(const WaveFunction& f, const PotentialSpec& V, double T,
                    const PropagatorConfig& config, const std::vector<double>& sample_times) {
    check_scheme(config, V);
    // Negative T runs the group backwards (signed step).
    const double dt_signed = (T >= 0.0) ? config.dt : -config.dt;
    std::vector<double> times = sample_times;
    if (times.empty()) times.push_back(T);
    for (double t : times)
        if (t * dt_signed < 0.0 || std::abs(t) > std::abs(T) + config.dt / 2.0)
            throw config_error("evolve: sample time " + std::to_string(t) + " outside [0, T]");

    EvolveResult result;

    // Padding rule: half-width must cover drift + spread + ballistic reach
    // of the wavenumber holding 99.99% of the momentum mass. Only periodic
    // runs can wrap around; Dirichlet walls confine by construction.
    if (config.boundary == Boundary::Periodic) {
        double mean = 0.0, m2 = 0.0, total = 0.0;
        for (std::size_t i = 0; i < f.samples.size(); ++i) {
            const double w = std::norm(f.samples[i]);
            const double x = f.grid->position(i);
            mean += w * x;
            m2 += w * x * x;
            total += w;
        }
        if (total > 0.0) {
            mean /= total;
            m2 /= total;
        }
        const double sigma_eff = std::sqrt(std::max(0.0, m2 - mean * mean));
        const double k9999 = momentum_radius(f, 0.9999);
        const double need = std::abs(mean) + 5.0 * sigma_eff + k9999 * std::abs(T) / config.mass;
        const double half_width = (f.grid->x_max - f.grid->x_min) / 2.0;
        if (need > half_width)
            result.warnings.push_back(
                "padding rule violated: required half-width " + std::to_string(need) +
                " exceeds grid half-width " + std::to_string(half_width));
    }

    if (config.scheme == Scheme::ExactFree) {
        for (double t : times) {
            result.times.push_back(t);
            result.snapshots.push_back(evolve_free_exact(f, t, config.mass));
        }
        return result;
    }

    // Stepped schemes: sample times must sit on the dt lattice.
    std::vector<long> sample_steps;
    long prev = 0;
    for (double t : times) {
        const long idx = std::lround(t / dt_signed);
        if (std::abs(static_cast<double>(idx) * dt_signed - t) >
            1e-9 * std::max(1.0, std::abs(t)))
            throw config_error("evolve: sample time " + std::to_string(t) +
                               " is not a multiple of dt = " + std::to_string(config.dt));
        if (idx < prev) throw config_error("evolve: sample times must be ordered");
        sample_steps.push_back(idx);
        prev = idx;
    }

    WaveFunction current = f;
    auto run_steps = [&](auto& tables) {
        long step = 0;
        for (long target : sample_steps) {
            while (step < target) {
                tables.step(current.samples);
                ++step;
            }
            result.times.push_back(static_cast<double>(step) * dt_signed);
            result.snapshots.push_back(current);
        }
    };
    if (config.scheme == Scheme::SplitOperator) {
        SplitOperatorTables tables(*f.grid, V, dt_signed, config.mass);
        run_steps(tables);
    } else {
        CrankNicolsonTables tables(*f.grid, V, dt_signed, config.mass);
        run_steps(tables);
    }
    return result;
}

}  // namespace loclab
