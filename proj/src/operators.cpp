#include "loclab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "loclab/errors.hpp"
#include "loclab/fft.hpp"

namespace loclab {

namespace {

// Multiply by g(k) in momentum space: inverse-DFT(g . DFT(f)). The 1/n
// normalization is folded into the round trip.
template <typename Fn>
WaveFunction momentum_multiplier(const WaveFunction& f, Fn g) {
    WaveFunction out = f;
    detail::raw_dft(out.samples, -1);
    const auto& ks = out.grid->k_values;
    const double inv_n = 1.0 / static_cast<double>(out.samples.size());
    for (std::size_t j = 0; j < out.samples.size(); ++j) out.samples[j] *= g(ks[j]) * inv_n;
    detail::raw_dft(out.samples, +1);
    return out;
}

}  // namespace

WaveFunction apply_position_power(const WaveFunction& f, int k) {
    if (k < 0) throw config_error("apply_position_power: k must be >= 0");
    if (k == 0) return f;
    WaveFunction out = f;
    for (std::size_t i = 0; i < out.samples.size(); ++i)
        out.samples[i] *= std::pow(out.grid->position(i), k);
    return out;
}

WaveFunction apply_momentum(const WaveFunction& f) {
    return momentum_multiplier(f, [](double k) { return k; });
}

WaveFunction apply_abs_momentum(const WaveFunction& f) {
    return momentum_multiplier(f, [](double k) { return std::abs(k); });
}

WaveFunction apply_abs_momentum_power(const WaveFunction& f, int k) {
    if (k < 0) throw config_error("apply_abs_momentum_power: k must be >= 0");
    return momentum_multiplier(f, [k](double kk) { return std::pow(std::abs(kk), k); });
}

WaveFunction apply_hamiltonian(const WaveFunction& f, std::span<const double> v_samples,
                               double mass) {
    if (v_samples.size() != f.samples.size())
        throw shape_error("apply_hamiltonian: potential samples do not match grid");
    WaveFunction kin = momentum_multiplier(f, [mass](double k) { return k * k / (2.0 * mass); });
    for (std::size_t i = 0; i < kin.samples.size(); ++i)
        kin.samples[i] += v_samples[i] * f.samples[i];
    return kin;
}

WaveFunction apply_hamiltonian(const WaveFunction& f, const PotentialSpec& V, double mass) {
    if (is_free(V))
        return momentum_multiplier(f, [mass](double k) { return k * k / (2.0 * mass); });
    const std::vector<double> v = sample_potential(V, *f.grid);
    return apply_hamiltonian(f, v, mass);
}

double dn_norm(const WaveFunction& f, int n, const PotentialSpec& V, double mass, int n_max) {
    if (n < 0) throw config_error("dn_norm: n must be >= 0");
    if (n > n_max)
        throw config_error("dn_norm: n = " + std::to_string(n) + " exceeds n_max = " +
                           std::to_string(n_max));
    const std::vector<double> v = is_free(V) ? std::vector<double>(f.grid->n_points, 0.0)
                                             : sample_potential(V, *f.grid);
    double sup = 0.0;
    WaveFunction hm = f;  // H^m f, m-fold repetition
    for (int m = 0; m <= n; ++m) {
        if (m > 0) hm = apply_hamiltonian(hm, v, mass);
        for (int k = 0; k + m <= n; ++k)
            sup = std::max(sup, l2_norm(apply_position_power(hm, k)));
    }
    return sup;
}

double s1_norm(const WaveFunction& f) { return sn_norm(f, 1); }

double s2_norm(const WaveFunction& f) { return sn_norm(f, 2); }

double sn_norm(const WaveFunction& f, int n) {
    if (n < 1) throw config_error("sn_norm: n must be >= 1");
    const double a = l2_norm(f);
    const double b = l2_norm(apply_position_power(f, n));  // || |x|^n f || = || x^n f || in 1D
    const double c = l2_norm(apply_abs_momentum_power(f, n));
    return std::sqrt(a * a + b * b + c * c);
}

double tail_mass(const WaveFunction& f, double R) {
    const Grid& g = *f.grid;
    if (!(R > 0.0) || R >= std::min(std::abs(g.x_min), g.x_max))
        throw config_error("tail_mass: R must satisfy 0 < R < min(|x_min|, x_max)");
    double acc = 0.0;
    for (std::size_t i = 0; i < f.samples.size(); ++i)
        if (std::abs(g.position(i)) > R) acc += std::norm(f.samples[i]);
    return acc * g.dx;
}

double interval_mass(const WaveFunction& f, double lo, double hi) {
    double acc = 0.0;
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
        const double x = f.grid->position(i);
        if (x >= lo && x <= hi) acc += std::norm(f.samples[i]);
    }
    return acc * f.grid->dx;
}

double energy_expectation(const WaveFunction& f, const PotentialSpec& V, double mass) {
    return inner_product(f, apply_hamiltonian(f, V, mass)).real();
}

NormReport make_norm_report(const WaveFunction& f, double t, const PotentialSpec& V,
                            double mass, int n_max, const std::vector<double>& tail_radii) {
    NormReport r;
    r.t = t;
    r.l2 = l2_norm(f);
    for (int n = 0; n <= n_max; ++n) r.d_norms[n] = dn_norm(f, n, V, mass, n_max);
    r.s1 = s1_norm(f);
    r.s2 = s2_norm(f);
    for (double R : tail_radii) r.tail_masses[R] = tail_mass(f, R);
    r.energy = energy_expectation(f, V, mass);
    return r;
}

}  // namespace loclab
