#pragma once

#include <map>
#include <span>
#include <vector>

#include "loclab/potentials.hpp"
#include "loclab/wavefunction.hpp"

namespace loclab {

/// samples_i <- x_i^k samples_i
WaveFunction apply_position_power(const WaveFunction& f, int k);

/// P = -i d/dx, applied as multiplication by k in momentum space.
WaveFunction apply_momentum(const WaveFunction& f);

/// |P|: multiplication by |k| in momentum space.
WaveFunction apply_abs_momentum(const WaveFunction& f);

/// |P|^k (k even reduces to P^k).
WaveFunction apply_abs_momentum_power(const WaveFunction& f, int k);

/// H f = k^2/(2m) in momentum space plus pointwise V(x) f(x).
WaveFunction apply_hamiltonian(const WaveFunction& f, const PotentialSpec& V, double mass);
WaveFunction apply_hamiltonian(const WaveFunction& f, std::span<const double> v_samples,
                               double mass);

/// Weighted norm: sup over {(k, m) : k <= n, m <= n - k} of ||x^k H^m f||.
/// n may not exceed n_max (default ceiling 3).
double dn_norm(const WaveFunction& f, int n, const PotentialSpec& V, double mass,
               int n_max = 3);

/// Mixed position/momentum moment norms.
double s1_norm(const WaveFunction& f);
double s2_norm(const WaveFunction& f);
/// (||f||^2 + || |x|^n f ||^2 + || |P|^n f ||^2)^(1/2); n=1,2 recover s1/s2.
double sn_norm(const WaveFunction& f, int n);

/// dx * sum over |x_i| > R of |f_i|^2. R must satisfy 0 < R < min(|x_min|, x_max).
double tail_mass(const WaveFunction& f, double R);

/// dx * sum over lo <= x_i <= hi of |f_i|^2.
double interval_mass(const WaveFunction& f, double lo, double hi);

double energy_expectation(const WaveFunction& f, const PotentialSpec& V, double mass);

/// Snapshot of every localization functional at one time.
struct NormReport {
    double t = 0.0;
    double l2 = 0.0;
    std::map<int, double> d_norms;
    double s1 = 0.0;
    double s2 = 0.0;
    std::map<double, double> tail_masses;
    double energy = 0.0;
};

NormReport make_norm_report(const WaveFunction& f, double t, const PotentialSpec& V,
                            double mass, int n_max, const std::vector<double>& tail_radii);

}  // namespace loclab
