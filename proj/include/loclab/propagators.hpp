#pragma once

#include <string>
#include <vector>

#include "loclab/potentials.hpp"
#include "loclab/wavefunction.hpp"

namespace loclab {

enum class Scheme { ExactFree, SplitOperator, CrankNicolson };
enum class Boundary { Periodic, Dirichlet };

struct PropagatorConfig {
    Scheme scheme = Scheme::SplitOperator;
    double dt = 1e-3;
    double mass = 1.0;
    Boundary boundary = Boundary::Periodic;
};

/// Exact free evolution: multiplication by exp(-i k^2 t / 2m) in momentum
/// space. Any t in a single application.
WaveFunction evolve_free_exact(const WaveFunction& f, double t, double mass);

/// Closed-form freely evolved Gaussian sampled on the grid; |psi|^2 has
/// width sigma * sqrt(1 + (t/(2 m sigma^2))^2) centered at x0 + p0 t / m.
WaveFunction free_gaussian_oracle(const GridPtr& grid, double x0, double p0, double sigma,
                                  double mass, double t);

/// One Strang step exp(-iV dt/2) exp(-iH0 dt) exp(-iV dt/2). Periodic only.
WaveFunction step_split_operator(const WaveFunction& f, const PotentialSpec& V, double dt,
                                 double mass);

/// One Cayley step (1 - iH dt/2)(1 + iH dt/2)^{-1} with a tridiagonal
/// finite-difference Laplacian. Dirichlet zeros at the domain ends; with a
/// DoubleWallTrap potential the wall intervals become exact Dirichlet
/// blocks (the trap's v_wall is then not added on those points).
WaveFunction step_crank_nicolson(const WaveFunction& f, const PotentialSpec& V, double dt,
                                 double mass, Boundary boundary);

struct EvolveResult {
    std::vector<double> times;
    std::vector<WaveFunction> snapshots;
    std::vector<std::string> warnings;
};

/// Evolves f to total time T, returning snapshots at the requested sample
/// times. Stepped schemes require sample times to be multiples of dt.
/// Padding-rule violations are attached as warnings, never errors.
EvolveResult evolve(const WaveFunction& f, const PotentialSpec& V, double T,
                    const PropagatorConfig& config, const std::vector<double>& sample_times);

/// Wavenumber below which the given fraction of momentum-space mass lies.
double momentum_radius(const WaveFunction& f, double mass_fraction);

}  // namespace loclab
