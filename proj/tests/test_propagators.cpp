#include <cmath>

#include "doctest.h"
#include "loclab/errors.hpp"
#include "loclab/propagators.hpp"
#include "loclab/states.hpp"

using namespace loclab;

namespace {

double l2_distance(const WaveFunction& a, const WaveFunction& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        acc += std::norm(a.samples[i] - b.samples[i]);
    return std::sqrt(acc * a.grid->dx);
}

double fitted_variance(const WaveFunction& f) {
    double m1 = 0.0, m2 = 0.0, total = 0.0;
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
        const double w = std::norm(f.samples[i]);
        const double x = f.grid->position(i);
        m1 += w * x;
        m2 += w * x * x;
        total += w;
    }
    m1 /= total;
    m2 /= total;
    return m2 - m1 * m1;
}

}  // namespace

TEST_CASE("exact free evolution matches the closed-form gaussian") {
    auto g = make_grid(-40.0, 40.0, 2048);
    const WaveFunction f0 = free_gaussian_oracle(g, 0.0, 0.0, 1.0, 1.0, 0.0);
    const WaveFunction ft = evolve_free_exact(f0, 2.0, 1.0);
    const WaveFunction oracle = free_gaussian_oracle(g, 0.0, 0.0, 1.0, 1.0, 2.0);
    CHECK(l2_distance(ft, oracle) < 1e-8);
    // Width law: sigma(t)^2 = sigma^2 (1 + (t / 2 m sigma^2)^2) = 2 at t = 2.
    CHECK(fitted_variance(ft) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("free evolution with drift follows the classical trajectory") {
    auto g = make_grid(-40.0, 40.0, 2048);
    const WaveFunction f0 = build_state({GaussianState{-5.0, 3.0, 1.0}, true}, g);
    const WaveFunction ft = evolve_free_exact(f0, 2.0, 1.0);
    const WaveFunction oracle = free_gaussian_oracle(g, -5.0, 3.0, 1.0, 1.0, 2.0);
    CHECK(l2_distance(ft, oracle) < 1e-8);
    // Heavier particles drift slower: x_c = x0 + p0 t / m.
    const WaveFunction slow = evolve_free_exact(f0, 2.0, 3.0);
    const WaveFunction oracle_m3 = free_gaussian_oracle(g, -5.0, 3.0, 1.0, 3.0, 2.0);
    CHECK(l2_distance(slow, oracle_m3) < 1e-8);
}

TEST_CASE("exact free satisfies the group property") {
    auto g = make_grid(-40.0, 40.0, 1024);
    const WaveFunction f0 = build_state({GaussianState{0.0, 1.0, 1.5}, true}, g);
    const WaveFunction two_hops = evolve_free_exact(evolve_free_exact(f0, 0.7, 1.0), 1.3, 1.0);
    const WaveFunction one_hop = evolve_free_exact(f0, 2.0, 1.0);
    CHECK(l2_distance(two_hops, one_hop) < 1e-12);
    // And invertibility: backwards evolution restores the start.
    const WaveFunction back = evolve_free_exact(one_hop, -2.0, 1.0);
    CHECK(l2_distance(back, f0) < 1e-12);
}

TEST_CASE("split-operator unitarity over many steps") {
    auto g = make_grid(-20.0, 20.0, 512);
    WaveFunction f = build_state({GaussianState{0.0, 1.0, 1.0}, true}, g);
    const PotentialSpec v = SmoothBounded{SmoothForm::GaussianBump, 1.0, 0.0, 1.0};
    double drift = 0.0;
    for (int i = 0; i < 10000; ++i) {
        f = step_split_operator(f, v, 1e-3, 1.0);
        drift = std::max(drift, std::abs(l2_norm(f) - 1.0));
    }
    CHECK(drift < 1e-10);
}

TEST_CASE("crank-nicolson unitarity over many steps") {
    auto g = make_grid(-20.0, 20.0, 512);
    WaveFunction f = build_state({GaussianState{0.0, 1.0, 1.0}, true}, g);
    const PotentialSpec v = RectangularBarrier{3.0, 5.0, 2.0};
    double drift = 0.0;
    for (int i = 0; i < 10000; ++i) {
        f = step_crank_nicolson(f, v, 1e-3, 1.0, Boundary::Dirichlet);
        drift = std::max(drift, std::abs(l2_norm(f) - 1.0));
    }
    CHECK(drift < 1e-7);
}

TEST_CASE("crank-nicolson agrees with the exact free propagator") {
    // dx = 0.05, dt = 1e-3, T = 1: second-order finite differences stay
    // within 1e-3 of the spectral answer.
    auto g = make_grid(-12.8, 12.8, 512);
    const WaveFunction f0 = build_state({GaussianState{0.0, 1.0, 1.0}, true}, g);
    PropagatorConfig cn;
    cn.scheme = Scheme::CrankNicolson;
    cn.boundary = Boundary::Dirichlet;
    cn.dt = 1e-3;
    const EvolveResult res = evolve(f0, PotentialSpec{Free{}}, 1.0, cn, {1.0});
    const WaveFunction exact = evolve_free_exact(f0, 1.0, 1.0);
    CHECK(l2_distance(res.snapshots.back(), exact) < 1e-3);
}

TEST_CASE("time reversal round trip") {
    auto g = make_grid(-20.0, 20.0, 512);
    const WaveFunction f0 = build_state({GaussianState{-3.0, 2.0, 1.0}, true}, g);
    const PotentialSpec v = SmoothBounded{SmoothForm::Sech2, 1.5, 0.0, 1.0};
    PropagatorConfig cfg;
    cfg.scheme = Scheme::SplitOperator;
    cfg.dt = 1e-3;
    const EvolveResult fwd = evolve(f0, v, 1.0, cfg, {1.0});
    const EvolveResult bwd = evolve(fwd.snapshots.back(), v, -1.0, cfg, {-1.0});
    CHECK(l2_distance(bwd.snapshots.back(), f0) < 1e-8);
}

TEST_CASE("split-operator self-convergence is second order") {
    auto g = make_grid(-20.0, 20.0, 512);
    const WaveFunction f0 = build_state({GaussianState{-2.0, 1.0, 1.0}, true}, g);
    const PotentialSpec v = SmoothBounded{SmoothForm::GaussianBump, 2.0, 0.0, 1.0};
    auto run = [&](double dt) {
        WaveFunction f = f0;
        const int steps = static_cast<int>(std::lround(1.0 / dt));
        for (int i = 0; i < steps; ++i) f = step_split_operator(f, v, dt, 1.0);
        return f;
    };
    const double e1 = l2_distance(run(4e-3), run(2e-3));
    const double e2 = l2_distance(run(2e-3), run(1e-3));
    const double order = std::log2(e1 / e2);
    CHECK(order == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("dirichlet wall blocks decouple the trap regions") {
    auto g = make_grid(-30.0, 30.0, 1024);
    DoubleWallTrap trap;
    const PotentialSpec v = trap;
    WaveFunction f = build_state({BumpState{0.0, 1.5}, true}, g);
    for (int i = 0; i < 200; ++i) f = step_crank_nicolson(f, v, 1e-3, 1.0, Boundary::Dirichlet);
    // Amplitude on the wall intervals is identically zero.
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
        const double x = g->position(i);
        if ((x >= trap.a1 && x < trap.a2) || (x >= trap.a3 && x < trap.a4))
            CHECK(std::abs(f.samples[i]) == 0.0);
    }
    CHECK(l2_norm(f) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("scheme and sampling validation") {
    auto g = make_grid(-20.0, 20.0, 512);
    const WaveFunction f = build_state({GaussianState{0.0, 0.0, 1.0}, true}, g);
    PropagatorConfig cfg;

    cfg.scheme = Scheme::ExactFree;
    CHECK_THROWS_AS(evolve(f, PotentialSpec{RectangularBarrier{}}, 1.0, cfg, {1.0}),
                    config_error);
    cfg.scheme = Scheme::SplitOperator;
    cfg.boundary = Boundary::Dirichlet;
    CHECK_THROWS_AS(evolve(f, PotentialSpec{Free{}}, 1.0, cfg, {1.0}), config_error);
    cfg.scheme = Scheme::CrankNicolson;
    cfg.boundary = Boundary::Periodic;
    CHECK_THROWS_AS(evolve(f, PotentialSpec{Free{}}, 1.0, cfg, {1.0}), config_error);

    cfg.scheme = Scheme::SplitOperator;
    cfg.boundary = Boundary::Periodic;
    cfg.dt = 1e-3;
    // Sample time off the dt lattice.
    CHECK_THROWS_AS(evolve(f, PotentialSpec{Free{}}, 1.0, cfg, {0.00123456}), config_error);
    // Sample time outside [0, T].
    CHECK_THROWS_AS(evolve(f, PotentialSpec{Free{}}, 1.0, cfg, {2.0}), config_error);
    cfg.dt = -1.0;
    CHECK_THROWS_AS(evolve(f, PotentialSpec{Free{}}, 1.0, cfg, {1.0}), config_error);
}

TEST_CASE("padding rule violations surface as warnings") {
    auto g = make_grid(-10.0, 10.0, 256);
    const WaveFunction f = build_state({GaussianState{0.0, 5.0, 1.0}, true}, g);
    PropagatorConfig cfg;
    cfg.scheme = Scheme::ExactFree;
    const EvolveResult long_run = evolve(f, PotentialSpec{Free{}}, 10.0, cfg, {10.0});
    CHECK(long_run.warnings.size() == 1);
    const EvolveResult short_run = evolve(f, PotentialSpec{Free{}}, 0.1, cfg, {0.1});
    CHECK(short_run.warnings.empty());
}
