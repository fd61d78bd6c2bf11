#include <cmath>
#include <utility>
#include <vector>

#include "doctest.h"
#include "loclab/analysis.hpp"
#include "loclab/errors.hpp"
#include "loclab/propagators.hpp"
#include "loclab/states.hpp"

using namespace loclab;

TEST_CASE("classifier recognizes gaussian falloff") {
    auto g = make_grid(-30.0, 30.0, 4096);
    const WaveFunction f = build_state({GaussianState{0.0, 0.0, 1.0}, true}, g);
    const auto cls = classify_falloff(f, 3.0, 8.0);
    CHECK(cls.regime == Regime::Exponential);
    CHECK(cls.order == 2.0);
}

TEST_CASE("classifier recognizes plain exponential falloff") {
    auto g = make_grid(-30.0, 30.0, 4096);
    std::vector<cx> samples(g->n_points);
    for (std::size_t i = 0; i < g->n_points; ++i)
        samples[i] = std::exp(-std::abs(g->position(i)));
    const auto cls = classify_falloff(make_wavefunction(g, std::move(samples)), 3.0, 12.0);
    CHECK(cls.regime == Regime::Exponential);
    CHECK(cls.order == 1.0);
}

TEST_CASE("classifier recognizes polynomial falloff with the right order") {
    auto g = make_grid(-30.0, 30.0, 4096);
    for (double p : {2.0, 3.0}) {
        const WaveFunction f = build_state({PowerTailState{p}, true}, g);
        const auto cls = classify_falloff(f, 5.0, 25.0);
        CHECK(cls.regime == Regime::Polynomial);
        CHECK(cls.order == doctest::Approx(p).epsilon(0.1));
    }
}

TEST_CASE("classifier recognizes compact support") {
    auto g = make_grid(-30.0, 30.0, 4096);
    const WaveFunction f = build_state({BumpState{0.0, 1.0}, true}, g);
    const auto cls = classify_falloff(f, 0.5, 5.0);
    CHECK(cls.regime == Regime::CompactSupport);
}

TEST_CASE("classifier survives oscillatory envelopes") {
    // |sin| modulation on top of a power law must not derail the fit.
    auto g = make_grid(-30.0, 30.0, 4096);
    std::vector<cx> samples(g->n_points);
    for (std::size_t i = 0; i < g->n_points; ++i) {
        const double x = g->position(i);
        const double env = std::pow(1.0 + x * x, -1.0);
        samples[i] = env * (0.55 + 0.45 * std::sin(8.0 * x));
    }
    const auto cls = classify_falloff(make_wavefunction(g, std::move(samples)), 5.0, 25.0);
    CHECK(cls.regime == Regime::Polynomial);
    CHECK(cls.order == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("classifier configuration errors") {
    auto g = make_grid(-30.0, 30.0, 4096);
    const WaveFunction f = build_state({GaussianState{0.0, 0.0, 1.0}, true}, g);
    CHECK_THROWS_AS(classify_falloff(f, 8.0, 3.0), config_error);   // inverted window
    CHECK_THROWS_AS(classify_falloff(f, 3.0, 50.0), config_error);  // beyond grid
    CHECK_THROWS_AS(classify_falloff(f, 3.0, 3.01), config_error);  // < 10 points
}

TEST_CASE("growth fit recovers exact power laws") {
    std::vector<std::pair<double, double>> series;
    for (double t : {0.0, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0})
        series.emplace_back(t, 3.0 * std::pow(1.0 + t, 2.0));
    const GrowthFit fit = fit_growth_exponent(series);
    CHECK(fit.exponent == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(fit.prefactor == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(fit.residual < 1e-12);
    CHECK(fit.t_window[0] == 0.0);
    CHECK(fit.t_window[1] == 64.0);
}

TEST_CASE("growth fit input validation") {
    std::vector<std::pair<double, double>> short_series = {
        {0.0, 1.0}, {1.0, 2.0}, {2.0, 3.0}};
    CHECK_THROWS_AS(fit_growth_exponent(short_series), data_error);

    std::vector<std::pair<double, double>> narrow;
    for (int i = 0; i < 10; ++i) narrow.emplace_back(1.0 + 0.1 * i, 1.0 + i);
    CHECK_THROWS_AS(fit_growth_exponent(narrow), data_error);  // no decade span

    std::vector<std::pair<double, double>> negative;
    for (double t : {0.0, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0})
        negative.emplace_back(t, t < 30.0 ? 1.0 : -1.0);
    CHECK_THROWS_AS(fit_growth_exponent(negative), data_error);
}

TEST_CASE("detect_spreading on freely evolved bump") {
    auto g = make_grid(-30.0, 30.0, 4096);
    const WaveFunction f0 = build_state({BumpState{0.0, 1.0}, true}, g);
    const WaveFunction ft = evolve_free_exact(f0, 0.01, 1.0);
    CHECK(detect_spreading(f0, ft, 1.0, 1.0, 1e-12));
    CHECK_FALSE(detect_spreading(f0, f0, 1.0, 1.0, 1e-12));
    // A state with genuine tails violates the precondition.
    const WaveFunction gauss = build_state({GaussianState{0.0, 0.0, 1.0}, true}, g);
    CHECK_THROWS_AS(detect_spreading(gauss, ft, 1.0, 1.0, 1e-12), config_error);
}
