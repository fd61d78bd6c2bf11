#include <cmath>
#include <vector>

#include "doctest.h"
#include "loclab/errors.hpp"
#include "loclab/states.hpp"

using namespace loclab;

namespace {

double moment(const WaveFunction& f, int k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < f.samples.size(); ++i)
        acc += std::pow(f.grid->position(i), k) * std::norm(f.samples[i]);
    return acc * f.grid->dx;
}

}  // namespace

TEST_CASE("gaussian state moments") {
    auto grid = make_grid(-30.0, 30.0, 2048);
    const WaveFunction f = build_state({GaussianState{1.5, 2.0, 1.0}, true}, grid);
    CHECK(l2_norm(f) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(moment(f, 1) == doctest::Approx(1.5).epsilon(1e-10));
    // <x^2> - <x>^2 = sigma^2 for the |psi|^2-width convention.
    CHECK(moment(f, 2) - 1.5 * 1.5 == doctest::Approx(1.0).epsilon(1e-10));
    // <x^4> central moment of a Gaussian is 3 sigma^4.
    const WaveFunction g = build_state({GaussianState{0.0, 0.0, 1.0}, true}, grid);
    CHECK(moment(g, 4) == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("bump state has exact compact support") {
    auto grid = make_grid(-30.0, 30.0, 4096);
    const WaveFunction f = build_state({BumpState{0.0, 1.0}, true}, grid);
    for (std::size_t i = 0; i < f.samples.size(); ++i)
        if (std::abs(grid->position(i)) >= 1.0) CHECK(std::abs(f.samples[i]) == 0.0);
    CHECK(l2_norm(f) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bump momentum tail is much steeper than any jump-induced tail") {
    // C-infinity compact support gives ~exp(-c sqrt(k)) momentum decay; over
    // [20, 200] its average log-log slope is far below the -1 of a jump.
    auto grid = make_grid(-30.0, 30.0, 4096);
    const WaveFunction fk = to_momentum(build_state({BumpState{0.0, 1.0}, true}, grid));
    auto rms_near = [&](double lo, double hi) {
        double sum2 = 0.0;
        int count = 0;
        for (std::size_t j = 0; j < fk.samples.size(); ++j) {
            const double k = std::abs(fk.grid->k_values[j]);
            if (k >= lo && k < hi) {
                sum2 += std::norm(fk.samples[j]);
                ++count;
            }
        }
        REQUIRE(count > 0);
        return std::sqrt(sum2 / count);
    };
    const double a_low = rms_near(18.0, 22.0);
    const double a_high = rms_near(180.0, 220.0);
    const double slope = std::log(a_high / a_low) / std::log(10.0);  // per decade of k
    CHECK(slope < -2.5);
}

TEST_CASE("truncated gaussian momentum tail is first order") {
    auto grid = make_grid(-40.0, 40.0, 8192);
    const WaveFunction fk =
        to_momentum(build_state({TruncatedGaussianState{0.0, 1.0, 2.0}, true}, grid));
    // A jump discontinuity forces |f(k)| ~ 1/k: fit the envelope exponent
    // over a decade of k using RMS bins.
    std::vector<double> lk, la;
    const double k_lo = 20.0, k_hi = 200.0;
    const int bins = 12;
    for (int b = 0; b < bins; ++b) {
        const double lo = k_lo * std::pow(k_hi / k_lo, static_cast<double>(b) / bins);
        const double hi = k_lo * std::pow(k_hi / k_lo, static_cast<double>(b + 1) / bins);
        double sum2 = 0.0;
        int count = 0;
        for (std::size_t j = 0; j < fk.samples.size(); ++j) {
            const double k = std::abs(fk.grid->k_values[j]);
            if (k >= lo && k < hi) {
                sum2 += std::norm(fk.samples[j]);
                ++count;
            }
        }
        REQUIRE(count > 0);
        lk.push_back(std::log(std::sqrt(lo * hi)));
        la.push_back(0.5 * std::log(sum2 / count));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lk.size(); ++i) {
        sx += lk[i];
        sy += la[i];
        sxx += lk[i] * lk[i];
        sxy += lk[i] * la[i];
    }
    const double n = static_cast<double>(lk.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope == doctest::Approx(-1.0).epsilon(0.3));
}

TEST_CASE("hermite gaussians are orthonormal") {
    auto grid = make_grid(-30.0, 30.0, 2048);
    std::vector<WaveFunction> fs;
    for (int n = 0; n < 4; ++n)
        fs.push_back(build_state({HermiteGaussianState{n, 1.0}, true}, grid));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            const double expected = (a == b) ? 1.0 : 0.0;
            CHECK(std::abs(inner_product(fs[a], fs[b]) - expected) < 1e-8);
        }
}

TEST_CASE("power tail state falls off with the requested order") {
    auto grid = make_grid(-30.0, 30.0, 2048);
    const WaveFunction f = build_state({PowerTailState{3.0}, false}, grid);
    // Ratio of samples near x = 20 and x = 10 follows (1 + x^2)^(-p/2).
    const auto idx = [&](double x) {
        return static_cast<std::size_t>((x - grid->x_min) / grid->dx + 0.5);
    };
    const double x1 = grid->position(idx(10.0)), x2 = grid->position(idx(20.0));
    const double expected = std::pow((1.0 + x2 * x2) / (1.0 + x1 * x1), -1.5);
    CHECK(std::abs(f.samples[idx(20.0)]) / std::abs(f.samples[idx(10.0)]) ==
          doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("state validation errors") {
    auto coarse = make_grid(-30.0, 30.0, 16);  // dx = 3.75
    CHECK_THROWS_AS(build_state({GaussianState{0.0, 0.0, 1.0}, true}, coarse), config_error);

    auto grid = make_grid(-10.0, 10.0, 512);
    CHECK_THROWS_AS(build_state({GaussianState{8.0, 0.0, 1.0}, true}, grid), config_error);
    CHECK_THROWS_AS(build_state({BumpState{9.5, 1.0}, true}, grid), config_error);
    CHECK_THROWS_AS(validate_state({GaussianState{0.0, 0.0, -1.0}, true}), config_error);
    CHECK_THROWS_AS(validate_state({BumpState{0.0, 0.0}, true}), config_error);
    CHECK_THROWS_AS(validate_state({HermiteGaussianState{-1, 1.0}, true}), config_error);
    CHECK_THROWS_AS(validate_state({PowerTailState{0.5}, true}), config_error);
}

TEST_CASE("normalize flag") {
    auto grid = make_grid(-30.0, 30.0, 1024);
    const WaveFunction raw = build_state({GaussianState{0.0, 0.0, 2.0}, false}, grid);
    // The sampled analytic form is already unit-norm up to discretization.
    CHECK(l2_norm(raw) == doctest::Approx(1.0).epsilon(1e-10));
    const WaveFunction bump = build_state({BumpState{0.0, 1.0}, false}, grid);
    CHECK(l2_norm(bump) != doctest::Approx(1.0).epsilon(1e-3));
}
