#include "tsar/common.hpp"
#include "tsar/quadrature.hpp"

#include <doctest.h>

#include <cmath>

using namespace tsar;

TEST_CASE("gk15 on smooth integrands") {
    auto r = integrate_gk15([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    r = integrate_gk15([](double x) { return std::sin(x); }, 0.0, M_PI);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("gk15 adapts to oscillation and endpoint steepness") {
    // 40 oscillations
    auto r = integrate_gk15([](double x) { return std::sin(40.0 * x); }, 0.0, M_PI,
                            1e-12, 1e-12);
    CHECK(r.value == doctest::Approx((1.0 - std::cos(40.0 * M_PI)) / 40.0).epsilon(1e-10));

    // integrable sqrt singularity derivative blows up at 0
    r = integrate_gk15([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-11, 1e-11, 30);
    CHECK(r.value == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("decaying-tail helper covers [a, inf)") {
    auto r = integrate_gk15_upto_decay([](double x) { return std::exp(-x); }, 0.0, 1.0,
                                       1e-13, 1e6);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-11));

    // stretched exponential, slower decay
    auto s = integrate_gk15_upto_decay(
        [](double x) { return std::exp(-std::sqrt(x)); }, 0.0, 1.0, 1e-13, 1e9);
    CHECK(s.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("gk15 reports non-convergence") {
    // a kink cannot reach 1e-30 with the subdivision budget capped at 4
    auto kink = [](double x) { return std::abs(x - 1.0 / 3.0); };
    CHECK_THROWS_AS(integrate_gk15(kink, 0.0, 1.0, 1e-30, 1e-30, 2), NumericError);
}
