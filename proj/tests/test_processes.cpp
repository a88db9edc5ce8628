#include "tsar/common.hpp"
#include "tsar/estimation.hpp"
#include "tsar/processes.hpp"
#include "tsar/stats.hpp"

#include <doctest.h>

#include <cmath>

using namespace tsar;

namespace {

const ModelParams kTar{ModelKind::tar_marginal, 0.9, {0.5, 2.0}};
const ModelParams kArts{ModelKind::ts_innovation, 0.9, {0.5, 2.0}};

} // namespace

TEST_CASE("simulators are deterministic and strictly positive") {
    const Series a = simulate_tar(kTar, 500, 12);
    const Series b = simulate_tar(kTar, 500, 12);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.values[i] == b.values[i]);
        CHECK(a.values[i] > 0.0);
    }
    const Series c = simulate_arts(kArts, 500, 12);
    const Series d = simulate_arts(kArts, 500, 12);
    for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK(c.values[i] == d.values[i]);
        CHECK(c.values[i] > 0.0);
    }
}

TEST_CASE("model kind and parameter validation") {
    CHECK_THROWS_AS(simulate_tar(kArts, 10, 1), ValidationError);
    CHECK_THROWS_AS(simulate_arts(kTar, 10, 1), ValidationError);
    ModelParams bad = kTar;
    bad.rho = 1.2;
    CHECK_THROWS_AS(simulate_tar(bad, 10, 1), ValidationError);
    bad.rho = -0.5;
    CHECK_THROWS_AS(simulate_tar(bad, 10, 1), ValidationError);
}

TEST_CASE("arts recursion equals the moving-average form on the same draws") {
    const std::size_t n = 100;
    const Series x = simulate_arts(kArts, n, 77);
    // rebuild the innovation draws exactly as the simulator consumed them
    const LTSampler sampler(ts_lt_evaluator(kArts.ts), InversionConfig{});
    const auto eps = sampler.draw_many(77, n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        double ma = 0.0;
        double rp = 1.0;
        for (std::size_t j = 0; j <= i; ++j) { // sum rho^j eps_{i-j}
            ma += rp * eps[i - j];
            rp *= kArts.rho;
        }
        CHECK(std::abs(ma - x.values[i]) < 1e-12 * std::max(1.0, std::abs(ma)));
    }
}

TEST_CASE("tar stationary mean") {
    const std::size_t n = 100000;
    const Series x = simulate_tar(kTar, n, 2025);
    // marginal mean beta lambda^(beta-1); correlated-series standard error
    const double m = 0.5 * std::pow(2.0, -0.5);
    const double var = 0.25 * std::pow(2.0, -1.5);
    const double se = std::sqrt(var * (1.0 + kTar.rho) / (1.0 - kTar.rho) /
                                static_cast<double>(n));
    CHECK(std::abs(mean(x.values) - m) < 3.0 * se);
}

TEST_CASE("arts stationary mean and variance") {
    const std::size_t n = 100000;
    const Series x = simulate_arts(kArts, n, 31337);
    const double m = 0.5 * std::pow(2.0, -0.5) / (1.0 - kArts.rho);
    const double v = 0.25 * std::pow(2.0, -1.5) / (1.0 - kArts.rho * kArts.rho);
    const double se_mean =
        std::sqrt(v * (1.0 + kArts.rho) / (1.0 - kArts.rho) / static_cast<double>(n));
    // discard the burn-in toward stationarity
    std::vector<double> tail(x.values.begin() + 100, x.values.end());
    CHECK(std::abs(mean(tail) - m) < 3.0 * se_mean);
    CHECK(variance(tail) == doctest::Approx(v).epsilon(0.15));
}

TEST_CASE("sample ACF of the innovation model decays as rho^r") {
    const std::size_t n = 100000;
    ModelParams p = kArts;
    p.rho = 0.8;
    const Series x = simulate_arts(p, n, 555);
    const auto r = acf(x, 5);
    for (std::size_t lag = 1; lag <= 5; ++lag)
        CHECK(std::abs(r[lag] - std::pow(0.8, static_cast<double>(lag))) < 0.02);
}

TEST_CASE("stationary TAR marginal passes a one-sample K-S test") {
    const std::size_t n = 100000;
    const Series x = simulate_tar(kTar, n, 99);
    // thin to every 50th observation to weaken dependence
    std::vector<double> thinned;
    for (std::size_t i = 0; i < n; i += 50) thinned.push_back(x.values[i]);
    std::sort(thinned.begin(), thinned.end());

    const LTEvaluator lt = ts_lt_evaluator(kTar.ts);
    double d = 0.0;
    const double m = static_cast<double>(thinned.size());
    for (std::size_t i = 0; i < thinned.size(); ++i) {
        const double F = invert_cdf(lt, thinned[i]);
        d = std::max(d, std::abs(F - (static_cast<double>(i) + 1.0) / m));
        d = std::max(d, std::abs(F - static_cast<double>(i) / m));
    }
    const double p_value = kolmogorov_sf(std::sqrt(m) * d);
    CHECK(p_value > 0.01);
}

TEST_CASE("theoretical_acf") {
    CHECK(theoretical_acf(0.9, 0) == 1.0);
    CHECK(theoretical_acf(0.9, 2) == doctest::Approx(0.81).epsilon(1e-15));
    CHECK_THROWS_AS(theoretical_acf(1.0, 1), ValidationError);
}

TEST_CASE("arts_laplace: product form") {
    CHECK(arts_laplace(kArts, 7, 0.0) == 1.0);
    CHECK(arts_laplace(kArts, 0, 1.3) ==
          doctest::Approx(ts_laplace(kArts.ts, 1.3)).epsilon(1e-14));

    // against the empirical transform of simulated X_n
    const std::size_t paths = 30000, idx = 5;
    const ProcessSimulator sim(kArts);
    std::vector<double> xn(paths);
    for (std::size_t r = 0; r < paths; ++r)
        xn[r] = sim.simulate(idx + 1, 1000 + r).values[idx];
    for (double s : {0.5, 1.0, 2.0}) {
        double acc = 0.0, acc2 = 0.0;
        for (double v : xn) {
            const double e = std::exp(-s * v);
            acc += e;
            acc2 += e * e;
        }
        const double emp = acc / static_cast<double>(paths);
        const double sd = std::sqrt((acc2 / paths - emp * emp) / paths);
        CHECK(std::abs(emp - arts_laplace(kArts, idx, s)) < 3.0 * sd + 1e-9);
    }
}

TEST_CASE("arts_moment_q closed form and limits") {
    // n = 0: the plain stable fractional moment
    CHECK(arts_moment_q(0.25, 0.5, 0, 0.25) ==
          doctest::Approx(std::tgamma(0.5) / std::tgamma(0.75)).epsilon(1e-12));
    CHECK(arts_moment_q(0.5, 0.5, 3, 1e-8) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_THROWS_AS(arts_moment_q(0.5, 0.5, 3, 0.5), ValidationError);
}

TEST_CASE("arts_moment_q against overlapping moving-average monte carlo") {
    const double rho = 0.25, beta = 0.5, q = 0.25;
    const std::size_t idx = 2, n = 1000000;
    const LTSampler sampler(ts_lt_evaluator({beta, 0.0}), InversionConfig{});
    const auto eps = sampler.draw_many(424242, n + idx, 0);
    double acc = 0.0;
    for (std::size_t i = idx; i < n + idx; ++i) {
        const double x2 = eps[i] + rho * eps[i - 1] + rho * rho * eps[i - 2];
        acc += std::pow(x2, q);
    }
    const double mc = acc / static_cast<double>(n);
    const double exact = arts_moment_q(rho, beta, idx, q);
    CHECK(std::abs(mc - exact) / exact < 0.02);
}

TEST_CASE("index_of_dispersion") {
    const auto id = index_of_dispersion(kArts);
    CHECK(id.value == doctest::Approx(0.5 / (2.0 * 1.9)).epsilon(1e-12));
    CHECK(id.under_dispersed);

    // lambda > 1 implies under-dispersion for every valid (beta, rho)
    for (double beta : {0.1, 0.5, 0.9})
        for (double rho : {0.1, 0.5, 0.9}) {
            const ModelParams p{ModelKind::ts_innovation, rho, {beta, 1.5}};
            CHECK(index_of_dispersion(p).value < 1.0);
        }

    ModelParams stable = kArts;
    stable.ts.lambda = 0.0;
    CHECK_THROWS_AS(index_of_dispersion(stable), ValidationError);

    // sample variance-to-mean of a stationary stretch
    const Series x = simulate_arts(kArts, 100000, 808);
    std::vector<double> tail(x.values.begin() + 100, x.values.end());
    CHECK(variance(tail) / mean(tail) == doctest::Approx(id.value).epsilon(0.1));
}
