#ifndef TSAR_STATS_HPP
#define TSAR_STATS_HPP

#include "tsar/series.hpp"

#include <string>
#include <vector>

namespace tsar {

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::string method;
    double significance_level = 0.05;
    bool reject = false; // p_value < significance_level

    TestResult() = default;
    TestResult(double stat, double p, std::string m, double alpha = 0.05)
        : statistic(stat), p_value(p), method(std::move(m)),
          significance_level(alpha), reject(p < alpha) {}
};

/// Sample autocorrelations for lags 0..max_lag with the biased covariance
/// normalization; acf[0] = 1.
std::vector<double> acf(const Series& x, std::size_t max_lag);

/// Partial autocorrelations via the Durbin-Levinson recursion on the sample
/// ACF; pacf[0] = 1 by convention and pacf[1] = acf[1].
std::vector<double> pacf(const Series& x, std::size_t max_lag);

/// Augmented Dickey-Fuller unit-root test, constant-only regression
///   dy_t = alpha + gamma y_{t-1} + sum phi_j dy_{t-j} + e_t.
/// lag_order < 0 selects the lag automatically: start from
/// floor(12 (n/100)^(1/4)) and trim while the longest lag is insignificant
/// (|t| < 1.645). The p-value interpolates the MacKinnon response surface.
TestResult adf_test(const Series& x, int lag_order = -1);

/// Two-sample Kolmogorov-Smirnov: D = sup |F_a - F_b|, p-value from the
/// asymptotic Kolmogorov distribution at sqrt(n_a n_b / (n_a + n_b)) D.
TestResult ks_two_sample(const Series& a, const Series& b);

/// Two-sided Mann-Whitney U with midrank ties. Exact enumeration of the
/// U null distribution when both samples have <= 20 observations, otherwise
/// the normal approximation with tie-corrected variance and continuity
/// correction. The statistic reported is U of the first sample.
TestResult mann_whitney_u(const Series& a, const Series& b);

/// Survival function of the Kolmogorov distribution,
/// Q(x) = 2 sum_{k>=1} (-1)^(k-1) exp(-2 k^2 x^2).
double kolmogorov_sf(double x);

/// Standard normal CDF.
double normal_cdf(double x);

} // namespace tsar

#endif
