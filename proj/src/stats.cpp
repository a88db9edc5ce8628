#include "tsar/stats.hpp"

#include "tsar/common.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace tsar {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double kolmogorov_sf(double x) {
    if (x < 1e-4) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = 2.0 * std::exp(-2.0 * k * k * x * x);
        sum += (k % 2 == 1) ? term : -term;
        if (term < 1e-14) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

std::vector<double> acf(const Series& x, std::size_t max_lag) {
    x.validate();
    const std::size_t n = x.size();
    if (max_lag >= n)
        throw ValidationError("acf: max_lag must be < series length");
    const double m = mean(x.values);
    double c0 = 0.0;
    for (double v : x.values) c0 += (v - m) * (v - m);
    c0 /= static_cast<double>(n);
    if (c0 <= 1e-14 * std::max(1.0, m * m))
        throw ValidationError("acf: degenerate (constant) series");

    std::vector<double> out(max_lag + 1);
    out[0] = 1.0;
    for (std::size_t k = 1; k <= max_lag; ++k) {
        double ck = 0.0;
        for (std::size_t i = 0; i + k < n; ++i)
            ck += (x.values[i] - m) * (x.values[i + k] - m);
        ck /= static_cast<double>(n);
        out[k] = ck / c0;
    }
    return out;
}

std::vector<double> pacf(const Series& x, std::size_t max_lag) {
    x.validate();
    if (max_lag >= x.size() / 4)
        throw ValidationError("pacf: max_lag must be < n/4");
    const auto r = acf(x, max_lag);

    // Durbin-Levinson
    std::vector<double> out(max_lag + 1, 0.0);
    out[0] = 1.0;
    if (max_lag == 0) return out;
    std::vector<double> phi(max_lag + 1, 0.0), prev(max_lag + 1, 0.0);
    phi[1] = r[1];
    out[1] = r[1];
    double v = 1.0 - r[1] * r[1];
    for (std::size_t k = 2; k <= max_lag; ++k) {
        prev = phi;
        double num = r[k];
        for (std::size_t j = 1; j < k; ++j) num -= prev[j] * r[k - j];
        const double a = v > 1e-300 ? num / v : 0.0;
        phi[k] = a;
        for (std::size_t j = 1; j < k; ++j) phi[j] = prev[j] - a * prev[k - j];
        v *= (1.0 - a * a);
        out[k] = a;
    }
    return out;
}

namespace {

// Gaussian elimination with partial pivoting; A is row-major k x k.
std::vector<double> solve_linear(std::vector<double> A, std::vector<double> b,
                                 std::size_t k) {
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        for (std::size_t rw = col + 1; rw < k; ++rw)
            if (std::abs(A[rw * k + col]) > std::abs(A[piv * k + col])) piv = rw;
        if (std::abs(A[piv * k + col]) < 1e-300)
            throw NumericError("adf_test: singular regression matrix");
        if (piv != col) {
            for (std::size_t c = 0; c < k; ++c) std::swap(A[piv * k + c], A[col * k + c]);
            std::swap(b[piv], b[col]);
        }
        for (std::size_t rw = col + 1; rw < k; ++rw) {
            const double f = A[rw * k + col] / A[col * k + col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < k; ++c) A[rw * k + c] -= f * A[col * k + c];
            b[rw] -= f * b[col];
        }
    }
    std::vector<double> sol(k);
    for (std::size_t i = k; i-- > 0;) {
        double acc = b[i];
        for (std::size_t c = i + 1; c < k; ++c) acc -= A[i * k + c] * sol[c];
        sol[i] = acc / A[i * k + i];
    }
    return sol;
}

struct AdfRegression {
    double tstat;     // t of the unit-root coefficient
    double t_last_lag; // t of the highest-order lag coefficient (0 when p=0)
    std::size_t nobs;
};

AdfRegression adf_regression(const std::vector<double>& y, int p) {
    const std::size_t n = y.size();
    std::vector<double> dy(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) dy[i] = y[i + 1] - y[i];

    // rows t = p .. n-2 of dy; columns: y_{t-1} lag level, p diff lags, const
    const std::size_t rows = n - 1 - static_cast<std::size_t>(p);
    const std::size_t cols = static_cast<std::size_t>(p) + 2;
    if (rows <= cols + 2)
        throw ValidationError("adf_test: series too short for the requested lag order");

    std::vector<double> X(rows * cols), Y(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t t = r + static_cast<std::size_t>(p); // index into dy
        Y[r] = dy[t];
        X[r * cols + 0] = y[t];
        for (int j = 1; j <= p; ++j)
            X[r * cols + static_cast<std::size_t>(j)] = dy[t - static_cast<std::size_t>(j)];
        X[r * cols + cols - 1] = 1.0;
    }

    // normal equations
    std::vector<double> XtX(cols * cols, 0.0), Xty(cols, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t i = 0; i < cols; ++i) {
            Xty[i] += X[r * cols + i] * Y[r];
            for (std::size_t j = i; j < cols; ++j)
                XtX[i * cols + j] += X[r * cols + i] * X[r * cols + j];
        }
    }
    for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t j = 0; j < i; ++j) XtX[i * cols + j] = XtX[j * cols + i];

    const auto beta = solve_linear(XtX, Xty, cols);
    double rss = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        double fit = 0.0;
        for (std::size_t c = 0; c < cols; ++c) fit += X[r * cols + c] * beta[c];
        rss += (Y[r] - fit) * (Y[r] - fit);
    }
    const double sigma2 = rss / static_cast<double>(rows - cols);

    auto coef_se = [&](std::size_t idx) {
        std::vector<double> e(cols, 0.0);
        e[idx] = 1.0;
        const auto z = solve_linear(XtX, e, cols); // (X'X)^{-1} e_idx
        return std::sqrt(sigma2 * z[idx]);
    };

    AdfRegression out;
    out.tstat = beta[0] / coef_se(0);
    out.t_last_lag = p > 0 ? beta[static_cast<std::size_t>(p)] /
                                 coef_se(static_cast<std::size_t>(p))
                           : 0.0;
    out.nobs = rows;
    return out;
}

// MacKinnon (1994) response-surface p-value, constant case.
double mackinnon_p(double t) {
    if (t > 2.74) return 1.0;
    if (t < -18.83) return 0.0;
    double z;
    if (t <= -1.61)
        z = 2.1659 + 1.4412 * t + 0.038269 * t * t;
    else
        z = 1.7339 + 0.93202 * t - 0.12745 * t * t - 0.010368 * t * t * t;
    return normal_cdf(z);
}

} // namespace

TestResult adf_test(const Series& x, int lag_order) {
    x.validate();
    const std::size_t n = x.size();
    if (n < 30) throw ValidationError("adf_test: need at least 30 observations");

    int p;
    if (lag_order >= 0) {
        p = lag_order;
    } else {
        p = static_cast<int>(std::floor(12.0 * std::pow(n / 100.0, 0.25)));
        const int max_feasible = static_cast<int>(n / 2) - 4;
        p = std::min(p, max_feasible);
        // trim insignificant long lags (|t| < 1.645)
        while (p > 0) {
            const auto reg = adf_regression(x.values, p);
            if (std::abs(reg.t_last_lag) >= 1.645) break;
            --p;
        }
    }

    const auto reg = adf_regression(x.values, p);
    const double pv = mackinnon_p(reg.tstat);
    std::ostringstream method;
    method << "adf(constant, lags=" << p << ")";
    return TestResult(reg.tstat, pv, method.str());
}

TestResult ks_two_sample(const Series& a, const Series& b) {
    a.validate();
    b.validate();
    std::vector<double> sa(a.values), sb(b.values);
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    const double na = static_cast<double>(sa.size());
    const double nb = static_cast<double>(sb.size());

    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < sa.size() && j < sb.size()) {
        const double v = std::min(sa[i], sb[j]);
        while (i < sa.size() && sa[i] <= v) ++i;
        while (j < sb.size() && sb[j] <= v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na -
                                 static_cast<double>(j) / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    return TestResult(d, kolmogorov_sf(ne * d), "ks_two_sample(asymptotic)");
}

namespace {

// Counts of arrangements by U value under the no-ties null: coefficients of
// the Gaussian binomial prod_{i=1..n} (1 - q^(m+i)) / (1 - q^i). Counts stay
// below 2^53 for n, m <= 20, so doubles hold them exactly.
std::vector<double> mwu_null_distribution(std::size_t n, std::size_t m) {
    const std::size_t umax = n * m;
    std::vector<double> p(umax + 1, 0.0);
    p[0] = 1.0;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t u = umax + 1; u-- > 0;)
            if (u >= m + i) p[u] -= p[u - (m + i)];
        for (std::size_t u = i; u <= umax; ++u) p[u] += p[u - i];
    }
    return p;
}

} // namespace

TestResult mann_whitney_u(const Series& a, const Series& b) {
    a.validate();
    b.validate();
    const std::size_t na = a.size(), nb = b.size();
    const std::size_t n = na + nb;

    std::vector<std::pair<double, int>> pooled;
    pooled.reserve(n);
    for (double v : a.values) pooled.emplace_back(v, 0);
    for (double v : b.values) pooled.emplace_back(v, 1);
    std::stable_sort(pooled.begin(), pooled.end(),
                     [](const auto& p, const auto& q) { return p.first < q.first; });

    double rank_sum_a = 0.0;
    double tie_sum = 0.0; // sum of t^3 - t over tie groups
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && pooled[j + 1].first == pooled[i].first) ++j;
        const double midrank = 0.5 * static_cast<double>(i + j) + 1.0;
        const double t = static_cast<double>(j - i + 1);
        tie_sum += t * t * t - t;
        for (std::size_t k = i; k <= j; ++k)
            if (pooled[k].second == 0) rank_sum_a += midrank;
        i = j + 1;
    }
    const double u_a = rank_sum_a - 0.5 * static_cast<double>(na) * (na + 1.0);

    double p;
    if (na <= 20 && nb <= 20) {
        // exact enumeration of the no-ties null, evaluated at the midrank U
        const auto counts = mwu_null_distribution(na, nb);
        const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
        double below = 0.0, above = 0.0;
        for (std::size_t u = 0; u < counts.size(); ++u) {
            if (static_cast<double>(u) <= u_a) below += counts[u];
            if (static_cast<double>(u) >= u_a) above += counts[u];
        }
        p = std::min(1.0, 2.0 * std::min(below, above) / total);
    } else {
        const double mu = 0.5 * static_cast<double>(na) * static_cast<double>(nb);
        const double nn = static_cast<double>(n);
        const double var = static_cast<double>(na) * static_cast<double>(nb) / 12.0 *
                           ((nn + 1.0) - tie_sum / (nn * (nn - 1.0)));
        if (var <= 0.0) {
            p = 1.0; // all observations tied
        } else {
            const double cc = u_a > mu ? -0.5 : (u_a < mu ? 0.5 : 0.0);
            const double z = (u_a - mu + cc) / std::sqrt(var);
            p = 2.0 * (1.0 - normal_cdf(std::abs(z)));
            p = std::min(1.0, p);
        }
    }
    const char* kind = (na <= 20 && nb <= 20) ? "exact" : "normal";
    return TestResult(u_a, p, std::string("mann_whitney_u(") + kind + ")");
}

} // namespace tsar
