#include "tsar/lt_inversion.hpp"

#include "tsar/common.hpp"
#include "tsar/parallel.hpp"
#include "tsar/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tsar {

void InversionConfig::validate() const {
    if (!(abscissa_shift > 0)) throw ValidationError("abscissa_shift must be positive");
    if (series_terms < 10) throw ValidationError("series_terms must be >= 10");
    if (!(truncation_bound > 0)) throw ValidationError("truncation_bound must be positive");
    if (!(abs_tol > 0) || !(rel_tol > 0)) throw ValidationError("abs_tol and rel_tol must be positive");
    if (quantile_grid_size < 64) throw ValidationError("quantile_grid_size must be >= 64");
}

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTableEdge = 1e-4; // table spans [1e-4, 1 - 1e-4]

struct InversionValue {
    double value;
    double residual; // difference between the last two Euler averages
};

// Abate-Whitt EULER summation of the Bromwich integral. With as_cdf the
// transform of the CDF, lt(s)/s, is inverted instead.
InversionValue euler_invert(const LTEvaluator& lt, double x,
                            const InversionConfig& cfg, bool as_cdf) {
    const double A = cfg.abscissa_shift;
    const int euler_terms = std::clamp(cfg.series_terms / 3, 8, 15);
    const int base_terms = cfg.series_terms - euler_terms;

    const double scale = std::exp(0.5 * A) / x;

    auto term = [&](int k) {
        const std::complex<double> s(0.5 * A / x, k * kPi / x);
        std::complex<double> v = lt.eval(s);
        if (as_cdf) v /= s;
        return v.real();
    };

    double sum = 0.5 * scale * term(0);
    std::vector<double> partials(static_cast<std::size_t>(base_terms + euler_terms));
    double sign = -1.0;
    for (int k = 1; k <= base_terms + euler_terms; ++k) {
        sum += sign * scale * term(k);
        sign = -sign;
        partials[static_cast<std::size_t>(k - 1)] = sum;
    }

    // binomial average of the last euler_terms+1 partial sums; the shorter
    // average over euler_terms provides the convergence residual
    double avg_m = 0.0, avg_m1 = 0.0;
    {
        const int m = euler_terms;
        double binom = std::pow(2.0, -m); // C(m,0)/2^m
        for (int j = 0; j <= m; ++j) {
            avg_m += binom * partials[static_cast<std::size_t>(base_terms - 1 + j)];
            binom *= static_cast<double>(m - j) / static_cast<double>(j + 1);
        }
        const int m1 = euler_terms - 1;
        binom = std::pow(2.0, -m1);
        for (int j = 0; j <= m1; ++j) {
            avg_m1 += binom * partials[static_cast<std::size_t>(base_terms - 1 + j)];
            binom *= static_cast<double>(m1 - j) / static_cast<double>(j + 1);
        }
    }
    return {avg_m, std::abs(avg_m - avg_m1)};
}

struct ClampStats {
    long clamped = 0;
    long evaluations = 0;
};

double invert_pdf_impl(const LTEvaluator& lt, double x, const InversionConfig& cfg,
                       ClampStats* stats) {
    if (!(x > 0)) throw ValidationError("invert_pdf: x must be positive");
    auto r = euler_invert(lt, x, cfg, /*as_cdf=*/false);
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(r.value));
    if (!std::isfinite(r.value) || r.residual > 1e3 * tol) {
        std::ostringstream msg;
        msg << "invert_pdf(" << lt.label << ", x=" << x
            << "): Euler series did not settle, residual " << r.residual;
        throw NumericError(msg.str());
    }
    if (stats) ++stats->evaluations;
    if (r.value < 0.0) {
        if (r.value < -100.0 * cfg.abs_tol) {
            std::ostringstream msg;
            msg << "invert_pdf(" << lt.label << ", x=" << x
                << "): negative density " << r.value << " beyond clamp window";
            throw NumericError(msg.str());
        }
        if (stats) ++stats->clamped;
        return 0.0;
    }
    return r.value;
}

double invert_cdf_impl(const LTEvaluator& lt, double x, const InversionConfig& cfg) {
    if (!(x > 0)) throw ValidationError("invert_cdf: x must be positive");
    auto r = euler_invert(lt, x, cfg, /*as_cdf=*/true);
    if (!std::isfinite(r.value) || r.residual > 1e3 * cfg.abs_tol) {
        std::ostringstream msg;
        msg << "invert_cdf(" << lt.label << ", x=" << x
            << "): Euler series did not settle, residual " << r.residual;
        throw NumericError(msg.str());
    }
    return std::clamp(r.value, 0.0, 1.0);
}

} // namespace

double invert_pdf(const LTEvaluator& lt, double x, const InversionConfig& cfg) {
    cfg.validate();
    return invert_pdf_impl(lt, x, cfg, nullptr);
}

double invert_cdf(const LTEvaluator& lt, double x, const InversionConfig& cfg) {
    cfg.validate();
    return invert_cdf_impl(lt, x, cfg);
}

// ---------------------------------------------------------------------------
// QuantileTable

QuantileTable::QuantileTable(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < 2)
        throw NumericError("quantile table needs at least two nodes");
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        if (!(nodes_[i].prob > nodes_[i - 1].prob) || !(nodes_[i].x > nodes_[i - 1].x))
            throw NumericError("quantile table rows are not strictly increasing");
    }
}

namespace {

double hermite(double t, double t0, double t1, double p0, double p1,
               double d0, double d1) {
    const double h = t1 - t0;
    const double u = (t - t0) / h;
    const double u2 = u * u, u3 = u2 * u;
    return p0 * (2 * u3 - 3 * u2 + 1) + h * d0 * (u3 - 2 * u2 + u) +
           p1 * (-2 * u3 + 3 * u2) + h * d1 * (u3 - u2);
}

} // namespace

double QuantileTable::cdf(double x) const {
    if (x <= nodes_.front().x) return nodes_.front().prob;
    if (x >= nodes_.back().x) return nodes_.back().prob;
    const double t = std::log(x);
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x,
                               [](double v, const Node& n) { return v < n.x; });
    const Node& hi = *it;
    const Node& lo = *(it - 1);
    return hermite(t, lo.log_x, hi.log_x, lo.prob, hi.prob, lo.slope, hi.slope);
}

double QuantileTable::quantile(double u) const {
    if (u <= p_min()) return x_min();
    if (u >= p_max()) return x_max();
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), u,
                               [](double v, const Node& n) { return v < n.prob; });
    const Node& hi = *it;
    const Node& lo = *(it - 1);
    // invert the local cubic by bisection in t (safe for the monotone cubic)
    double ta = lo.log_x, tb = hi.log_x;
    for (int iter = 0; iter < 60; ++iter) {
        const double tm = 0.5 * (ta + tb);
        const double pm = hermite(tm, lo.log_x, hi.log_x, lo.prob, hi.prob,
                                  lo.slope, hi.slope);
        if (pm < u) ta = tm; else tb = tm;
        if (tb - ta < 1e-14 * std::max(1.0, std::abs(ta))) break;
    }
    return std::exp(0.5 * (ta + tb));
}

// ---------------------------------------------------------------------------
// Table construction

namespace {

// Expands/halves a bracket until F crosses target, then bisects. Used for the
// table edges and for draws falling outside the table range.
double solve_quantile_bracketed(const LTEvaluator& lt, const InversionConfig& cfg,
                                double target, double lo, double hi,
                                double f_lo, double f_hi) {
    const double qtol = 10.0 * cfg.abs_tol;
    while (f_lo > target) {
        hi = lo; f_hi = f_lo;
        lo *= 0.5;
        if (lo < 1e-300)
            throw NumericError("quantile(" + lt.label + "): lower bracket collapsed at p=" +
                               std::to_string(target));
        f_lo = invert_cdf_impl(lt, lo, cfg);
    }
    while (f_hi < target) {
        lo = hi; f_lo = f_hi;
        hi *= 2.0;
        if (hi > 1e300)
            throw NumericError("quantile(" + lt.label + "): upper bracket exceeded range at p=" +
                               std::to_string(target));
        f_hi = invert_cdf_impl(lt, hi, cfg);
    }
    // bisection in log space with a secant nudge
    for (int iter = 0; iter < 200; ++iter) {
        double mid = std::sqrt(lo * hi);
        if (f_hi > f_lo + 1e-15) {
            const double sec = lo + (target - f_lo) * (hi - lo) / (f_hi - f_lo);
            if (sec > lo * 1.0000001 && sec < hi * 0.9999999 && iter % 2 == 0)
                mid = sec;
        }
        const double fm = invert_cdf_impl(lt, mid, cfg);
        if (std::abs(fm - target) <= qtol) return mid;
        if (fm < target) { lo = mid; f_lo = fm; }
        else             { hi = mid; f_hi = fm; }
        if (hi - lo <= 1e-12 * hi) return 0.5 * (lo + hi);
    }
    return 0.5 * (lo + hi);
}

} // namespace

QuantileTable build_quantile_table(const LTEvaluator& lt, const InversionConfig& cfg) {
    cfg.validate();
    ClampStats stats;

    // edges of the covered probability range
    const double x_lo = solve_quantile_bracketed(lt, cfg, kTableEdge, 0.5, 1.0,
                                                 invert_cdf_impl(lt, 0.5, cfg),
                                                 invert_cdf_impl(lt, 1.0, cfg));
    const double x_hi = solve_quantile_bracketed(lt, cfg, 1.0 - kTableEdge, x_lo, 2.0 * x_lo,
                                                 invert_cdf_impl(lt, x_lo, cfg),
                                                 invert_cdf_impl(lt, 2.0 * x_lo, cfg));

    struct Raw {
        double t, p, d;
    };
    auto eval_node = [&](double t) {
        const double x = std::exp(t);
        return Raw{t, invert_cdf_impl(lt, x, cfg),
                   x * invert_pdf_impl(lt, x, cfg, &stats)};
    };

    std::vector<Raw> nodes;
    const int n0 = cfg.quantile_grid_size;
    nodes.reserve(static_cast<std::size_t>(4 * n0));
    const double t_lo = std::log(x_lo), t_hi = std::log(x_hi);
    for (int i = 0; i < n0; ++i)
        nodes.push_back(eval_node(t_lo + (t_hi - t_lo) * i / (n0 - 1.0)));

    // adaptive midpoint refinement against the Hermite interpolant
    const double mid_tol = 10.0 * cfg.abs_tol;
    const int max_rounds = 9;
    for (int round = 0; round < max_rounds; ++round) {
        std::vector<Raw> inserted;
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
            const Raw& a = nodes[i];
            const Raw& b = nodes[i + 1];
            if (b.p - a.p < 4.0 * cfg.abs_tol) continue; // flat panel, nothing to gain
            const double tm = 0.5 * (a.t + b.t);
            const double interp = hermite(tm, a.t, b.t, a.p, b.p, a.d, b.d);
            Raw m = eval_node(tm);
            if (std::abs(interp - m.p) > mid_tol) inserted.push_back(m);
        }
        if (inserted.empty()) break;
        nodes.insert(nodes.end(), inserted.begin(), inserted.end());
        std::sort(nodes.begin(), nodes.end(),
                  [](const Raw& a, const Raw& b) { return a.t < b.t; });
    }

    if (stats.evaluations > 200 && stats.clamped * 100 > stats.evaluations)
        throw NumericError("build_quantile_table(" + lt.label +
                           "): clamped density fraction above 1% (" +
                           std::to_string(stats.clamped) + "/" +
                           std::to_string(stats.evaluations) + ")");

    // assemble, dropping rows that do not strictly increase in p (noise floor)
    std::vector<QuantileTable::Node> rows;
    rows.reserve(nodes.size());
    for (const Raw& r : nodes) {
        if (!rows.empty() && !(r.p > rows.back().prob + 1e-12)) continue;
        rows.push_back({r.p, std::exp(r.t), r.t, std::max(0.0, r.d)});
    }
    // Fritsch-Carlson slope limiting keeps the cubic monotone
    for (std::size_t i = 0; i < rows.size(); ++i) {
        double cap = 1e308;
        if (i > 0)
            cap = std::min(cap, 3.0 * (rows[i].prob - rows[i - 1].prob) /
                                    (rows[i].log_x - rows[i - 1].log_x));
        if (i + 1 < rows.size())
            cap = std::min(cap, 3.0 * (rows[i + 1].prob - rows[i].prob) /
                                    (rows[i + 1].log_x - rows[i].log_x));
        rows[i].slope = std::min(rows[i].slope, cap);
    }
    return QuantileTable(std::move(rows));
}

// ---------------------------------------------------------------------------
// Sampling

LTSampler::LTSampler(LTEvaluator lt, InversionConfig cfg)
    : lt_(std::move(lt)), cfg_(cfg), table_(build_quantile_table(lt_, cfg_)) {}

double LTSampler::quantile(double u) const {
    if (!(u > 0.0 && u < 1.0))
        throw ValidationError("quantile: u must lie in (0,1)");
    const double qtol = 10.0 * cfg_.abs_tol;

    if (u < table_.p_min())
        return solve_quantile_bracketed(lt_, cfg_, u, 0.5 * table_.x_min(), table_.x_min(),
                                        invert_cdf_impl(lt_, 0.5 * table_.x_min(), cfg_),
                                        table_.p_min());
    if (u > table_.p_max())
        return solve_quantile_bracketed(lt_, cfg_, u, table_.x_max(), 2.0 * table_.x_max(),
                                        table_.p_max(),
                                        invert_cdf_impl(lt_, 2.0 * table_.x_max(), cfg_));

    // table interpolation is normally already within tolerance
    double x = table_.quantile(u);
    double fx = invert_cdf_impl(lt_, x, cfg_);
    if (std::abs(fx - u) <= qtol) return x;

    // secant refinement against the true CDF, bisection fallback
    double lo, hi, f_lo, f_hi;
    if (fx < u) { lo = x; f_lo = fx; hi = table_.x_max(); f_hi = table_.p_max(); }
    else        { hi = x; f_hi = fx; lo = table_.x_min(); f_lo = table_.p_min(); }
    return solve_quantile_bracketed(lt_, cfg_, u, lo, hi, f_lo, f_hi);
}

double LTSampler::draw(std::uint64_t seed, std::uint64_t index) const {
    return quantile(IndexedRng(seed).uniform(index));
}

std::vector<double> LTSampler::draw_many(std::uint64_t seed, std::size_t n,
                                         std::uint64_t index_offset) const {
    std::vector<double> out(n);
    const IndexedRng rng(seed);
    constexpr std::size_t chunk = 1024;
    const std::size_t chunks = (n + chunk - 1) / chunk;
    parallel_for(chunks, [&](std::size_t c) {
        const std::size_t begin = c * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        for (std::size_t i = begin; i < end; ++i)
            out[i] = quantile(rng.uniform(index_offset + i));
    });
    return out;
}

Series lt_sample(const LTEvaluator& lt, std::size_t n, std::uint64_t seed,
                 const InversionConfig& cfg) {
    if (n < 1) throw ValidationError("lt_sample: n must be >= 1");
    LTSampler sampler(lt, cfg);
    return Series(sampler.draw_many(seed, n));
}

} // namespace tsar
