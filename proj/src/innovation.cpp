#include "tsar/innovation.hpp"

#include "tsar/common.hpp"
#include "tsar/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tsar {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void InnovationParams::validate() const {
    ts.validate();
    if (!(rho > 0.0) || !(rho < 1.0))
        throw ValidationError("rho must lie in (0,1) for the innovation law, got " +
                              std::to_string(rho));
}

double error_laplace(const InnovationParams& p, double s) {
    p.validate();
    if (!(s >= 0.0)) throw ValidationError("error_laplace: s must be >= 0");
    const double lam = p.ts.lambda, beta = p.ts.beta;
    return std::exp(std::pow(p.rho * s + lam, beta) - std::pow(s + lam, beta));
}

std::complex<double> error_laplace(const InnovationParams& p, std::complex<double> s) {
    p.validate();
    const double lam = p.ts.lambda, beta = p.ts.beta;
    return std::exp(std::pow(p.rho * s + lam, beta) - std::pow(s + lam, beta));
}

LTEvaluator error_lt_evaluator(const InnovationParams& p) {
    p.validate();
    LTEvaluator lt;
    lt.label = "tar_error(rho=" + std::to_string(p.rho) + ",beta=" +
               std::to_string(p.ts.beta) + ",lambda=" + std::to_string(p.ts.lambda) + ")";
    lt.eval = [p](std::complex<double> s) { return error_laplace(p, s); };
    return lt;
}

namespace {

// Truncation point for integrands with log-envelope -w*x + growth(w) where
// growth(w) = K w^beta, K >= 0: smallest w past the envelope peak with
// envelope below log_cut. Doubling search; returns cap when the envelope
// never decays that far below the cap (caller then fails loudly).
double envelope_cutoff(double x, double K, double beta, double log_cut, double cap) {
    double w = 1.0 / x;
    auto env = [&](double v) { return -v * x + K * std::pow(v, beta); };
    // move past the peak first
    while (w < cap && env(2.0 * w) > env(w)) w *= 2.0;
    while (w < cap && env(w) > log_cut) w *= 2.0;
    return std::min(w, cap);
}

double check_envelope_peak(double x, double K, double beta, const char* what) {
    // peak of -wx + K w^beta sits at w* = (K beta / x)^(1/(1-beta))
    if (K <= 0.0) return 0.0;
    const double wstar = std::pow(K * beta / x, 1.0 / (1.0 - beta));
    const double peak = -wstar * x + K * std::pow(wstar, beta);
    if (peak > 250.0) {
        std::ostringstream msg;
        msg << what << ": oscillatory cancellation beyond double precision at x=" << x
            << " (envelope exponent " << peak << "); the branch-cut representation "
            << "is unusable this close to the origin for these parameters";
        throw NumericError(msg.str());
    }
    return peak;
}

} // namespace

double error_density(const InnovationParams& p, double x, const InversionConfig& cfg) {
    p.validate();
    cfg.validate();
    if (!(x > 0.0)) throw ValidationError("error_density: x must be positive");
    const double lam = p.ts.lambda, beta = p.ts.beta, rho = p.rho;
    if (lam == 0.0)
        throw ValidationError("error_density: lambda must be positive; "
                              "use error_density_stable for lambda = 0");

    const double cpb = std::cos(kPi * beta);
    const double spb = std::sin(kPi * beta);
    const double gap = lam / rho - lam; // distance between the branch points

    // outer cut, w in (0, inf): exponent a(w) = (rho w)^beta - (w + gap)^beta < 0
    auto outer = [&](double w) {
        const double a = std::pow(rho * w, beta) - std::pow(w + gap, beta);
        return std::exp(-lam * x / rho - w * x + a * cpb) * std::sin(-a * spb);
    };
    // inner cut, w in (0, gap): both powers real apart from w^beta
    auto inner = [&](double w) {
        const double b = std::pow(lam * (1.0 - rho) - rho * w, beta);
        const double wb = std::pow(w, beta);
        return std::exp(-lam * x - w * x + b - wb * cpb) * std::sin(wb * spb);
    };

    const double K = cpb < 0.0 ? -cpb : 0.0; // growth factor ~ (1-rho^b) |cos|
    check_envelope_peak(x, K * (1.0 - std::pow(rho, beta)), beta, "error_density");

    const double log_cut = std::log(cfg.abs_tol) - std::log(100.0) + lam * x / rho;
    const double w_max = envelope_cutoff(x, K * (1.0 - std::pow(rho, beta)), beta,
                                         log_cut, cfg.truncation_bound);

    const double knee = 1.0 / x;
    const double qtol = 0.01 * cfg.abs_tol;
    QuadResult i_outer;
    if (knee < w_max) {
        auto head = integrate_gk15(outer, 0.0, knee, qtol, cfg.rel_tol);
        auto tail = integrate_gk15(outer, knee, w_max, qtol, cfg.rel_tol);
        i_outer.value = head.value + tail.value;
    } else {
        i_outer = integrate_gk15(outer, 0.0, w_max, qtol, cfg.rel_tol);
    }

    QuadResult i_inner;
    if (knee < gap) {
        auto head = integrate_gk15(inner, 0.0, knee, qtol, cfg.rel_tol);
        auto tail = integrate_gk15(inner, knee, gap, qtol, cfg.rel_tol);
        i_inner.value = head.value + tail.value;
    } else {
        i_inner = integrate_gk15(inner, 0.0, gap, qtol, cfg.rel_tol);
    }

    const double g = (i_outer.value + i_inner.value) / kPi;
    return g < 0.0 && g > -100.0 * cfg.abs_tol ? 0.0 : g;
}

double error_density_stable(double rho, double beta, double x,
                            const InversionConfig& cfg, StableIntegrandSign sign) {
    InnovationParams{rho, {beta, 0.0}}.validate();
    cfg.validate();
    if (!(x > 0.0)) throw ValidationError("error_density_stable: x must be positive");

    const double c = 1.0 - std::pow(rho, beta);
    const double cpb = std::cos(kPi * beta);
    const double spb = std::sin(kPi * beta);
    const double esign = sign == StableIntegrandSign::decaying_exponent ? -1.0 : 1.0;

    auto f = [&](double w) {
        const double wb = std::pow(w, beta);
        return std::exp(-w * x + esign * wb * c * cpb) * std::sin(wb * c * spb);
    };

    const double K = (esign * cpb < 0.0 ? 0.0 : c * std::abs(cpb));
    check_envelope_peak(x, K, beta, "error_density_stable");
    const double log_cut = std::log(cfg.abs_tol) - std::log(100.0);
    const double w_max = envelope_cutoff(x, K, beta, log_cut, cfg.truncation_bound);

    const double knee = std::min(1.0 / x, w_max);
    const double qtol = 0.01 * cfg.abs_tol;
    auto head = integrate_gk15(f, 0.0, knee, qtol, cfg.rel_tol);
    QuadResult tail;
    if (knee < w_max) tail = integrate_gk15(f, knee, w_max, qtol, cfg.rel_tol);

    const double g = (head.value + tail.value) / kPi;
    return g < 0.0 && g > -100.0 * cfg.abs_tol ? 0.0 : g;
}

double error_fractional_moment(const InnovationParams& p, double q,
                               const InversionConfig& cfg) {
    p.validate();
    if (!(q > 0.0) || !(q < 1.0))
        throw ValidationError("error_fractional_moment: q must lie in (0,1)");
    if (q >= p.ts.beta)
        throw ValidationError("error_fractional_moment: moment diverges for q >= beta (q=" +
                              std::to_string(q) + ", beta=" + std::to_string(p.ts.beta) + ")");
    const double beta = p.ts.beta, rho = p.rho, lam = p.ts.lambda;

    if (lam == 0.0)
        return std::tgamma(1.0 - q / beta) / std::tgamma(1.0 - q) *
               std::pow(1.0 - std::pow(rho, beta), q / beta);

    // -d/ds of the transform, times s^(-q); the derivative carries a factor
    // beta on both power terms
    auto integrand = [&](double s) {
        const double phi = std::exp(std::pow(rho * s + lam, beta) - std::pow(s + lam, beta));
        const double deriv = beta * std::pow(s + lam, beta - 1.0) -
                             rho * beta * std::pow(rho * s + lam, beta - 1.0);
        return phi * deriv * std::pow(s, -q);
    };

    // remove the s^(-q) endpoint singularity on [0, s0] with s = u^(1/(1-q))
    const double s0 = std::max(1.0, 2.0 * lam);
    const double expo = 1.0 / (1.0 - q);
    auto head_sub = [&](double u) {
        if (u <= 0.0) return 0.0;
        const double s = std::pow(u, expo);
        const double phi = std::exp(std::pow(rho * s + lam, beta) - std::pow(s + lam, beta));
        const double deriv = beta * std::pow(s + lam, beta - 1.0) -
                             rho * beta * std::pow(rho * s + lam, beta - 1.0);
        return phi * deriv * expo; // s^(-q) ds = expo du
    };

    const double qtol = 1e-11;
    auto head = integrate_gk15(head_sub, 0.0, std::pow(s0, 1.0 - q), qtol, 1e-10, 24);
    auto tail = integrate_gk15_upto_decay(integrand, s0, s0, qtol,
                                          cfg.truncation_bound * 1e4, qtol, 1e-10);
    return (head.value + tail.value) / std::tgamma(1.0 - q);
}

ErrorMoments error_moments(const InnovationParams& p) {
    p.validate();
    if (p.ts.lambda == 0.0)
        throw ValidationError("error_moments: moments are undefined for lambda = 0");
    const auto marginal = ts_moments(p.ts);
    const double mean = marginal.mean * (1.0 - p.rho);
    const double var = marginal.variance * (1.0 - p.rho * p.rho);
    return {mean, mean * mean + var, var};
}

} // namespace tsar
