#include "tsar/estimation.hpp"

#include "tsar/common.hpp"
#include "tsar/parallel.hpp"
#include "tsar/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tsar {

void SolverConfig::validate() const {
    if (max_iterations < 1) throw ValidationError("max_iterations must be >= 1");
    if (!(tolerance > 0.0)) throw ValidationError("solver tolerance must be positive");
    if (!(beta_lo > 0.0 && beta_lo < beta_hi && beta_hi < 1.0))
        throw ValidationError("beta box must satisfy 0 < lo < hi < 1");
    if (!(lambda_lo >= 0.0 && lambda_lo < lambda_hi))
        throw ValidationError("lambda box must satisfy 0 <= lo < hi");
    if (multi_start < 1) throw ValidationError("multi_start must be >= 1");
}

double cls_rho(const Series& x) {
    x.validate();
    const std::size_t n = x.size();
    if (n < 3) throw ValidationError("cls_rho: need at least 3 observations");
    const double xbar = mean(x.values);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double a = x.values[i] - xbar;
        num += a * (x.values[i + 1] - xbar);
        den += a * a;
    }
    if (den <= 1e-12 * static_cast<double>(n) * std::max(1.0, xbar * xbar))
        throw ValidationError("cls_rho: degenerate (constant) series");
    return num / den;
}

namespace {

// Relative residuals of the marginal-moment system at (beta, lambda):
// r1 = beta lambda^(beta-1)/M - 1, r2 = beta(1-beta) lambda^(beta-2)/V - 1.
struct MomentSystem {
    double M; // target mean
    double V; // target variance

    void residuals(double beta, double lambda, double r[2]) const {
        r[0] = beta * std::pow(lambda, beta - 1.0) / M - 1.0;
        r[1] = beta * (1.0 - beta) * std::pow(lambda, beta - 2.0) / V - 1.0;
    }
};

struct LMResult {
    double beta = 0.0, lambda = 0.0;
    double residual_norm = 1e300;
    int iterations = 0;
};

double norm2(const double r[2]) { return std::sqrt(r[0] * r[0] + r[1] * r[1]); }

// Levenberg-style damped Gauss-Newton with box projection and a forward
// difference Jacobian. The system is tiny (2x2), so everything is explicit.
LMResult levenberg_solve(const MomentSystem& sys, double beta0, double lambda0,
                         const SolverConfig& cfg) {
    double b = std::clamp(beta0, cfg.beta_lo, cfg.beta_hi);
    double l = std::clamp(lambda0, std::max(cfg.lambda_lo, 1e-12), cfg.lambda_hi);
    double r[2];
    sys.residuals(b, l, r);
    double rn = norm2(r);
    double mu = 1e-3;
    LMResult best{b, l, rn, 0};

    for (int it = 0; it < cfg.max_iterations; ++it) {
        if (rn < cfg.tolerance) break;
        const double hb = 1e-7 * std::max(1.0, std::abs(b));
        const double hl = 1e-7 * std::max(1.0, std::abs(l));
        double rb[2], rl[2];
        sys.residuals(std::min(b + hb, cfg.beta_hi), l, rb);
        sys.residuals(b, std::min(l + hl, cfg.lambda_hi), rl);
        const double sb = std::min(b + hb, cfg.beta_hi) - b;
        const double sl = std::min(l + hl, cfg.lambda_hi) - l;
        if (sb <= 0.0 || sl <= 0.0) break;
        const double J[2][2] = {{(rb[0] - r[0]) / sb, (rl[0] - r[0]) / sl},
                                {(rb[1] - r[1]) / sb, (rl[1] - r[1]) / sl}};

        // (J^T J + mu diag(J^T J)) step = -J^T r
        const double a11 = J[0][0] * J[0][0] + J[1][0] * J[1][0];
        const double a12 = J[0][0] * J[0][1] + J[1][0] * J[1][1];
        const double a22 = J[0][1] * J[0][1] + J[1][1] * J[1][1];
        const double g1 = J[0][0] * r[0] + J[1][0] * r[1];
        const double g2 = J[0][1] * r[0] + J[1][1] * r[1];

        bool stepped = false;
        for (int tries = 0; tries < 12 && !stepped; ++tries) {
            const double m11 = a11 * (1.0 + mu), m22 = a22 * (1.0 + mu);
            const double det = m11 * m22 - a12 * a12;
            if (std::abs(det) < 1e-300) { mu *= 10.0; continue; }
            const double db = (-g1 * m22 + g2 * a12) / det;
            const double dl = (-g2 * m11 + g1 * a12) / det;
            const double nb = std::clamp(b + db, cfg.beta_lo, cfg.beta_hi);
            const double nl = std::clamp(l + dl, std::max(cfg.lambda_lo, 1e-12), cfg.lambda_hi);
            double rt[2];
            sys.residuals(nb, nl, rt);
            const double rtn = norm2(rt);
            if (rtn < rn) {
                b = nb; l = nl; rn = rtn; r[0] = rt[0]; r[1] = rt[1];
                mu = std::max(mu * 0.3, 1e-12);
                stepped = true;
            } else {
                mu *= 10.0;
            }
        }
        best = {b, l, rn, it + 1};
        if (!stepped) break; // stuck (boundary or flat); multi-start covers it
    }
    best = {b, l, rn, best.iterations};
    return best;
}

std::pair<double, double> solve_moment_system(double M, double V,
                                              const SolverConfig& cfg,
                                              SolverInfo* info) {
    cfg.validate();
    if (!(M > 0.0))
        throw EstimationError("moment system: innovation mean must be positive, got " +
                              std::to_string(M));
    if (!(V > 0.0))
        throw EstimationError("moment system: impossible variance (m2 <= m1^2)");

    const MomentSystem sys{M, V};
    LMResult best;
    int starts = 0;

    auto consider = [&](double b0, double l0) {
        auto r = levenberg_solve(sys, b0, l0, cfg);
        ++starts;
        if (r.residual_norm < best.residual_norm) best = r;
    };

    // analytic seed: the residual ratio fixes lambda = M (1-beta) / V
    for (double b0 : {0.1, 0.3, 0.5, 0.7, 0.9})
        consider(b0, std::clamp(M * (1.0 - b0) / V, cfg.lambda_lo, cfg.lambda_hi));

    const int k = cfg.multi_start;
    for (int i = 0; i < k && best.residual_norm >= cfg.tolerance; ++i) {
        const double b0 = cfg.beta_lo + (i + 0.5) * (cfg.beta_hi - cfg.beta_lo) / k;
        for (int j = 0; j < k; ++j) {
            const double llo = std::log(std::max(cfg.lambda_lo, 1e-9));
            const double lhi = std::log(cfg.lambda_hi);
            const double l0 = std::exp(llo + (j + 0.5) * (lhi - llo) / k);
            consider(b0, l0);
        }
    }

    if (info) {
        info->iterations = best.iterations;
        info->residual_norm = best.residual_norm;
        info->starts_tried = starts;
    }
    if (best.residual_norm > cfg.feasibility_tol) {
        std::ostringstream msg;
        msg << "moment system has no root inside the box (best residual "
            << best.residual_norm << " at beta=" << best.beta
            << ", lambda=" << best.lambda << ")";
        throw EstimationError(msg.str());
    }
    return {best.beta, best.lambda};
}

} // namespace

std::pair<double, double> tar_moment_system(double m1, double m2, double rho,
                                            const SolverConfig& solver,
                                            SolverInfo* info) {
    if (!(rho > 0.0 && rho < 1.0))
        throw EstimationError("tar_moment_system: rho must lie in (0,1), got " +
                              std::to_string(rho));
    if (!(m2 > m1 * m1))
        throw EstimationError("tar_moment_system: impossible variance (m2 <= m1^2)");
    const double M = m1 / (1.0 - rho);
    const double V = (m2 - m1 * m1) / (1.0 - rho * rho);
    return solve_moment_system(M, V, solver, info);
}

std::pair<double, double> arts_moment_system(double m1, double m2,
                                             const SolverConfig& solver,
                                             SolverInfo* info) {
    if (!(m2 > m1 * m1))
        throw EstimationError("arts_moment_system: impossible variance (m2 <= m1^2)");
    return solve_moment_system(m1, m2 - m1 * m1, solver, info);
}

namespace {

FitReport estimate_common(const Series& x, const SolverConfig& solver, ModelKind kind) {
    x.validate();
    if (x.size() < 50)
        throw ValidationError("estimation needs at least 50 observations, got " +
                              std::to_string(x.size()));
    FitReport report;
    report.model = kind;
    report.rho_hat = cls_rho(x);
    report.nonstationary = !(std::abs(report.rho_hat) < 1.0);
    if (report.nonstationary)
        throw EstimationError("CLS rho estimate " + std::to_string(report.rho_hat) +
                              " is outside (-1,1); series looks nonstationary");
    if (kind == ModelKind::tar_marginal && !(report.rho_hat > 0.0))
        throw EstimationError("CLS rho estimate " + std::to_string(report.rho_hat) +
                              " is not positive; the TAR innovation law needs rho > 0");

    const std::size_t n = x.size();
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double e = x.values[i + 1] - report.rho_hat * x.values[i];
        m1 += e;
        m2 += e * e;
    }
    m1 /= static_cast<double>(n - 1);
    m2 /= static_cast<double>(n - 1);
    report.diagnostics.m1 = m1;
    report.diagnostics.m2 = m2;

    double beta, lambda;
    if (kind == ModelKind::tar_marginal) {
        std::tie(beta, lambda) = tar_moment_system(m1, m2, report.rho_hat, solver,
                                                   &report.solver);
    } else {
        std::tie(beta, lambda) = arts_moment_system(m1, m2, solver, &report.solver);
    }
    report.beta_hat = beta;
    report.lambda_hat = lambda;

    const double fitted_mean = beta * std::pow(lambda, beta - 1.0);
    const double fitted_var = beta * (1.0 - beta) * std::pow(lambda, beta - 2.0);
    if (kind == ModelKind::tar_marginal) {
        report.diagnostics.model_m1 = fitted_mean * (1.0 - report.rho_hat);
        report.diagnostics.model_m2 =
            report.diagnostics.model_m1 * report.diagnostics.model_m1 +
            fitted_var * (1.0 - report.rho_hat * report.rho_hat);
        // estimating equation: beta lambda^(beta-1) = mean(eps)/(1 - rho)
        const double rhs = m1 / (1.0 - report.rho_hat);
        report.diagnostics.estimating_equation_gap = std::abs(fitted_mean - rhs) / rhs;
    } else {
        report.diagnostics.model_m1 = fitted_mean;
        report.diagnostics.model_m2 = fitted_mean * fitted_mean + fitted_var;
        report.diagnostics.estimating_equation_gap =
            std::abs(fitted_mean - m1) / std::abs(m1);
    }
    return report;
}

} // namespace

FitReport estimate_tar(const Series& x, const SolverConfig& solver) {
    return estimate_common(x, solver, ModelKind::tar_marginal);
}

FitReport estimate_arts(const Series& x, const SolverConfig& solver) {
    return estimate_common(x, solver, ModelKind::ts_innovation);
}

TailFit tail_index_fit(const Series& errors, double threshold) {
    errors.validate();
    if (!(threshold > 0.0))
        throw ValidationError("tail_index_fit: threshold must be positive");
    std::vector<double> sorted(errors.values);
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();

    std::vector<double> xs, ys; // X = -log x, Y = log empirical tail
    for (std::size_t i = 0; i < n; ++i) {
        if (!(sorted[i] > threshold)) continue;
        const std::size_t greater = n - 1 - i; // strictly above sorted[i]
        if (greater == 0) continue;            // log of zero tail: drop the maximum
        xs.push_back(-std::log(sorted[i]));
        ys.push_back(std::log(static_cast<double>(greater) / static_cast<double>(n)));
    }
    if (xs.size() < 30)
        throw EstimationError("tail_index_fit: only " + std::to_string(xs.size()) +
                              " exceedances above threshold " + std::to_string(threshold) +
                              "; need at least 30");

    const double xm = mean(xs), ym = mean(ys);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - xm) * (ys[i] - ym);
        sxx += (xs[i] - xm) * (xs[i] - xm);
        syy += (ys[i] - ym) * (ys[i] - ym);
    }
    if (sxx <= 0.0)
        throw EstimationError("tail_index_fit: degenerate exceedance set");
    TailFit fit;
    fit.beta_hat = sxy / sxx;
    fit.intercept = ym - fit.beta_hat * xm;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    fit.exceedances = xs.size() + 1; // the dropped maximum still exceeds
    fit.threshold = threshold;
    return fit;
}

FiveNumber five_number_summary(std::vector<double> v) {
    if (v.empty()) throw ValidationError("five_number_summary: empty input");
    std::sort(v.begin(), v.end());
    auto quantile = [&](double p) {
        const double pos = p * (static_cast<double>(v.size()) - 1.0);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, v.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        return v[lo] * (1.0 - frac) + v[hi] * frac;
    };
    return {v.front(), quantile(0.25), quantile(0.5), quantile(0.75), v.back()};
}

BootstrapResult bootstrap(const ModelParams& model, std::size_t n, std::size_t reps,
                          std::uint64_t seed, const SolverConfig& solver,
                          const InversionConfig& cfg) {
    model.validate();
    solver.validate();
    if (reps < 2) throw ValidationError("bootstrap: reps must be >= 2");
    if (n < 50) throw ValidationError("bootstrap: series length must be >= 50");

    const ProcessSimulator simulator(model, cfg);
    const IndexedRng rng(seed);

    struct Slot {
        bool ok = false;
        double rho = 0.0, beta = 0.0, lambda = 0.0;
    };
    std::vector<Slot> slots(reps);

    parallel_for(reps, [&](std::size_t r) {
        try {
            const Series path = simulator.simulate(n, rng.child_seed(r));
            const FitReport fit = model.kind == ModelKind::tar_marginal
                                      ? estimate_tar(path, solver)
                                      : estimate_arts(path, solver);
            slots[r] = {true, fit.rho_hat, fit.beta_hat, fit.lambda_hat};
        } catch (const Error&) {
            slots[r].ok = false;
        }
    });

    BootstrapResult out;
    out.requested = reps;
    for (const Slot& s : slots) {
        if (!s.ok) {
            ++out.failures;
            continue;
        }
        out.rho_hat.push_back(s.rho);
        out.beta_hat.push_back(s.beta);
        out.lambda_hat.push_back(s.lambda);
    }
    if (out.failures * 20 > reps)
        throw EstimationError("bootstrap: " + std::to_string(out.failures) + " of " +
                              std::to_string(reps) + " replicates failed (> 5%)");
    out.rho_summary = five_number_summary(out.rho_hat);
    out.beta_summary = five_number_summary(out.beta_hat);
    out.lambda_summary = five_number_summary(out.lambda_hat);
    return out;
}

} // namespace tsar
