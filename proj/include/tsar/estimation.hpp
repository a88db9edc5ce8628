#ifndef TSAR_ESTIMATION_HPP
#define TSAR_ESTIMATION_HPP

#include "tsar/processes.hpp"
#include "tsar/series.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace tsar {

/// Box-constrained nonlinear least-squares settings for the moment system.
struct SolverConfig {
    int max_iterations = 200;
    double tolerance = 1e-12;      // convergence threshold on residual norm
    double feasibility_tol = 1e-6; // larger best residual means "no root"
    double beta_lo = 0.01, beta_hi = 0.99;
    double lambda_lo = 1e-6, lambda_hi = 1e3;
    int multi_start = 4; // starts per axis of the (beta, lambda) grid

    void validate() const;
};

struct SolverInfo {
    int iterations = 0;
    double residual_norm = 0.0;
    int starts_tried = 0;
};

struct FitDiagnostics {
    double m1 = 0.0; // sample mean of the residual innovations
    double m2 = 0.0; // sample second moment of the residual innovations
    double model_m1 = 0.0;
    double model_m2 = 0.0;
    // relative gap of the estimating equation beta lambda^(beta-1) =
    // mean(eps)/(1-rho) against the fitted parameters (TAR cross-check)
    double estimating_equation_gap = 0.0;
};

struct FiveNumber {
    double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

struct BootstrapSummary {
    std::size_t replicates = 0;
    std::size_t failures = 0;
    FiveNumber rho, beta, lambda;
};

struct FitReport {
    ModelKind model;
    double rho_hat = 0.0;
    double beta_hat = 0.0;
    double lambda_hat = 0.0;
    bool nonstationary = false; // |rho_hat| >= 1
    SolverInfo solver;
    FitDiagnostics diagnostics;
    std::optional<BootstrapSummary> bootstrap;
};

/// Conditional least-squares estimate of rho: the lag-1 regression
/// sum (X_i - Xbar)(X_{i+1} - Xbar) / sum (X_i - Xbar)^2 with the
/// full-series mean. Throws on a (near-)constant series.
double cls_rho(const Series& x);

/// Solves the TAR moment system for (beta, lambda) given the sample mean m1
/// and second moment m2 of the innovation sample and the CLS rho:
///   beta lambda^(beta-1)          = m1 / (1 - rho)
///   beta (1-beta) lambda^(beta-2) = (m2 - m1^2) / (1 - rho^2).
std::pair<double, double> tar_moment_system(double m1, double m2, double rho,
                                            const SolverConfig& solver = {},
                                            SolverInfo* info = nullptr);

/// Solves the innovation-model system for (beta, lambda) from the first two
/// sample moments of the innovations themselves:
///   beta lambda^(beta-1) = m1,  beta (1-beta) lambda^(beta-2) = m2 - m1^2.
std::pair<double, double> arts_moment_system(double m1, double m2,
                                             const SolverConfig& solver = {},
                                             SolverInfo* info = nullptr);

/// Full TAR(1) pipeline: CLS rho, innovation sample eps_i = X_{i+1} - rho X_i,
/// then the moment system on the innovation moments.
FitReport estimate_tar(const Series& x, const SolverConfig& solver = {});

/// Innovation-model pipeline: CLS rho, then (beta, lambda) from
/// m1 = beta lambda^(beta-1), m2 - m1^2 = beta (1-beta) lambda^(beta-2).
FitReport estimate_arts(const Series& x, const SolverConfig& solver = {});

struct TailFit {
    double beta_hat = 0.0;
    double intercept = 0.0; // equals log(1-rho^beta) - log Gamma(1-beta) under the model
    double r_squared = 0.0;
    std::size_t exceedances = 0;
    double threshold = 0.0;
};

/// Stable-case (lambda = 0) tail-index regression: OLS of the log empirical
/// tail on -log x over the exceedances above the threshold; the slope
/// estimates beta. Needs at least 30 exceedances.
TailFit tail_index_fit(const Series& errors, double threshold);

struct BootstrapResult {
    // per successful replicate, ordered by replicate index
    std::vector<double> rho_hat, beta_hat, lambda_hat;
    std::size_t requested = 0;
    std::size_t failures = 0;
    FiveNumber rho_summary, beta_summary, lambda_summary;
};

/// Simulate-and-refit harness: reps independent paths of length n at the
/// given parameters, each fitted with the matching estimator. Failed fits
/// are dropped and counted; more than 5% failures aborts. Deterministic in
/// seed; replicates run in parallel with index-ordered collection.
BootstrapResult bootstrap(const ModelParams& model, std::size_t n, std::size_t reps,
                          std::uint64_t seed, const SolverConfig& solver = {},
                          const InversionConfig& cfg = {});

FiveNumber five_number_summary(std::vector<double> values);

} // namespace tsar

#endif
