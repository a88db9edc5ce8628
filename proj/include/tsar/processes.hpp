#ifndef TSAR_PROCESSES_HPP
#define TSAR_PROCESSES_HPP

#include "tsar/distribution.hpp"
#include "tsar/innovation.hpp"
#include "tsar/lt_inversion.hpp"
#include "tsar/series.hpp"

#include <cstdint>
#include <memory>
#include <optional>

namespace tsar {

enum class ModelKind {
    tar_marginal,  // AR(1) with tempered stable stationary marginals
    ts_innovation, // AR(1) with i.i.d. tempered stable innovations
};

const char* model_kind_name(ModelKind kind);
ModelKind model_kind_from_name(const std::string& name);

struct ModelParams {
    ModelKind kind;
    double rho;
    TSParams ts;

    void validate() const;
};

/// Simulator with the quantile tables built once per parameter set, so that
/// repeated paths (bootstrap replicates) do not pay table construction per
/// path. Immutable after construction; safe to share across threads.
class ProcessSimulator {
public:
    ProcessSimulator(ModelParams params, InversionConfig cfg = {});

    /// One path of length n, deterministic in (params, n, seed, cfg).
    Series simulate(std::size_t n, std::uint64_t seed) const;

    const ModelParams& params() const { return params_; }

private:
    ModelParams params_;
    InversionConfig cfg_;
    std::shared_ptr<const LTSampler> innovation_sampler_;
    std::shared_ptr<const LTSampler> marginal_sampler_; // TAR initial state only
};

/// TAR(1): X_0 from the stationary tempered stable marginal, then
/// X_i = rho X_{i-1} + eps_i with innovations drawn from the derived
/// innovation transform.
Series simulate_tar(const ModelParams& p, std::size_t n, std::uint64_t seed,
                    const InversionConfig& cfg = {});

/// AR(1) with tempered stable innovations: X_0 = eps_0, then
/// X_i = rho X_{i-1} + eps_i; identical to the moving-average form
/// sum_i rho^i eps_{n-i} evaluated on the same draws.
Series simulate_arts(const ModelParams& p, std::size_t n, std::uint64_t seed,
                     const InversionConfig& cfg = {});

/// Lag-r autocorrelation of either stationary model: rho^r.
double theoretical_acf(double rho, std::size_t lag);

/// Transform of X_n for the innovation model, the product form
/// exp((n+1) lambda^beta - sum_{i=0..n} (lambda + rho^i s)^beta).
double arts_laplace(const ModelParams& p, std::size_t n, double s);

/// q-th moment of X_n in the stable case (lambda = 0):
/// Gamma(1-q/beta)/Gamma(1-q) * (sum_{i=0..n} rho^(i beta))^(q/beta).
double arts_moment_q(double rho, double beta, std::size_t n, double q);

struct DispersionIndex {
    double value;
    bool under_dispersed; // value < 1
};

/// Index of dispersion (1-beta)/(lambda (1+rho)) of the stationary
/// innovation-model marginal; lambda = 0 throws.
DispersionIndex index_of_dispersion(const ModelParams& p);

} // namespace tsar

#endif
