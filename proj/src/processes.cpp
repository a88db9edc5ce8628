#include "tsar/processes.hpp"

#include "tsar/common.hpp"

#include <cmath>

namespace tsar {

const char* model_kind_name(ModelKind kind) {
    return kind == ModelKind::tar_marginal ? "tar" : "arts";
}

ModelKind model_kind_from_name(const std::string& name) {
    if (name == "tar") return ModelKind::tar_marginal;
    if (name == "arts") return ModelKind::ts_innovation;
    throw ValidationError("unknown model '" + name + "' (expected 'tar' or 'arts')");
}

void ModelParams::validate() const {
    ts.validate();
    if (kind == ModelKind::tar_marginal) {
        // the derived innovation law needs rho in (0,1)
        InnovationParams{rho, ts}.validate();
    } else {
        if (!(std::abs(rho) < 1.0))
            throw ValidationError("|rho| must be < 1, got " + std::to_string(rho));
        if (!(rho > 0.0))
            throw ValidationError("negative/zero rho simulation is not supported "
                                  "for the innovation model");
    }
}

ProcessSimulator::ProcessSimulator(ModelParams params, InversionConfig cfg)
    : params_(params), cfg_(cfg) {
    params_.validate();
    cfg_.validate();
    if (params_.kind == ModelKind::tar_marginal) {
        innovation_sampler_ = std::make_shared<const LTSampler>(
            error_lt_evaluator(InnovationParams{params_.rho, params_.ts}), cfg_);
        marginal_sampler_ = std::make_shared<const LTSampler>(
            ts_lt_evaluator(params_.ts), cfg_);
    } else {
        innovation_sampler_ = std::make_shared<const LTSampler>(
            ts_lt_evaluator(params_.ts), cfg_);
    }
}

Series ProcessSimulator::simulate(std::size_t n, std::uint64_t seed) const {
    if (n < 1) throw ValidationError("simulate: n must be >= 1");
    Series out;
    out.values.resize(n);
    if (params_.kind == ModelKind::tar_marginal) {
        // index 0 feeds the stationary initial state, indices 1..n-1 the
        // innovations, all from one per-index uniform stream
        double x = marginal_sampler_->draw(seed, 0);
        out.values[0] = x;
        if (n > 1) {
            const auto eps = innovation_sampler_->draw_many(seed, n - 1, 1);
            for (std::size_t i = 1; i < n; ++i) {
                x = params_.rho * x + eps[i - 1];
                out.values[i] = x;
            }
        }
    } else {
        const auto eps = innovation_sampler_->draw_many(seed, n, 0);
        double x = eps[0]; // X_0 = eps_0
        out.values[0] = x;
        for (std::size_t i = 1; i < n; ++i) {
            x = params_.rho * x + eps[i];
            out.values[i] = x;
        }
    }
    return out;
}

Series simulate_tar(const ModelParams& p, std::size_t n, std::uint64_t seed,
                    const InversionConfig& cfg) {
    if (p.kind != ModelKind::tar_marginal)
        throw ValidationError("simulate_tar requires the tar model kind");
    return ProcessSimulator(p, cfg).simulate(n, seed);
}

Series simulate_arts(const ModelParams& p, std::size_t n, std::uint64_t seed,
                     const InversionConfig& cfg) {
    if (p.kind != ModelKind::ts_innovation)
        throw ValidationError("simulate_arts requires the arts model kind");
    return ProcessSimulator(p, cfg).simulate(n, seed);
}

double theoretical_acf(double rho, std::size_t lag) {
    if (!(std::abs(rho) < 1.0))
        throw ValidationError("theoretical_acf: |rho| must be < 1");
    return std::pow(rho, static_cast<double>(lag));
}

double arts_laplace(const ModelParams& p, std::size_t n, double s) {
    p.validate();
    if (p.kind != ModelKind::ts_innovation)
        throw ValidationError("arts_laplace requires the arts model kind");
    if (!(s >= 0.0)) throw ValidationError("arts_laplace: s must be >= 0");
    if (s == 0.0) return 1.0;
    const double beta = p.ts.beta, lam = p.ts.lambda;
    const double lb = lam == 0.0 ? 0.0 : std::pow(lam, beta);
    double expo = static_cast<double>(n + 1) * lb;
    double rpow = 1.0;
    for (std::size_t i = 0; i <= n; ++i) {
        expo -= std::pow(lam + rpow * s, beta);
        rpow *= p.rho;
    }
    return std::exp(expo);
}

double arts_moment_q(double rho, double beta, std::size_t n, double q) {
    TSParams{beta, 0.0}.validate();
    if (!(rho > 0.0) || !(rho < 1.0))
        throw ValidationError("arts_moment_q: rho must lie in (0,1)");
    if (!(q > 0.0) || q >= beta)
        throw ValidationError("arts_moment_q: moment diverges for q >= beta");
    double sum = 0.0, rpow = 1.0;
    const double rb = std::pow(rho, beta);
    for (std::size_t i = 0; i <= n; ++i) {
        sum += rpow;
        rpow *= rb;
    }
    return std::tgamma(1.0 - q / beta) / std::tgamma(1.0 - q) * std::pow(sum, q / beta);
}

DispersionIndex index_of_dispersion(const ModelParams& p) {
    p.validate();
    if (p.kind != ModelKind::ts_innovation)
        throw ValidationError("index_of_dispersion is defined for the arts model");
    if (p.ts.lambda == 0.0)
        throw ValidationError("index_of_dispersion: undefined for lambda = 0");
    const double v = (1.0 - p.ts.beta) / (p.ts.lambda * (1.0 + p.rho));
    return {v, v < 1.0};
}

} // namespace tsar
