#include "tsar/cli_commands.hpp"
#include "tsar/common.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <string>

namespace {

// exit codes: 0 success, 2 validation, 3 numeric failure, 4 I/O
constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

struct GridSpec {
    double lo = 0.01, hi = 10.0;
    std::size_t count = 200;
};

GridSpec parse_grid(const std::string& spec) {
    GridSpec g;
    char rest = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%zu%c", &g.lo, &g.hi, &g.count, &rest) != 3)
        throw tsar::ValidationError("bad --grid '" + spec + "', expected lo:hi:count");
    return g;
}

void add_inversion_flags(CLI::App* cmd, tsar::InversionConfig& cfg) {
    cmd->add_option("--abs-tol", cfg.abs_tol, "inversion absolute tolerance");
    cmd->add_option("--rel-tol", cfg.rel_tol, "inversion relative tolerance");
    cmd->add_option("--series-terms", cfg.series_terms, "Bromwich series terms");
    cmd->add_option("--abscissa-shift", cfg.abscissa_shift, "Bromwich contour parameter");
    cmd->add_option("--truncation-bound", cfg.truncation_bound, "branch integral cutoff");
    cmd->add_option("--quantile-grid", cfg.quantile_grid_size, "initial quantile grid size");
}

void add_solver_flags(CLI::App* cmd, tsar::SolverConfig& cfg) {
    cmd->add_option("--solver-tol", cfg.tolerance, "moment solver residual tolerance");
    cmd->add_option("--solver-max-iter", cfg.max_iterations, "moment solver iteration cap");
    cmd->add_option("--beta-lo", cfg.beta_lo, "beta box lower bound");
    cmd->add_option("--beta-hi", cfg.beta_hi, "beta box upper bound");
    cmd->add_option("--lambda-lo", cfg.lambda_lo, "lambda box lower bound");
    cmd->add_option("--lambda-hi", cfg.lambda_hi, "lambda box upper bound");
    cmd->add_option("--multi-start", cfg.multi_start, "starts per axis of the solver grid");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tempered stable autoregressive models: simulation, estimation, diagnostics"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file ([subcommand] sections)");

    std::string model_name = "tar";

    tsar::cli::SimulateOptions sim;
    auto* c_sim = app.add_subcommand("simulate", "simulate a model path to CSV");
    c_sim->add_option("--model", model_name, "tar | arts")->capture_default_str();
    c_sim->add_option("--rho", sim.rho, "autoregression coefficient")->required();
    c_sim->add_option("--beta", sim.beta, "stability index in (0,1)")->required();
    c_sim->add_option("--lambda", sim.lambda, "tempering rate >= 0")->required();
    c_sim->add_option("--n", sim.n, "path length")->required();
    c_sim->add_option("--seed", sim.seed, "RNG seed")->capture_default_str();
    c_sim->add_option("--out", sim.out_csv, "output CSV path")->required();
    c_sim->add_option("--plot", sim.plot_svg, "optional SVG sample-path plot");
    add_inversion_flags(c_sim, sim.inversion);

    tsar::cli::EstimateOptions est;
    auto* c_est = app.add_subcommand("estimate", "fit a model to a CSV series");
    c_est->add_option("--model", model_name, "tar | arts")->capture_default_str();
    c_est->add_option("--input", est.input_csv, "input CSV (value column)")->required();
    c_est->add_option("--out", est.out_json, "FitReport JSON path");
    add_solver_flags(c_est, est.solver);

    tsar::cli::DensityOptions den;
    std::string grid_spec = "0.01:10:200";
    auto* c_den = app.add_subcommand("density", "innovation density on a grid");
    c_den->add_option("--rho", den.rho)->required();
    c_den->add_option("--beta", den.beta)->required();
    c_den->add_option("--lambda", den.lambda, "0 selects the stable-case density")->required();
    c_den->add_option("--grid", grid_spec, "x grid as lo:hi:count")->capture_default_str();
    c_den->add_option("--out", den.out_csv, "output CSV path")->required();
    c_den->add_option("--plot", den.plot_svg, "optional SVG curve");
    add_inversion_flags(c_den, den.inversion);

    tsar::cli::BootstrapOptions boot;
    auto* c_boot = app.add_subcommand("bootstrap", "simulate-and-refit estimate spreads");
    c_boot->add_option("--model", model_name, "tar | arts")->capture_default_str();
    c_boot->add_option("--rho", boot.rho)->required();
    c_boot->add_option("--beta", boot.beta)->required();
    c_boot->add_option("--lambda", boot.lambda)->required();
    c_boot->add_option("--n", boot.n, "length of each replicate path")->required();
    c_boot->add_option("--reps", boot.reps, "number of replicates")->required();
    c_boot->add_option("--seed", boot.seed)->capture_default_str();
    c_boot->add_option("--out", boot.out_csv, "per-replicate estimates CSV")->required();
    c_boot->add_option("--summary", boot.summary_json, "summary quantiles JSON");
    c_boot->add_option("--plot", boot.plot_svg, "optional SVG box plot");
    add_solver_flags(c_boot, boot.solver);
    add_inversion_flags(c_boot, boot.inversion);

    tsar::cli::PipelineOptions pipe;
    auto* c_pipe = app.add_subcommand("fit-pipeline",
                                      "ADF, ACF/PACF, fit, innovation goodness-of-fit");
    c_pipe->add_option("--model", model_name, "tar | arts")->capture_default_str();
    c_pipe->add_option("--input", pipe.input_csv, "input CSV")->required();
    c_pipe->add_option("--out", pipe.out_json, "pipeline report JSON")->required();
    c_pipe->add_option("--acf-out", pipe.acf_csv, "ACF CSV path");
    c_pipe->add_option("--pacf-out", pipe.pacf_csv, "PACF CSV path");
    c_pipe->add_option("--max-lag", pipe.max_lag)->capture_default_str();
    c_pipe->add_option("--seed", pipe.seed, "seed for the synthetic comparison sample")
        ->capture_default_str();
    add_solver_flags(c_pipe, pipe.solver);
    add_inversion_flags(c_pipe, pipe.inversion);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (c_sim->parsed()) {
            sim.model = tsar::model_kind_from_name(model_name);
            tsar::cli::cmd_simulate(sim);
        } else if (c_est->parsed()) {
            est.model = tsar::model_kind_from_name(model_name);
            const auto report = tsar::cli::cmd_estimate(est);
            std::printf("rho_hat=%.6g beta_hat=%.6g lambda_hat=%.6g\n", report.rho_hat,
                        report.beta_hat, report.lambda_hat);
        } else if (c_den->parsed()) {
            const auto g = parse_grid(grid_spec);
            den.grid_lo = g.lo;
            den.grid_hi = g.hi;
            den.grid_n = g.count;
            tsar::cli::cmd_density(den);
        } else if (c_boot->parsed()) {
            boot.model = tsar::model_kind_from_name(model_name);
            const auto result = tsar::cli::cmd_bootstrap(boot);
            std::printf("replicates=%zu failures=%zu median_rho=%.6g\n", result.requested,
                        result.failures, result.rho_summary.median);
        } else if (c_pipe->parsed()) {
            pipe.model = tsar::model_kind_from_name(model_name);
            tsar::cli::cmd_fit_pipeline(pipe);
        }
    } catch (const tsar::ValidationError& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return kExitValidation;
    } catch (const tsar::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return kExitIo;
    } catch (const tsar::Error& e) {
        // numeric and estimation failures
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return kExitNumeric;
    }
    return kExitOk;
}
