#include "tsar/cli_commands.hpp"

#include "tsar/common.hpp"
#include "tsar/innovation.hpp"
#include "tsar/report_json.hpp"
#include "tsar/stats.hpp"
#include "tsar/svg.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace tsar::cli {

using nlohmann::json;

namespace {

void write_json_file(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write to '" + path + "' failed");
}

void write_lag_csv(const std::vector<double>& vals, const std::string& path,
                   const char* column) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "lag," << column << '\n';
    char buf[64];
    for (std::size_t k = 0; k < vals.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g", vals[k]);
        out << k << ',' << buf << '\n';
    }
    if (!out) throw IoError("write to '" + path + "' failed");
}

} // namespace

void cmd_simulate(const SimulateOptions& opt) {
    if (opt.out_csv.empty()) throw ValidationError("simulate: --out path is required");
    const ModelParams params{opt.model, opt.rho, {opt.beta, opt.lambda}};
    params.validate();
    const Series path = ProcessSimulator(params, opt.inversion).simulate(opt.n, opt.seed);
    write_series_csv(path, opt.out_csv);
    if (!opt.plot_svg.empty()) {
        std::vector<double> xs(path.size());
        for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<double>(i);
        write_svg_line_plot(opt.plot_svg, xs, path.values,
                            std::string("sample path (") + model_kind_name(opt.model) + ")");
    }
}

FitReport cmd_estimate(const EstimateOptions& opt) {
    if (opt.input_csv.empty()) throw ValidationError("estimate: --input path is required");
    const Series x = read_series_csv(opt.input_csv);
    const FitReport report = opt.model == ModelKind::tar_marginal
                                 ? estimate_tar(x, opt.solver)
                                 : estimate_arts(x, opt.solver);
    if (!opt.out_json.empty()) write_json_file(fit_report_to_json(report), opt.out_json);
    return report;
}

void cmd_density(const DensityOptions& opt) {
    if (opt.out_csv.empty()) throw ValidationError("density: --out path is required");
    if (!(opt.grid_lo > 0.0) || !(opt.grid_hi > opt.grid_lo) || opt.grid_n < 2)
        throw ValidationError("density: grid must satisfy 0 < lo < hi with count >= 2");
    // validates rho/beta/lambda up front
    InnovationParams params{opt.rho, {opt.beta, opt.lambda}};
    params.validate();

    std::vector<double> xs(opt.grid_n), gs(opt.grid_n);
    const double step = (opt.grid_hi - opt.grid_lo) / static_cast<double>(opt.grid_n - 1);
    for (std::size_t i = 0; i < opt.grid_n; ++i) {
        const double x = opt.grid_lo + step * static_cast<double>(i);
        xs[i] = x;
        gs[i] = opt.lambda == 0.0
                    ? error_density_stable(opt.rho, opt.beta, x, opt.inversion)
                    : error_density(params, x, opt.inversion);
    }

    std::ofstream out(opt.out_csv);
    if (!out) throw IoError("cannot open '" + opt.out_csv + "' for writing");
    out << "x,density\n";
    char buf[2][64];
    for (std::size_t i = 0; i < opt.grid_n; ++i) {
        std::snprintf(buf[0], sizeof buf[0], "%.17g", xs[i]);
        std::snprintf(buf[1], sizeof buf[1], "%.17g", gs[i]);
        out << buf[0] << ',' << buf[1] << '\n';
    }
    if (!out) throw IoError("write to '" + opt.out_csv + "' failed");
    if (!opt.plot_svg.empty())
        write_svg_line_plot(opt.plot_svg, xs, gs, "innovation density");
}

BootstrapResult cmd_bootstrap(const BootstrapOptions& opt) {
    if (opt.out_csv.empty()) throw ValidationError("bootstrap: --out path is required");
    const ModelParams params{opt.model, opt.rho, {opt.beta, opt.lambda}};
    const BootstrapResult result =
        bootstrap(params, opt.n, opt.reps, opt.seed, opt.solver, opt.inversion);

    std::ofstream out(opt.out_csv);
    if (!out) throw IoError("cannot open '" + opt.out_csv + "' for writing");
    out << "replicate,rho_hat,beta_hat,lambda_hat\n";
    char buf[3][64];
    for (std::size_t i = 0; i < result.rho_hat.size(); ++i) {
        std::snprintf(buf[0], sizeof buf[0], "%.17g", result.rho_hat[i]);
        std::snprintf(buf[1], sizeof buf[1], "%.17g", result.beta_hat[i]);
        std::snprintf(buf[2], sizeof buf[2], "%.17g", result.lambda_hat[i]);
        out << i << ',' << buf[0] << ',' << buf[1] << ',' << buf[2] << '\n';
    }
    if (!out) throw IoError("write to '" + opt.out_csv + "' failed");

    if (!opt.summary_json.empty()) write_json_file(bootstrap_to_json(result), opt.summary_json);
    if (!opt.plot_svg.empty())
        write_svg_box_plot(opt.plot_svg, {"rho", "beta", "lambda"},
                           {result.rho_summary, result.beta_summary, result.lambda_summary},
                           "bootstrap estimates");
    return result;
}

json cmd_fit_pipeline(const PipelineOptions& opt) {
    if (opt.input_csv.empty()) throw ValidationError("fit-pipeline: --input path is required");
    const Series x = read_series_csv(opt.input_csv);

    json report;
    report["input"] = {{"path", opt.input_csv}, {"n", x.size()}};
    json stages;
    std::string failed_stage;

    auto run_stage = [&](const char* name, auto&& fn) {
        if (!failed_stage.empty()) {
            stages[name] = "skipped: stage '" + failed_stage + "' failed";
            return;
        }
        try {
            fn();
            stages[name] = "ok";
        } catch (const Error& e) {
            stages[name] = std::string("failed: ") + e.what();
            failed_stage = name;
        }
    };

    run_stage("adf", [&] { report["adf"] = test_result_to_json(adf_test(x)); });

    run_stage("acf_pacf", [&] {
        if (x.size() < 12)
            throw ValidationError("acf/pacf need at least 12 observations");
        const std::size_t max_lag = std::min(opt.max_lag, x.size() / 4 - 1);
        const auto a = acf(x, max_lag);
        const auto p = pacf(x, max_lag);
        if (!opt.acf_csv.empty()) write_lag_csv(a, opt.acf_csv, "acf");
        if (!opt.pacf_csv.empty()) write_lag_csv(p, opt.pacf_csv, "pacf");
        const double band = 1.96 / std::sqrt(static_cast<double>(x.size()));
        json significant = json::array();
        for (std::size_t k = 1; k < p.size(); ++k)
            if (std::abs(p[k]) > band) significant.push_back(k);
        report["pacf_significant_lags"] = significant;
        report["acf_lag1"] = a.size() > 1 ? a[1] : 0.0;
        // AR(1) needs a significant first partial autocorrelation
        report["ar1_adequate"] =
            p.size() > 1 && std::abs(p[1]) > band;
    });

    FitReport fit;
    run_stage("fit", [&] {
        fit = opt.model == ModelKind::tar_marginal ? estimate_tar(x, opt.solver)
                                                   : estimate_arts(x, opt.solver);
        report["fit"] = fit_report_to_json(fit);
    });

    run_stage("innovation_tests", [&] {
        Series residuals;
        residuals.values.reserve(x.size() - 1);
        for (std::size_t i = 0; i + 1 < x.size(); ++i)
            residuals.values.push_back(x.values[i + 1] - fit.rho_hat * x.values[i]);

        const TSParams fitted{fit.beta_hat, fit.lambda_hat};
        const LTEvaluator lt =
            opt.model == ModelKind::tar_marginal
                ? error_lt_evaluator(InnovationParams{fit.rho_hat, fitted})
                : ts_lt_evaluator(fitted);
        const Series synthetic = lt_sample(lt, residuals.size(), opt.seed, opt.inversion);

        const TestResult ks = ks_two_sample(residuals, synthetic);
        const TestResult mwu = mann_whitney_u(residuals, synthetic);
        report["ks"] = test_result_to_json(ks);
        report["mann_whitney"] = test_result_to_json(mwu);
        report["verdict"] = {
            {"innovations_match_fitted_law", !ks.reject && !mwu.reject},
        };
    });

    report["stages"] = stages;
    if (!opt.out_json.empty()) write_json_file(report, opt.out_json);
    return report;
}

} // namespace tsar::cli
