#include "tsar/report_json.hpp"

namespace tsar {

using nlohmann::json;

json five_number_to_json(const FiveNumber& f) {
    return json{{"min", f.min}, {"q1", f.q1}, {"median", f.median},
                {"q3", f.q3}, {"max", f.max}};
}

json fit_report_to_json(const FitReport& r) {
    json j{
        {"model", model_kind_name(r.model)},
        {"rho_hat", r.rho_hat},
        {"beta_hat", r.beta_hat},
        {"lambda_hat", r.lambda_hat},
        {"nonstationary", r.nonstationary},
        {"solver",
         {{"iterations", r.solver.iterations},
          {"residual_norm", r.solver.residual_norm},
          {"starts_tried", r.solver.starts_tried}}},
        {"diagnostics",
         {{"m1", r.diagnostics.m1},
          {"m2", r.diagnostics.m2},
          {"model_m1", r.diagnostics.model_m1},
          {"model_m2", r.diagnostics.model_m2},
          {"estimating_equation_gap", r.diagnostics.estimating_equation_gap}}},
    };
    if (r.bootstrap) {
        j["bootstrap"] = {
            {"replicates", r.bootstrap->replicates},
            {"failures", r.bootstrap->failures},
            {"quantiles",
             {{"rho", five_number_to_json(r.bootstrap->rho)},
              {"beta", five_number_to_json(r.bootstrap->beta)},
              {"lambda", five_number_to_json(r.bootstrap->lambda)}}},
        };
    }
    return j;
}

json test_result_to_json(const TestResult& t) {
    return json{{"statistic", t.statistic},
                {"p_value", t.p_value},
                {"method", t.method},
                {"significance_level", t.significance_level},
                {"reject", t.reject}};
}

json bootstrap_to_json(const BootstrapResult& b) {
    return json{
        {"replicates", b.requested},
        {"failures", b.failures},
        {"quantiles",
         {{"rho", five_number_to_json(b.rho_summary)},
          {"beta", five_number_to_json(b.beta_summary)},
          {"lambda", five_number_to_json(b.lambda_summary)}}},
    };
}

} // namespace tsar
