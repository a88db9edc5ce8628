#ifndef TSAR_REPORT_JSON_HPP
#define TSAR_REPORT_JSON_HPP

#include "tsar/estimation.hpp"
#include "tsar/stats.hpp"

#include <json.hpp>

namespace tsar {

/// FitReport with the documented stable key names (model, rho_hat, beta_hat,
/// lambda_hat, solver.residual_norm, bootstrap.quantiles).
nlohmann::json fit_report_to_json(const FitReport& report);

nlohmann::json test_result_to_json(const TestResult& result);

nlohmann::json five_number_to_json(const FiveNumber& f);

nlohmann::json bootstrap_to_json(const BootstrapResult& result);

} // namespace tsar

#endif
