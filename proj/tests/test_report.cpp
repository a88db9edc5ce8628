#include "tsar/report_json.hpp"

#include <doctest.h>

#include <fstream>

using namespace tsar;
using nlohmann::json;

namespace {

// minimal structural validator for the subset of JSON Schema the shipped
// schema uses: type, required, properties, $ref into #/definitions, enum
bool validate_node(const json& schema, const json& root_schema, const json& value,
                   std::string& why) {
    if (schema.contains("$ref")) {
        const std::string ref = schema["$ref"];
        const std::string prefix = "#/definitions/";
        const json& target = root_schema["definitions"][ref.substr(prefix.size())];
        return validate_node(target, root_schema, value, why);
    }
    if (schema.contains("type")) {
        const std::string t = schema["type"];
        const bool ok = (t == "object" && value.is_object()) ||
                        (t == "number" && value.is_number()) ||
                        (t == "integer" && value.is_number_integer()) ||
                        (t == "boolean" && value.is_boolean()) ||
                        (t == "string" && value.is_string()) ||
                        (t == "array" && value.is_array());
        if (!ok) {
            why = "expected type " + t + ", got " + value.dump();
            return false;
        }
    }
    if (schema.contains("enum")) {
        bool hit = false;
        for (const auto& e : schema["enum"])
            if (e == value) hit = true;
        if (!hit) {
            why = "value " + value.dump() + " not in enum";
            return false;
        }
    }
    if (schema.contains("required"))
        for (const auto& key : schema["required"])
            if (!value.contains(key.get<std::string>())) {
                why = "missing required key " + key.get<std::string>();
                return false;
            }
    if (schema.contains("properties"))
        for (const auto& [key, sub] : schema["properties"].items())
            if (value.contains(key) &&
                !validate_node(sub, root_schema, value[key], why))
                return false;
    return true;
}

FitReport sample_report() {
    FitReport r;
    r.model = ModelKind::ts_innovation;
    r.rho_hat = 0.61;
    r.beta_hat = 0.9;
    r.lambda_hat = 2.8;
    r.solver = {12, 3e-13, 5};
    r.diagnostics = {0.4, 0.3, 0.41, 0.31, 1e-8};
    BootstrapSummary bs;
    bs.replicates = 100;
    bs.failures = 1;
    bs.rho = {0.5, 0.58, 0.6, 0.62, 0.7};
    bs.beta = {0.8, 0.88, 0.9, 0.92, 0.99};
    bs.lambda = {2.0, 2.6, 2.8, 3.0, 3.5};
    r.bootstrap = bs;
    return r;
}

} // namespace

TEST_CASE("fit report json carries the documented stable keys") {
    const json j = fit_report_to_json(sample_report());
    CHECK(j["model"] == "arts");
    CHECK(j["rho_hat"] == 0.61);
    CHECK(j["beta_hat"] == 0.9);
    CHECK(j["lambda_hat"] == 2.8);
    CHECK(j["solver"]["residual_norm"] == 3e-13);
    CHECK(j["bootstrap"]["quantiles"]["lambda"]["median"] == 2.8);
}

TEST_CASE("fit report validates against the shipped schema") {
    std::ifstream in(std::string(TSAR_SOURCE_DIR) + "/docs/fitreport.schema.json");
    REQUIRE(in.good());
    json schema;
    in >> schema;

    std::string why;
    const json with_bootstrap = fit_report_to_json(sample_report());
    CHECK_MESSAGE(validate_node(schema, schema, with_bootstrap, why), why);

    FitReport bare = sample_report();
    bare.bootstrap.reset();
    const json without = fit_report_to_json(bare);
    CHECK_MESSAGE(validate_node(schema, schema, without, why), why);
    CHECK_FALSE(without.contains("bootstrap"));

    // the validator itself notices broken documents
    json broken = with_bootstrap;
    broken.erase("rho_hat");
    CHECK_FALSE(validate_node(schema, schema, broken, why));
}

TEST_CASE("test result json") {
    const json j = test_result_to_json(TestResult(1.5, 0.03, "ks_two_sample(asymptotic)"));
    CHECK(j["statistic"] == 1.5);
    CHECK(j["p_value"] == 0.03);
    CHECK(j["reject"] == true);
    CHECK(j["significance_level"] == 0.05);
}
