#pragma once

#include "cpq/checks.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace cpq {

struct Config {
    int n = 3;              // dimension of W / order of q
    int root_exponent = 1;  // q = exp(2 pi i root_exponent / n)
    int sites = 2;          // chain length M
    double alpha = 0.3;     // twist, 2*alpha must not be an integer
    std::uint64_t seed = 42;
    Scalar kappa0{1.0, 0.0};
    Scalar kappa1{1.0, 0.0};
    std::optional<Scalar> modulus_k;  // explicit curve modulus; drawn from seed when absent
    bool flip_c0 = false;
    bool flip_zs = false;
    double tol_rel = 1e-10;
    double tol_abs = 1e-12;
    std::vector<std::string> suites;  // empty = all, in dependency order
    std::string json_out;
    std::string csv_out;

    void validate() const;  // throws Error(ErrorCode::Config)
    CouplingConstants couplings() const { return {kappa0, kappa1}; }
    int c0_sign() const { return flip_c0 ? -1 : +1; }
    int zs_sign() const { return flip_zs ? -1 : +1; }
};

struct CheckResult {
    std::string id;
    std::string identity;  // the certified statement, spelled out
    std::string params;    // replay data for this draw (JSON text)
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool asserted = true;  // informational checks report their residual only
};

struct Report {
    std::vector<CheckResult> checks;
    int passed = 0;
    int failed = 0;  // counts asserted failures only
    std::string config_json;
    std::string timestamp;

    bool all_passed() const { return failed == 0; }
};

const std::vector<std::string>& suite_names();

Report run_suite(const Config& cfg);

std::string report_to_json(const Report& rep);
std::string report_to_text(const Report& rep);

struct WeightExport {
    std::string json;
    std::string csv;
};
WeightExport export_weights(const Config& cfg);

std::string config_to_json(const Config& cfg);
void config_apply_json(Config& cfg, const std::string& json_text);
void config_apply_key(Config& cfg, const std::string& key, const std::string& value);
void config_apply_env(Config& cfg);  // CPQ_<KEY> overrides

const char* version();

}  // namespace cpq
