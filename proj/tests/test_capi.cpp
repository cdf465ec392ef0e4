// Exercises the shared-library surface exactly as an external client would.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cpq.h>

#include <string>

namespace {

std::string take(char* s) {
    std::string out(s ? s : "");
    cpq_string_free(s);
    return out;
}

}  // namespace

TEST_CASE("version and status names") {
    CHECK(std::string(cpq_version()).size() > 0);
    CHECK(std::string(cpq_status_name(CPQ_OK)) == "ok");
    CHECK(std::string(cpq_status_name(CPQ_ERR_CONFIG)) == "config");
}

TEST_CASE("config lifecycle, setters, and validation errors") {
    cpq_config* cfg = cpq_config_new();
    REQUIRE(cfg != nullptr);

    CHECK(cpq_config_set(cfg, "n", "5") == CPQ_OK);
    CHECK(cpq_config_set(cfg, "alpha", "0.31") == CPQ_OK);
    CHECK(cpq_config_set(cfg, "kappa0", "0.9,0.2") == CPQ_OK);
    CHECK(cpq_config_validate(cfg) == CPQ_OK);

    CHECK(cpq_config_set(cfg, "bogus", "1") == CPQ_ERR_CONFIG);
    CHECK(std::string(cpq_last_error()).find("bogus") != std::string::npos);

    CHECK(cpq_config_set(cfg, "alpha", "0.5") == CPQ_OK);
    CHECK(cpq_config_validate(cfg) == CPQ_ERR_CONFIG);

    CHECK(cpq_config_set(nullptr, "n", "3") == CPQ_ERR_INVALID_ARGUMENT);

    char* json = nullptr;
    CHECK(cpq_config_set(cfg, "alpha", "0.31") == CPQ_OK);
    CHECK(cpq_config_json(cfg, &json) == CPQ_OK);
    const std::string text = take(json);
    CHECK(text.find("\"n\": 5") != std::string::npos);

    cpq_config* cfg2 = cpq_config_new();
    CHECK(cpq_config_load_json(cfg2, text.c_str()) == CPQ_OK);
    CHECK(cpq_config_load_json(cfg2, "{ not json") == CPQ_ERR_CONFIG);
    cpq_config_free(cfg2);
    cpq_config_free(cfg);
}

TEST_CASE("running a suite through the C interface") {
    cpq_config* cfg = cpq_config_new();
    REQUIRE(cfg != nullptr);
    CHECK(cpq_config_set(cfg, "suites", "weyl,weights") == CPQ_OK);
    cpq_report* rep = nullptr;
    REQUIRE(cpq_run(cfg, &rep) == CPQ_OK);
    REQUIRE(rep != nullptr);
    CHECK(cpq_report_check_count(rep) > 5);
    CHECK(cpq_report_fail_count(rep) == 0);
    CHECK(cpq_report_all_passed(rep) == 1);
    CHECK(cpq_report_pass_count(rep) + cpq_report_fail_count(rep) <= cpq_report_check_count(rep));

    char* json = nullptr;
    CHECK(cpq_report_json(rep, &json) == CPQ_OK);
    CHECK(take(json).find("\"checks\"") != std::string::npos);
    char* text = nullptr;
    CHECK(cpq_report_text(rep, &text) == CPQ_OK);
    CHECK(take(text).find("PASS") != std::string::npos);

    cpq_report_free(rep);
    cpq_config_free(cfg);
}

TEST_CASE("weight export through the C interface") {
    cpq_config* cfg = cpq_config_new();
    REQUIRE(cfg != nullptr);
    char* csv = nullptr;
    CHECK(cpq_weights_csv(cfg, &csv) == CPQ_OK);
    const std::string table = take(csv);
    CHECK(table.rfind("n,family,re,im\n", 0) == 0);
    CHECK(table.find("w_check") != std::string::npos);
    char* json = nullptr;
    CHECK(cpq_weights_json(cfg, &json) == CPQ_OK);
    CHECK(take(json).find("w_hat") != std::string::npos);
    cpq_config_free(cfg);
}
