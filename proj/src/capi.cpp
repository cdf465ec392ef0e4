#include "cpq.h"

#include "cpq/harness.hpp"

#include <cstring>
#include <new>
#include <string>

struct cpq_config {
    cpq::Config cfg;
};

struct cpq_report {
    cpq::Report rep;
};

namespace {

thread_local std::string g_last_error;

cpq_status status_of(const cpq::Error& e) {
    switch (e.code()) {
        case cpq::ErrorCode::InvalidArgument:
        case cpq::ErrorCode::Dimension: return CPQ_ERR_INVALID_ARGUMENT;
        case cpq::ErrorCode::Config: return CPQ_ERR_CONFIG;
        case cpq::ErrorCode::Degenerate: return CPQ_ERR_DEGENERATE;
        case cpq::ErrorCode::Singular: return CPQ_ERR_SINGULAR;
        case cpq::ErrorCode::Budget: return CPQ_ERR_BUDGET;
        case cpq::ErrorCode::Internal: return CPQ_ERR_INTERNAL;
    }
    return CPQ_ERR_INTERNAL;
}

template <typename Fn>
cpq_status guarded(Fn&& fn) {
    try {
        fn();
        return CPQ_OK;
    } catch (const cpq::Error& e) {
        g_last_error = e.what();
        return status_of(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return CPQ_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return CPQ_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = new (std::nothrow) char[s.size() + 1];
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

cpq_status string_out(const std::string& s, char** out) {
    if (!out) {
        g_last_error = "null output pointer";
        return CPQ_ERR_INVALID_ARGUMENT;
    }
    *out = dup_string(s);
    if (!*out) {
        g_last_error = "allocation failure";
        return CPQ_ERR_INTERNAL;
    }
    return CPQ_OK;
}

}  // namespace

extern "C" {

const char* cpq_version(void) { return cpq::version(); }

const char* cpq_status_name(cpq_status status) {
    switch (status) {
        case CPQ_OK: return "ok";
        case CPQ_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case CPQ_ERR_CONFIG: return "config";
        case CPQ_ERR_DEGENERATE: return "degenerate";
        case CPQ_ERR_SINGULAR: return "singular";
        case CPQ_ERR_BUDGET: return "budget";
        case CPQ_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* cpq_last_error(void) { return g_last_error.c_str(); }

cpq_config* cpq_config_new(void) { return new (std::nothrow) cpq_config(); }

void cpq_config_free(cpq_config* cfg) { delete cfg; }

cpq_status cpq_config_set(cpq_config* cfg, const char* key, const char* value) {
    if (!cfg || !key || !value) {
        g_last_error = "null argument";
        return CPQ_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] { cpq::config_apply_key(cfg->cfg, key, value); });
}

cpq_status cpq_config_load_json(cpq_config* cfg, const char* json_text) {
    if (!cfg || !json_text) {
        g_last_error = "null argument";
        return CPQ_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        try {
            cpq::config_apply_json(cfg->cfg, json_text);
        } catch (const cpq::Error&) {
            throw;
        } catch (const std::exception& e) {
            throw cpq::Error(cpq::ErrorCode::Config, std::string("bad config JSON: ") + e.what());
        }
    });
}

cpq_status cpq_config_apply_env(cpq_config* cfg) {
    if (!cfg) {
        g_last_error = "null argument";
        return CPQ_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] { cpq::config_apply_env(cfg->cfg); });
}

cpq_status cpq_config_validate(const cpq_config* cfg) {
    if (!cfg) {
        g_last_error = "null argument";
        return CPQ_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] { cfg->cfg.validate(); });
}

cpq_status cpq_config_json(const cpq_config* cfg, char** out) {
    if (!cfg) {
        g_last_error = "null argument";
        return CPQ_ERR_INVALID_ARGUMENT;
    }
    std::string text;
    const cpq_status st = guarded([&] { text = cpq::config_to_json(cfg->cfg); });
    return st != CPQ_OK ? st : string_out(text, out);
}

cpq_status cpq_run(const cpq_config* cfg, cpq_report** out) {
    if (!cfg || !out) {
        g_last_error = "null argument";
        return CPQ_ERR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    cpq_report* rep = new (std::nothrow) cpq_report();
    if (!rep) {
        g_last_error = "allocation failure";
        return CPQ_ERR_INTERNAL;
    }
    const cpq_status st = guarded([&] { rep->rep = cpq::run_suite(cfg->cfg); });
    if (st != CPQ_OK) {
        delete rep;
        return st;
    }
    *out = rep;
    return CPQ_OK;
}

int cpq_report_check_count(const cpq_report* rep) {
    return rep ? static_cast<int>(rep->rep.checks.size()) : 0;
}

int cpq_report_pass_count(const cpq_report* rep) { return rep ? rep->rep.passed : 0; }

int cpq_report_fail_count(const cpq_report* rep) { return rep ? rep->rep.failed : 0; }

int cpq_report_all_passed(const cpq_report* rep) {
    return rep && rep->rep.all_passed() ? 1 : 0;
}

cpq_status cpq_report_json(const cpq_report* rep, char** out) {
    if (!rep) {
        g_last_error = "null argument";
        return CPQ_ERR_INVALID_ARGUMENT;
    }
    std::string text;
    const cpq_status st = guarded([&] { text = cpq::report_to_json(rep->rep); });
    return st != CPQ_OK ? st : string_out(text, out);
}

cpq_status cpq_report_text(const cpq_report* rep, char** out) {
    if (!rep) {
        g_last_error = "null argument";
        return CPQ_ERR_INVALID_ARGUMENT;
    }
    std::string text;
    const cpq_status st = guarded([&] { text = cpq::report_to_text(rep->rep); });
    return st != CPQ_OK ? st : string_out(text, out);
}

void cpq_report_free(cpq_report* rep) { delete rep; }

cpq_status cpq_weights_json(const cpq_config* cfg, char** out) {
    if (!cfg) {
        g_last_error = "null argument";
        return CPQ_ERR_INVALID_ARGUMENT;
    }
    std::string text;
    const cpq_status st = guarded([&] { text = cpq::export_weights(cfg->cfg).json; });
    return st != CPQ_OK ? st : string_out(text, out);
}

cpq_status cpq_weights_csv(const cpq_config* cfg, char** out) {
    if (!cfg) {
        g_last_error = "null argument";
        return CPQ_ERR_INVALID_ARGUMENT;
    }
    std::string text;
    const cpq_status st = guarded([&] { text = cpq::export_weights(cfg->cfg).csv; });
    return st != CPQ_OK ? st : string_out(text, out);
}

void cpq_string_free(char* s) { delete[] s; }

}  // extern "C"
