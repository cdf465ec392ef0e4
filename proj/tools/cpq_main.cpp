// Command-line harness. Everything goes through the C API in cpq.h.
#include <cpq.h>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

namespace {

struct ConfigDeleter {
    void operator()(cpq_config* c) const { cpq_config_free(c); }
};
struct ReportDeleter {
    void operator()(cpq_report* r) const { cpq_report_free(r); }
};

using ConfigPtr = std::unique_ptr<cpq_config, ConfigDeleter>;
using ReportPtr = std::unique_ptr<cpq_report, ReportDeleter>;

[[noreturn]] void fail(cpq_status st) {
    std::cerr << "error (" << cpq_status_name(st) << "): " << cpq_last_error() << "\n";
    std::exit(2);
}

void require_ok(cpq_status st) {
    if (st != CPQ_OK) fail(st);
}

std::string take_string(cpq_status st, char* s) {
    require_ok(st);
    std::string out(s ? s : "");
    cpq_string_free(s);
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) {
        std::cerr << "error: cannot write " << path << "\n";
        std::exit(2);
    }
    f << content;
}

struct Options {
    std::string config_path;
    std::string suites;
    std::string seed;
    std::string n;
    std::string sites;
    std::string alpha;
    std::string root_exponent;
    std::string kappa0, kappa1, modulus_k;
    std::string tol_rel;
    std::string json_out;
    std::string csv_out;
    bool flip_c0 = false;
    bool flip_zs = false;
};

void add_common_options(CLI::App* app, Options& opt) {
    app->add_option("--config", opt.config_path, "JSON config file");
    app->add_option("--suite", opt.suites, "comma-separated suite list");
    app->add_option("--seed", opt.seed, "random seed");
    app->add_option("--n", opt.n, "dimension N (odd, >= 3)");
    app->add_option("--m", opt.sites, "number of chain sites M");
    app->add_option("--alpha", opt.alpha, "twist parameter (2*alpha not an integer)");
    app->add_option("--root-exponent", opt.root_exponent, "exponent of the primitive root");
    app->add_option("--kappa0", opt.kappa0, "coupling kappa0 as re[,im]");
    app->add_option("--kappa1", opt.kappa1, "coupling kappa1 as re[,im]");
    app->add_option("--modulus-k", opt.modulus_k, "explicit curve modulus k as re[,im]");
    app->add_option("--tol-rel", opt.tol_rel, "relative tolerance rescale");
    app->add_option("--json-out", opt.json_out, "write the JSON result to this path");
    app->add_option("--csv-out", opt.csv_out, "directory for CSV outputs");
    app->add_flag("--flip-c0", opt.flip_c0, "select the negative branch of c0");
    app->add_flag("--flip-zs", opt.flip_zs, "select the negative branch of z_s");
}

ConfigPtr build_config(const Options& opt) {
    ConfigPtr cfg(cpq_config_new());
    if (!cfg) fail(CPQ_ERR_INTERNAL);
    if (!opt.config_path.empty()) {
        std::ifstream f(opt.config_path);
        if (!f) {
            std::cerr << "error: cannot read " << opt.config_path << "\n";
            std::exit(2);
        }
        std::stringstream buf;
        buf << f.rdbuf();
        require_ok(cpq_config_load_json(cfg.get(), buf.str().c_str()));
    }
    require_ok(cpq_config_apply_env(cfg.get()));
    auto set = [&](const char* key, const std::string& value) {
        if (!value.empty()) require_ok(cpq_config_set(cfg.get(), key, value.c_str()));
    };
    set("suites", opt.suites);
    set("seed", opt.seed);
    set("n", opt.n);
    set("sites", opt.sites);
    set("alpha", opt.alpha);
    set("root_exponent", opt.root_exponent);
    set("kappa0", opt.kappa0);
    set("kappa1", opt.kappa1);
    set("modulus_k", opt.modulus_k);
    set("tol_rel", opt.tol_rel);
    set("json_out", opt.json_out);
    set("csv_out", opt.csv_out);
    if (opt.flip_c0) set("flip_c0", "true");
    if (opt.flip_zs) set("flip_zs", "true");
    require_ok(cpq_config_validate(cfg.get()));
    return cfg;
}

int run_verify(const Options& opt) {
    ConfigPtr cfg = build_config(opt);
    cpq_report* raw = nullptr;
    require_ok(cpq_run(cfg.get(), &raw));
    ReportPtr rep(raw);
    std::cout << take_string(CPQ_OK, [&] {
        char* s = nullptr;
        require_ok(cpq_report_text(rep.get(), &s));
        return s;
    }());
    if (!opt.json_out.empty()) {
        char* s = nullptr;
        require_ok(cpq_report_json(rep.get(), &s));
        write_file(opt.json_out, take_string(CPQ_OK, s));
        std::cout << "report written to " << opt.json_out << "\n";
    }
    return cpq_report_all_passed(rep.get()) ? 0 : 1;
}

int run_weights(const Options& opt) {
    ConfigPtr cfg = build_config(opt);
    char* jraw = nullptr;
    require_ok(cpq_weights_json(cfg.get(), &jraw));
    const std::string json = take_string(CPQ_OK, jraw);
    char* craw = nullptr;
    require_ok(cpq_weights_csv(cfg.get(), &craw));
    const std::string csv = take_string(CPQ_OK, craw);

    if (!opt.json_out.empty()) {
        write_file(opt.json_out, json);
        std::cout << "weights written to " << opt.json_out << "\n";
    }
    if (!opt.csv_out.empty()) {
        std::filesystem::create_directories(opt.csv_out);
        const std::string path = (std::filesystem::path(opt.csv_out) / "weights.csv").string();
        write_file(path, csv);
        std::cout << "weights written to " << path << "\n";
    }
    if (opt.json_out.empty() && opt.csv_out.empty()) std::cout << csv;
    return 0;
}

int run_show_config(const Options& opt) {
    ConfigPtr cfg = build_config(opt);
    char* s = nullptr;
    require_ok(cpq_config_json(cfg.get(), &s));
    std::cout << take_string(CPQ_OK, s) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("cyclic-representation identity certifier (cpq ") + cpq_version() +
                 ")"};
    app.require_subcommand(1);

    Options vopt, wopt, sopt;
    CLI::App* verify = app.add_subcommand("verify", "run the certification suites");
    add_common_options(verify, vopt);
    CLI::App* weights = app.add_subcommand("weights", "export the four weight tables");
    add_common_options(weights, wopt);
    CLI::App* show = app.add_subcommand("show-config", "print the merged configuration");
    add_common_options(show, sopt);

    CLI11_PARSE(app, argc, argv);

    if (verify->parsed()) return run_verify(vopt);
    if (weights->parsed()) return run_weights(wopt);
    if (show->parsed()) return run_show_config(sopt);
    return 2;
}
