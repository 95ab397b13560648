// Command-line front end. Talks to the library only through cstk.h.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "cstk/cstk.h"

namespace {

using json = nlohmann::ordered_json;

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNumeric = 3 };

struct Failure {
    int code;
    std::string message;
};

int exit_for(cstk_status s) {
    switch (s) {
        case CSTK_OK: return kOk;
        case CSTK_E_INVALID_ARGUMENT:
        case CSTK_E_PARSE:
        case CSTK_E_IO:
        case CSTK_E_UNKNOWN_CHECK: return kUsage;
        default: return kNumeric;
    }
}

void check(cstk_status s) {
    if (s != CSTK_OK) throw Failure{exit_for(s), cstk_last_error()};
}

[[noreturn]] void usage(const std::string& msg) { throw Failure{kUsage, msg}; }

std::string fmt_complex(cstk_complex z) {
    char buf[80];
    cstk_format_complex(z, buf, sizeof buf);
    return buf;
}

std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

cstk_complex parse_complex(const std::string& text, const std::string& what) {
    cstk_complex z{};
    if (cstk_parse_complex(text.c_str(), &z) != CSTK_OK) usage(what + ": " + cstk_last_error());
    return z;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Settings shared by every subcommand, in increasing priority: defaults, config file, flags.
struct Settings {
    cstk_series_control ctl = cstk_default_control();
    int n_r = 64;
    int n_theta = 256;
    unsigned long long seed = 20240611ULL;
    int jobs = 1;
    std::optional<std::string> format;
};

template <class T>
T convert(const std::string& key, const std::string& value) {
    std::istringstream in(value);
    T v{};
    in >> v;
    if (in.fail() || !in.eof()) usage("config: bad value '" + value + "' for " + key);
    return v;
}

void apply_config_file(const std::string& path, Settings& s) {
    std::ifstream in(path);
    if (!in) usage("cannot open config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) usage(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        for (auto& c : key)
            if (c == '-') c = '_';
        if (key == "rel_tol")
            s.ctl.rel_tol = convert<double>(key, value);
        else if (key == "abs_tol")
            s.ctl.abs_tol = convert<double>(key, value);
        else if (key == "max_terms")
            s.ctl.max_terms = convert<int>(key, value);
        else if (key == "n_r")
            s.n_r = convert<int>(key, value);
        else if (key == "n_theta")
            s.n_theta = convert<int>(key, value);
        else if (key == "seed")
            s.seed = convert<unsigned long long>(key, value);
        else if (key == "jobs")
            s.jobs = convert<int>(key, value);
        else if (key == "format" || key == "output_format")
            s.format = value;
        else
            usage(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
}

struct Output {
    std::optional<std::string> path;

    void write(const std::string& text) const {
        if (!path) {
            std::cout << text;
            std::cout.flush();
            return;
        }
        std::ofstream out(*path, std::ios::binary);
        if (!out) usage("cannot open output file '" + *path + "'");
        out << text;
        if (!out) usage("failed writing '" + *path + "'");
    }
};

struct MeasureHandle {
    cstk_measure* p = nullptr;
    ~MeasureHandle() { cstk_measure_free(p); }
};

void load_measure(MeasureHandle& h, const std::optional<std::string>& path, double beta) {
    if (path)
        check(cstk_measure_load(path->c_str(), beta, &h.p));
    else
        check(cstk_measure_gamma(beta, &h.p));
}

void warn_domain(const cstk_measure* mu, int m) {
    int included = 1;
    double r = 0;
    if (cstk_domain_inclusion(mu, m, &included, &r) == CSTK_OK && !included)
        std::cerr << "cstk: warning: support bound exceeds the estimated convergence radius " << fmt_real(r)
                  << " for m = " << m << "\n";
}

struct Args {
    // common
    std::string config;
    std::string format;
    std::string out;
    double rel_tol = 0, abs_tol = 0;
    int max_terms = 0, n_r = 0, n_theta = 0, jobs = 0;
    unsigned long long seed = 0;
    bool timing = false;
    // eval / transform / table
    std::string object;
    int n = 0, m = 0;
    double beta = 0, x = 0;
    std::string z = "0", w = "0";
    bool analytic = false, true_poly = false, normalized = false, series = false;
    std::string moments;
    // verify
    std::string suite;
    int mmax = 0, nmax = 0, samples = 0;
    std::vector<double> betas;
    std::vector<std::string> tols;
    // transform
    std::string input, targets;
    int degree_hint = 0;
};

struct Flags {
    CLI::Option *config, *format, *out, *rel_tol, *abs_tol, *max_terms, *n_r, *n_theta, *seed, *jobs;
};

Settings resolve(const Args& a, const Flags& f) {
    Settings s;
    if (f.config->count())
        apply_config_file(a.config, s);
    else if (const char* env = std::getenv("CSTK_CONFIG"); env && *env)
        apply_config_file(env, s);
    if (f.rel_tol->count()) s.ctl.rel_tol = a.rel_tol;
    if (f.abs_tol->count()) s.ctl.abs_tol = a.abs_tol;
    if (f.max_terms->count()) s.ctl.max_terms = a.max_terms;
    if (f.n_r->count()) s.n_r = a.n_r;
    if (f.n_theta->count()) s.n_theta = a.n_theta;
    if (f.seed->count()) s.seed = a.seed;
    if (f.jobs->count()) s.jobs = a.jobs;
    if (f.format->count()) s.format = a.format;
    if (s.format && *s.format != "json" && *s.format != "csv") usage("format must be json or csv");
    if (!(s.ctl.rel_tol > 0) || !(s.ctl.abs_tol >= 0) || s.ctl.max_terms < 1)
        usage("series control out of range (rel_tol > 0, abs_tol >= 0, max_terms >= 1)");
    if (s.n_r < 1 || s.n_theta < 1) usage("n_r and n_theta must be positive");
    if (s.jobs < 1) usage("jobs must be positive");
    return s;
}

std::string emit_value(const std::string& fmt, const json& params, const std::string& object,
                       const std::string& value, const json& extra = json::object()) {
    if (fmt == "csv") {
        std::string head = "object", row = object;
        for (const auto& [k, v] : params.items()) {
            head += "," + k;
            row += "," + (v.is_string() ? v.get<std::string>() : v.dump());
        }
        return head + ",value\n" + row + "," + value + "\n";
    }
    json j;
    j["object"] = object;
    j["params"] = params;
    j["value"] = value;
    for (const auto& [k, v] : extra.items()) j[k] = v;
    return j.dump(2) + "\n";
}

int cmd_eval(const Args& a, const Settings& s, const Output& out) {
    const std::string fmt = s.format.value_or("json");
    const cstk_complex z = parse_complex(a.z, "--z");
    const cstk_complex w = parse_complex(a.w, "--w");
    const cstk_series_control* ctl = &s.ctl;
    json params;
    json extra = json::object();
    std::string value;
    std::string object = a.object;

    if (a.object == "poly") {
        params = {{"n", a.n}, {"m", a.m}, {"beta", a.beta}, {"z", fmt_complex(z)}};
        cstk_complex v{};
        if (a.normalized) {
            MeasureHandle mu;
            load_measure(mu, a.moments.empty() ? std::nullopt : std::optional<std::string>(a.moments), a.beta);
            check(cstk_p_norm(a.n, a.m, mu.p, z, &v));
            object = "poly_normalized";
        } else {
            check(cstk_h_poly(a.n, a.m, a.beta, z, &v));
        }
        value = fmt_complex(v);
    } else if (a.object == "kernel") {
        if (a.analytic && a.true_poly) usage("--analytic and --true-poly are exclusive");
        cstk_complex v{};
        if (a.analytic) {
            params = {{"beta", a.beta}, {"z", fmt_complex(z)}, {"x", a.x}};
            check(cstk_kernel_b_analytic(a.beta, z, a.x, ctl, &v));
            object = "kernel_analytic";
        } else if (a.true_poly) {
            params = {{"m", a.m}, {"z", fmt_complex(z)}, {"x", a.x}};
            check(cstk_kernel_b_true_poly(a.m, z, a.x, &v));
            object = "kernel_true_poly";
        } else {
            params = {{"m", a.m}, {"beta", a.beta}, {"z", fmt_complex(z)}, {"x", a.x}};
            int extrapolated = 0;
            check(cstk_kernel_b(a.m, a.beta, z, a.x, ctl, &v, &extrapolated));
            if (extrapolated) {
                extra["warning"] = "z = 0 value obtained by ring-average extrapolation";
                std::cerr << "cstk: warning: z = 0 value obtained by ring-average extrapolation\n";
            }
        }
        value = fmt_complex(v);
    } else if (a.object == "overlap") {
        params = {{"m", a.m}, {"beta", a.beta}, {"z", fmt_complex(z)}, {"w", fmt_complex(w)}};
        cstk_complex v{};
        if (a.series) {
            check(cstk_overlap_series(a.m, a.beta, z, w, ctl, &v));
            object = "overlap_series";
        } else {
            check(cstk_overlap_closed(a.m, a.beta, z, w, ctl, &v));
        }
        value = fmt_complex(v);
    } else if (a.object == "norm") {
        params = {{"m", a.m}, {"beta", a.beta}, {"z", fmt_complex(z)}};
        double v = 0;
        check(cstk_norm_series(a.m, a.beta, z, ctl, &v));
        value = fmt_real(v);
    } else if (a.object == "weight") {
        params = {{"beta", a.beta}, {"x", a.x}};
        double v = 0;
        check(cstk_omega_weight(a.x, a.beta, ctl, &v));
        value = fmt_real(v);
    } else {
        usage("unknown object '" + a.object + "' (poly, kernel, overlap, norm, weight)");
    }
    out.write(emit_value(fmt, params, object, value, extra));
    return kOk;
}

struct ConfigHandle {
    cstk_verify_config* p = nullptr;
    ~ConfigHandle() { cstk_verify_config_free(p); }
};

int cmd_verify(const Args& a, const Settings& s, const Output& out, const CLI::App& sub) {
    std::vector<std::string> names;
    if (a.suite == "all") {
        for (size_t i = 0; i < cstk_check_count(0); ++i) names.emplace_back(cstk_check_name(i));
    } else {
        bool known = false;
        for (size_t i = 0; i < cstk_check_count(1); ++i) known = known || a.suite == cstk_check_name(i);
        if (!known) usage("unknown verification suite '" + a.suite + "'");
        names.push_back(a.suite);
    }

    ConfigHandle cfg;
    check(cstk_verify_config_new(&cfg.p));
    check(cstk_verify_config_set_control(cfg.p, &s.ctl));
    check(cstk_verify_config_set_grid(cfg.p, s.n_r, s.n_theta));
    check(cstk_verify_config_set_seed(cfg.p, s.seed));
    check(cstk_verify_config_set_jobs(cfg.p, s.jobs));
    if (sub.count("--mmax")) check(cstk_verify_config_set_mmax(cfg.p, a.mmax));
    if (sub.count("--nmax")) check(cstk_verify_config_set_nmax(cfg.p, a.nmax));
    if (sub.count("--samples")) check(cstk_verify_config_set_samples(cfg.p, a.samples));
    if (!a.betas.empty()) check(cstk_verify_config_set_betas(cfg.p, a.betas.data(), a.betas.size()));
    for (const auto& t : a.tols) {
        const auto eq = t.find('=');
        if (eq == std::string::npos) usage("--tol expects <check>.<criterion>=<value>");
        double v = 0;
        try {
            size_t used = 0;
            v = std::stod(t.substr(eq + 1), &used);
            if (used != t.size() - eq - 1) throw std::invalid_argument(t);
        } catch (const std::exception&) {
            usage("--tol: bad value in '" + t + "'");
        }
        check(cstk_verify_config_set_tolerance(cfg.p, t.substr(0, eq).c_str(), v));
    }

    std::vector<const char*> cnames;
    for (const auto& n : names) cnames.push_back(n.c_str());
    std::vector<cstk_report*> reports(names.size(), nullptr);
    check(cstk_verify_run_many(cnames.data(), cnames.size(), cfg.p, reports.data()));
    struct Free {
        std::vector<cstk_report*>& r;
        ~Free() {
            for (auto* p : r) cstk_report_free(p);
        }
    } guard{reports};

    bool all_pass = true;
    json arr = json::array();
    for (auto* r : reports) {
        all_pass = all_pass && cstk_report_pass(r);
        char* text = nullptr;
        check(cstk_report_json(r, a.timing ? 1 : 0, &text));
        arr.push_back(json::parse(text));
        cstk_string_free(text);
    }

    const std::string fmt = s.format.value_or("json");
    std::string doc;
    if (fmt == "csv") {
        doc = "check,pass,max_abs_err,max_rel_err,tolerance,runtime_seconds,seed\n";
        for (const auto& r : arr)
            doc += r["check"].get<std::string>() + "," + (r["pass"].get<bool>() ? "true" : "false") + "," +
                   r["max_abs_err"].dump() + "," + r["max_rel_err"].dump() + "," + r["tolerance"].dump() + "," +
                   r["runtime_seconds"].dump() + "," + r["seed"].dump() + "\n";
    } else {
        json j;
        j["suite"] = a.suite;
        j["pass"] = all_pass;
        j["reports"] = std::move(arr);
        doc = j.dump(2) + "\n";
    }
    out.write(doc);
    if (out.path)
        for (auto* r : reports)
            std::cerr << cstk_report_check(r) << ": " << (cstk_report_pass(r) ? "pass" : "FAIL") << "\n";
    return all_pass ? kOk : kVerifyFailed;
}

std::vector<cstk_complex> read_targets(const std::string& path) {
    std::ifstream in(path);
    if (!in) usage("cannot open targets file '" + path + "'");
    std::vector<cstk_complex> zs;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        cstk_complex z{};
        if (cstk_parse_complex(line.c_str(), &z) != CSTK_OK)
            throw Failure{kUsage, path + ":" + std::to_string(lineno) + ": " + cstk_last_error()};
        zs.push_back(z);
    }
    if (zs.empty()) usage("targets file '" + path + "' lists no points");
    return zs;
}

struct FunctionHandle {
    cstk_function* p = nullptr;
    ~FunctionHandle() { cstk_function_free(p); }
};

int cmd_transform(const Args& a, const Settings& s, const Output& out, const CLI::App& sub) {
    FunctionHandle f;
    check(cstk_function_load(a.input.c_str(), &f.p));
    double beta = 0;
    check(cstk_function_beta(f.p, &beta));
    if (sub.count("--beta")) beta = a.beta;
    std::vector<cstk_complex> zs;
    if (!a.targets.empty())
        zs = read_targets(a.targets);
    else
        zs.push_back(parse_complex(a.z, "--z"));
    const int hint = sub.count("--degree-hint") ? a.degree_hint : 8;
    std::vector<cstk_complex> vals(zs.size());
    check(cstk_transform(f.p, a.m, beta, zs.data(), zs.size(), hint, &s.ctl, s.jobs, vals.data()));

    const std::string fmt = s.format.value_or("csv");
    std::string doc;
    if (fmt == "csv") {
        doc = "z,value\n";
        for (size_t i = 0; i < zs.size(); ++i) doc += fmt_complex(zs[i]) + "," + fmt_complex(vals[i]) + "\n";
    } else {
        json j;
        j["m"] = a.m;
        j["beta"] = beta;
        j["degree_hint"] = hint;
        json rows = json::array();
        for (size_t i = 0; i < zs.size(); ++i)
            rows.push_back(json{{"z", fmt_complex(zs[i])}, {"value", fmt_complex(vals[i])}});
        j["values"] = std::move(rows);
        doc = j.dump(2) + "\n";
    }
    out.write(doc);
    return kOk;
}

int cmd_table(const Args& a, const Settings& s, const Output& out) {
    if (a.nmax < 0 || a.nmax > 20 || a.mmax < 0 || a.mmax > 20) usage("table ranges must lie in [0, 20]");
    MeasureHandle mu;
    load_measure(mu, a.moments.empty() ? std::nullopt : std::optional<std::string>(a.moments), a.beta);
    double beta = 0;
    check(cstk_measure_beta(mu.p, &beta));
    if (!a.moments.empty()) warn_domain(mu.p, 0);

    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    if (a.object == "moments") {
        header = {"n", "s", "mu_s"};
        for (int n = 0; n <= a.nmax; ++n) {
            double v = 0;
            check(cstk_measure_moment(mu.p, beta + n, &v));
            rows.push_back({std::to_string(n), fmt_real(beta + n), fmt_real(v)});
        }
    } else if (a.object == "factorials") {
        header = {"n", "m", "x_{n,m}!"};
        for (int n = 0; n <= a.nmax; ++n)
            for (int m = 0; m <= a.mmax; ++m) {
                double v = 0;
                check(cstk_gen_factorial(mu.p, n, m, &v));
                rows.push_back({std::to_string(n), std::to_string(m), fmt_real(v)});
            }
    } else if (a.object == "eigenvalues") {
        header = {"n", "x_n"};
        for (int n = 0; n <= a.nmax; ++n) {
            double v = 0;
            check(cstk_hamiltonian_eigen(mu.p, n, &v));
            rows.push_back({std::to_string(n), fmt_real(v)});
        }
    } else {
        usage("unknown table '" + a.object + "' (moments, factorials, eigenvalues)");
    }

    const std::string fmt = s.format.value_or("csv");
    std::string doc;
    if (fmt == "csv") {
        for (size_t i = 0; i < header.size(); ++i) doc += (i ? "," : "") + header[i];
        doc += "\n";
        for (const auto& r : rows) {
            for (size_t i = 0; i < r.size(); ++i) doc += (i ? "," : "") + r[i];
            doc += "\n";
        }
    } else {
        json arr = json::array();
        for (const auto& r : rows) {
            json o;
            for (size_t i = 0; i < r.size(); ++i) o[header[i]] = json::parse(r[i]);
            arr.push_back(std::move(o));
        }
        json j;
        j["table"] = a.object;
        j["beta"] = beta;
        j["rows"] = std::move(arr);
        doc = j.dump(2) + "\n";
    }
    out.write(doc);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coherent-state toolkit: special functions, polynomial families, transforms and certification suites"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(cstk_version()));

    Args a;
    Flags f{};
    f.config = app.add_option("--config", a.config, "Config file of key = value lines (default: $CSTK_CONFIG)");
    f.format = app.add_option("--format", a.format, "Output format: json or csv");
    f.out = app.add_option("--out", a.out, "Write the result to this file");
    f.rel_tol = app.add_option("--rel-tol", a.rel_tol, "Series relative tolerance");
    f.abs_tol = app.add_option("--abs-tol", a.abs_tol, "Series absolute tolerance");
    f.max_terms = app.add_option("--max-terms", a.max_terms, "Series term limit");
    f.n_r = app.add_option("--n-r", a.n_r, "Radial quadrature nodes");
    f.n_theta = app.add_option("--n-theta", a.n_theta, "Angular quadrature nodes");
    f.seed = app.add_option("--seed", a.seed, "Seed for sampled verification points");
    f.jobs = app.add_option("--jobs", a.jobs, "Worker threads");

    auto* eval = app.add_subcommand("eval", "Evaluate one object");
    eval->add_option("object", a.object, "poly | kernel | overlap | norm | weight")->required();
    eval->add_option("--n", a.n, "Index n");
    eval->add_option("--m", a.m, "Index m");
    eval->add_option("--beta", a.beta, "Weight exponent beta");
    eval->add_option("--z", a.z, "Complex point, a+bi");
    eval->add_option("--w", a.w, "Second complex point, a+bi");
    eval->add_option("--x", a.x, "Real point");
    eval->add_flag("--analytic", a.analytic, "kernel: closed m = 0 form");
    eval->add_flag("--true-poly", a.true_poly, "kernel: beta = 0 polyanalytic closed form");
    eval->add_flag("--normalized", a.normalized, "poly: orthonormal polynomial");
    eval->add_flag("--series", a.series, "overlap: sum the coefficient series");
    eval->add_option("--moments", a.moments, "poly --normalized: moments file for a generic measure");

    auto* verify = app.add_subcommand("verify", "Run a certification suite, or all of them");
    verify->add_option("suite", a.suite, "Suite name or 'all'")->required();
    verify->add_option("--mmax", a.mmax, "Largest m");
    verify->add_option("--nmax", a.nmax, "Largest n");
    verify->add_option("--samples", a.samples, "Sample points (or grid points)");
    verify->add_option("--betas", a.betas, "Comma-separated beta values")->delimiter(',');
    verify->add_option("--tol", a.tols, "Tolerance override <check>.<criterion>=<value>");
    verify->add_flag("--timing", a.timing, "Record wall-clock runtimes instead of 0");

    auto* transform = app.add_subcommand("transform", "Apply the generalized Bargmann transform to a sampled function");
    transform->add_option("input", a.input, "Function file (grid or coefficients)")->required();
    transform->add_option("--m", a.m, "Index m");
    transform->add_option("--beta", a.beta, "Weight exponent (defaults to the file's)");
    transform->add_option("--targets", a.targets, "File with one complex target per line");
    transform->add_option("--z", a.z, "Single target when no targets file is given");
    transform->add_option("--degree-hint", a.degree_hint, "Line rule resolves polynomials of twice this degree");

    auto* table = app.add_subcommand("table", "Emit a table of sequence values");
    table->add_option("object", a.object, "moments | factorials | eigenvalues")->required();
    table->add_option("--beta", a.beta, "Weight exponent beta");
    table->add_option("--nmax", a.nmax, "Largest n")->default_val(5);
    table->add_option("--mmax", a.mmax, "Largest m")->default_val(3);
    table->add_option("--moments", a.moments, "Moments file for a generic measure");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        const Settings s = resolve(a, f);
        Output out;
        if (f.out->count()) out.path = a.out;
        if (eval->parsed()) return cmd_eval(a, s, out);
        if (verify->parsed()) return cmd_verify(a, s, out, *verify);
        if (transform->parsed()) return cmd_transform(a, s, out, *transform);
        if (table->parsed()) return cmd_table(a, s, out);
        usage("no subcommand");
    } catch (const Failure& e) {
        std::cerr << "cstk: error: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "cstk: error: " << e.what() << "\n";
        return kNumeric;
    }
}
