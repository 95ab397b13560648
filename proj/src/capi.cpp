#include "cstk/cstk.h"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "cstk/coherent.hpp"
#include "cstk/error.hpp"
#include "cstk/measures.hpp"
#include "cstk/poly2d.hpp"
#include "cstk/quadrature.hpp"
#include "cstk/specfun.hpp"
#include "cstk/transforms.hpp"
#include "cstk/verify.hpp"

struct cstk_measure {
    cstk::MeasurePtr mu;
};
struct cstk_function {
    cstk::SampledFunction f;
};
struct cstk_verify_config {
    cstk::VerifyConfig cfg;
};
struct cstk_report {
    cstk::VerificationReport report;
};

namespace {

thread_local std::string g_last_error;

cstk_status to_status(cstk::Errc e) {
    switch (e) {
        case cstk::Errc::invalid_argument: return CSTK_E_INVALID_ARGUMENT;
        case cstk::Errc::pole: return CSTK_E_POLE;
        case cstk::Errc::not_converged: return CSTK_E_NOT_CONVERGED;
        case cstk::Errc::ill_conditioned: return CSTK_E_ILL_CONDITIONED;
        case cstk::Errc::parse: return CSTK_E_PARSE;
        case cstk::Errc::io: return CSTK_E_IO;
        case cstk::Errc::unknown_check: return CSTK_E_UNKNOWN_CHECK;
    }
    return CSTK_E_INTERNAL;
}

template <class F>
cstk_status guard(F&& body) {
    try {
        body();
        g_last_error.clear();
        return CSTK_OK;
    } catch (const cstk::Error& e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return CSTK_E_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return CSTK_E_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return CSTK_E_INTERNAL;
    }
}

void need(const void* p, const char* what) {
    if (!p) cstk::fail(cstk::Errc::invalid_argument, std::string(what) + " is NULL");
}

cstk::SeriesControl control(const cstk_series_control* c) {
    cstk::SeriesControl s;
    if (c) {
        s.rel_tol = c->rel_tol;
        s.abs_tol = c->abs_tol;
        s.max_terms = c->max_terms;
    }
    s.validate();
    return s;
}

cstk::cplx in(cstk_complex z) { return {z.re, z.im}; }
cstk_complex out(cstk::cplx z) { return {z.real(), z.imag()}; }

const cstk::MomentMeasure& deref(const cstk_measure* mu) {
    need(mu, "measure");
    return *mu->mu;
}

bool parse_real(const std::string& s, double& v) {
    if (s.empty()) return false;
    char* end = nullptr;
    v = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && std::isfinite(v);
}

}  // namespace

extern "C" {

const char* cstk_version(void) { return "1.0.0"; }

const char* cstk_last_error(void) { return g_last_error.c_str(); }

const char* cstk_status_name(cstk_status s) {
    switch (s) {
        case CSTK_OK: return "ok";
        case CSTK_E_INVALID_ARGUMENT: return "invalid_argument";
        case CSTK_E_POLE: return "pole";
        case CSTK_E_NOT_CONVERGED: return "not_converged";
        case CSTK_E_ILL_CONDITIONED: return "ill_conditioned";
        case CSTK_E_PARSE: return "parse";
        case CSTK_E_IO: return "io";
        case CSTK_E_UNKNOWN_CHECK: return "unknown_check";
        case CSTK_E_INTERNAL: return "internal";
    }
    return "unknown";
}

cstk_series_control cstk_default_control(void) {
    const cstk::SeriesControl s;
    return {s.rel_tol, s.abs_tol, s.max_terms};
}

size_t cstk_format_complex(cstk_complex z, char* buf, size_t cap) {
    char tmp[64];
    const int n = std::snprintf(tmp, sizeof tmp, "%.17g%+.17gi", z.re + 0.0, z.im + 0.0);
    if (buf && cap) {
        const size_t k = std::min(cap - 1, static_cast<size_t>(n));
        std::memcpy(buf, tmp, k);
        buf[k] = '\0';
    }
    return static_cast<size_t>(n);
}

cstk_status cstk_parse_complex(const char* text, cstk_complex* result) {
    return guard([&] {
        need(text, "text");
        need(result, "output");
        std::string s;
        for (const char* p = text; *p; ++p)
            if (!std::isspace(static_cast<unsigned char>(*p))) s += *p;
        auto bad = [&] { cstk::fail(cstk::Errc::parse, "cannot parse complex number '" + std::string(text) + "'"); };
        if (s.empty()) bad();
        double re = 0, im = 0;
        if (s.back() == 'i' || s.back() == 'j') {
            s.pop_back();
            std::size_t split = std::string::npos;
            for (std::size_t k = s.size(); k-- > 1;)
                if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
                    split = k;
                    break;
                }
            const std::string rs = split == std::string::npos ? "" : s.substr(0, split);
            std::string is = split == std::string::npos ? s : s.substr(split);
            if (!rs.empty() && !parse_real(rs, re)) bad();
            if (is.empty() || is == "+")
                im = 1;
            else if (is == "-")
                im = -1;
            else if (!parse_real(is, im))
                bad();
        } else if (!parse_real(s, re)) {
            bad();
        }
        *result = {re, im};
    });
}

void cstk_string_free(char* s) { std::free(s); }

cstk_status cstk_gamma(double x, double* o) {
    return guard([&] { need(o, "output"); *o = cstk::gamma_fn(x); });
}
cstk_status cstk_pochhammer(double a, int k, double* o) {
    return guard([&] { need(o, "output"); *o = cstk::pochhammer(a, k); });
}
cstk_status cstk_laguerre(int n, double alpha, double t, double* o) {
    return guard([&] { need(o, "output"); *o = cstk::laguerre(n, alpha, t); });
}
cstk_status cstk_hermite(int n, double x, double* o) {
    return guard([&] { need(o, "output"); *o = cstk::hermite(n, x); });
}
cstk_status cstk_assoc_hermite(int n, double x, double beta, double* o) {
    return guard([&] { need(o, "output"); *o = cstk::assoc_hermite(n, x, beta); });
}
cstk_status cstk_pcf_d(double nu, cstk_complex z, const cstk_series_control* ctl, cstk_complex* o) {
    return guard([&] { need(o, "output"); *o = out(cstk::pcf_D(nu, in(z), control(ctl))); });
}
cstk_status cstk_hyp_pfq(const double* numer, int p, const double* denom, int q, cstk_complex t,
                         const cstk_series_control* ctl, cstk_complex* o) {
    return guard([&] {
        need(o, "output");
        if (p < 0 || q < 0 || (p > 0 && !numer) || (q > 0 && !denom))
            cstk::fail(cstk::Errc::invalid_argument, "hyp_pfq: bad parameter arrays");
        std::vector<double> a(numer, numer + p), b(denom, denom + q);
        *o = out(cstk::hyp_pfq(a, b, in(t), control(ctl)));
    });
}
cstk_status cstk_mittag_leffler(double alpha, double gamma, double t, const cstk_series_control* ctl, double* o) {
    return guard([&] { need(o, "output"); *o = cstk::mittag_leffler(alpha, gamma, t, control(ctl)); });
}
cstk_status cstk_lauricella_triple(double c, double beta, cstk_complex u, cstk_complex v, cstk_complex w,
                                   const cstk_series_control* ctl, cstk_complex* o) {
    return guard([&] {
        need(o, "output");
        *o = out(cstk::lauricella_triple(c, beta, in(u), in(v), in(w), control(ctl)));
    });
}

cstk_status cstk_measure_gamma(double beta, cstk_measure** o) {
    return guard([&] {
        need(o, "output");
        auto mu = std::make_shared<cstk::GammaMeasure>(beta);
        *o = new cstk_measure{std::move(mu)};
    });
}
cstk_status cstk_measure_tabulated(double beta, const double* s, const double* mu, size_t n, double support_bound,
                                   cstk_measure** o) {
    return guard([&] {
        need(o, "output");
        if (n > 0) {
            need(s, "exponents");
            need(mu, "moments");
        }
        std::vector<std::pair<double, long double>> rec;
        for (size_t i = 0; i < n; ++i) rec.emplace_back(s[i], mu[i]);
        auto m = std::make_shared<cstk::TabulatedMeasure>(beta, std::move(rec), support_bound, "tabulated");
        *o = new cstk_measure{std::move(m)};
    });
}
cstk_status cstk_measure_load(const char* path, double beta, cstk_measure** o) {
    return guard([&] {
        need(path, "path");
        need(o, "output");
        *o = new cstk_measure{cstk::load_moments_file(path, beta)};
    });
}
void cstk_measure_free(cstk_measure* mu) { delete mu; }
cstk_status cstk_measure_beta(const cstk_measure* mu, double* o) {
    return guard([&] { need(o, "output"); *o = deref(mu).beta(); });
}
cstk_status cstk_measure_moment(const cstk_measure* mu, double s, double* o) {
    return guard([&] { need(o, "output"); *o = static_cast<double>(deref(mu).moment(s)); });
}
cstk_status cstk_measure_validate(const cstk_measure* mu, int n_max) {
    return guard([&] { cstk::validate_moments(deref(mu), n_max); });
}
cstk_status cstk_x_seq(const cstk_measure* mu, int n, double* o) {
    return guard([&] { need(o, "output"); *o = cstk::x_seq(deref(mu), n); });
}
cstk_status cstk_hamiltonian_eigen(const cstk_measure* mu, int n, double* o) {
    return guard([&] { need(o, "output"); *o = cstk::hamiltonian_eigen(deref(mu), n); });
}
cstk_status cstk_gen_factorial(const cstk_measure* mu, int n, int m, double* o) {
    return guard([&] { need(o, "output"); *o = cstk::gen_factorial(deref(mu), n, m); });
}
cstk_status cstk_ladder_x(const cstk_measure* mu, int n, int m, double* o) {
    return guard([&] { need(o, "output"); *o = cstk::ladder_x(deref(mu), n, m); });
}
cstk_status cstk_zeta(const cstk_measure* mu, int n, double alpha, double* o) {
    return guard([&] { need(o, "output"); *o = cstk::zeta(deref(mu), n, alpha); });
}
cstk_status cstk_ortho_poly_phi(const cstk_measure* mu, int n, double alpha, double r, double* o) {
    return guard([&] { need(o, "output"); *o = cstk::ortho_poly_phi(deref(mu), n, alpha, r); });
}
cstk_status cstk_radius(const cstk_measure* mu, int m, double* value, int* converged, int* diverging) {
    return guard([&] {
        need(value, "output");
        const auto r = cstk::radius(deref(mu), m);
        *value = r.value;
        if (converged) *converged = r.converged;
        if (diverging) *diverging = r.diverging;
    });
}
cstk_status cstk_domain_inclusion(const cstk_measure* mu, int m, int* included, double* radius) {
    return guard([&] {
        need(included, "output");
        const auto d = cstk::check_domain_inclusion(deref(mu), m);
        *included = d.included;
        if (radius) *radius = d.radius.value;
    });
}

cstk_status cstk_h_poly(int n, int m, double beta, cstk_complex z, cstk_complex* o) {
    return guard([&] { need(o, "output"); *o = out(cstk::h_poly({n, m, beta}, in(z))); });
}
cstk_status cstk_h_poly_expand(int n, int m, double beta, size_t cap, int* a, int* b, cstk_complex* c,
                               size_t* count) {
    return guard([&] {
        need(count, "count");
        const auto e = cstk::h_poly_expand({n, m, beta});
        size_t k = 0;
        for (const auto& [key, v] : e.terms()) {
            if (k < cap) {
                need(a, "exponent array");
                need(b, "exponent array");
                need(c, "coefficient array");
                a[k] = key.first;
                b[k] = key.second;
                c[k] = out(e.coefficient(key.first, key.second));
            }
            ++k;
        }
        *count = k;
    });
}
cstk_status cstk_p_norm(int n, int m, const cstk_measure* mu, cstk_complex z, cstk_complex* o) {
    return guard([&] {
        need(o, "output");
        const auto& M = deref(mu);
        *o = out(cstk::p_norm({n, m, M.beta()}, in(z), M));
    });
}
cstk_status cstk_ito_hermite(int m, int n, cstk_complex z, cstk_complex* o) {
    return guard([&] { need(o, "output"); *o = out(cstk::ito_hermite(m, n, in(z))); });
}
cstk_status cstk_landau_apply_h(double beta, int n, int m, cstk_complex z, cstk_complex* o) {
    return guard([&] {
        need(o, "output");
        *o = out(cstk::landau_apply(beta, cstk::h_poly_expand({n, m, beta}), in(z)));
    });
}
cstk_status cstk_ladder_apply(cstk_ladder which, int n, int m, const cstk_measure* mu, int* annihilated,
                              double* coefficient, int* target_n, int* target_m) {
    return guard([&] {
        need(annihilated, "output");
        need(coefficient, "output");
        cstk::Ladder l;
        switch (which) {
            case CSTK_LOWER1: l = cstk::Ladder::lower1; break;
            case CSTK_RAISE1: l = cstk::Ladder::raise1; break;
            case CSTK_LOWER2: l = cstk::Ladder::lower2; break;
            case CSTK_RAISE2: l = cstk::Ladder::raise2; break;
            default: cstk::fail(cstk::Errc::invalid_argument, "unknown ladder operator");
        }
        const auto& M = deref(mu);
        const auto r = cstk::ladder_apply(l, {n, m, M.beta()}, M);
        *annihilated = r.annihilated;
        *coefficient = r.coefficient;
        if (target_n) *target_n = r.target.n;
        if (target_m) *target_m = r.target.m;
    });
}

cstk_status cstk_gnlcs_coeff(int n, int m, double beta, cstk_complex z, const cstk_series_control* ctl,
                             cstk_complex* o) {
    return guard([&] { need(o, "output"); *o = out(cstk::gnlcs_coeff(n, {in(z), m, beta, control(ctl)})); });
}
cstk_status cstk_norm_series(int m, double beta, cstk_complex z, const cstk_series_control* ctl, double* o) {
    return guard([&] { need(o, "output"); *o = cstk::norm_series({in(z), m, beta, control(ctl)}); });
}
cstk_status cstk_norm_closed_m0(double beta, double t, const cstk_series_control* ctl, double* o) {
    return guard([&] { need(o, "output"); *o = cstk::norm_closed_m0(beta, t, control(ctl)); });
}
cstk_status cstk_overlap_closed(int m, double beta, cstk_complex z, cstk_complex w, const cstk_series_control* ctl,
                                cstk_complex* o) {
    return guard([&] { need(o, "output"); *o = out(cstk::overlap_closed(in(z), in(w), m, beta, control(ctl))); });
}
cstk_status cstk_overlap_series(int m, double beta, cstk_complex z, cstk_complex w, const cstk_series_control* ctl,
                                cstk_complex* o) {
    return guard([&] { need(o, "output"); *o = out(cstk::overlap_series(in(z), in(w), m, beta, control(ctl))); });
}
cstk_status cstk_kernel_k(cstk_complex z, cstk_complex w, double beta, const cstk_series_control* ctl,
                          cstk_complex* o) {
    return guard([&] { need(o, "output"); *o = out(cstk::kernel_K(in(z), in(w), beta, control(ctl))); });
}
cstk_status cstk_eta_density(cstk_complex z, int m, double beta, const cstk_series_control* ctl, double* o) {
    return guard([&] { need(o, "output"); *o = cstk::eta_density(in(z), m, beta, control(ctl)); });
}

cstk_status cstk_gauss_laguerre(int n, double alpha, double* nodes, double* weights) {
    return guard([&] {
        need(nodes, "nodes");
        need(weights, "weights");
        const auto r = cstk::gauss_laguerre(n, alpha);
        std::copy(r.nodes.begin(), r.nodes.end(), nodes);
        std::copy(r.weights.begin(), r.weights.end(), weights);
    });
}
cstk_status cstk_gauss_hermite(int n, double* nodes, double* weights) {
    return guard([&] {
        need(nodes, "nodes");
        need(weights, "weights");
        const auto r = cstk::gauss_hermite(n);
        std::copy(r.nodes.begin(), r.nodes.end(), nodes);
        std::copy(r.weights.begin(), r.weights.end(), weights);
    });
}

cstk_status cstk_omega_weight(double x, double beta, const cstk_series_control* ctl, double* o) {
    return guard([&] { need(o, "output"); *o = cstk::omega_weight(x, beta, control(ctl)); });
}
cstk_status cstk_basis_phi(int n, double x, double beta, double* o) {
    return guard([&] { need(o, "output"); *o = cstk::basis_phi(n, x, beta); });
}
cstk_status cstk_kernel_b(int m, double beta, cstk_complex z, double x, const cstk_series_control* ctl,
                          cstk_complex* o, int* extrapolated) {
    return guard([&] {
        need(o, "output");
        const auto k = cstk::kernel_B_eval(m, beta, in(z), x, control(ctl));
        *o = out(k.value);
        if (extrapolated) *extrapolated = k.extrapolated;
    });
}
cstk_status cstk_kernel_b_analytic(double beta, cstk_complex z, double x, const cstk_series_control* ctl,
                                   cstk_complex* o) {
    return guard([&] { need(o, "output"); *o = out(cstk::kernel_B_analytic(beta, in(z), x, control(ctl))); });
}
cstk_status cstk_kernel_b_true_poly(int m, cstk_complex z, double x, cstk_complex* o) {
    return guard([&] { need(o, "output"); *o = out(cstk::kernel_B_true_poly(m, in(z), x)); });
}

cstk_status cstk_function_from_grid(double beta, const double* xs, const double* ys, size_t n, cstk_function** o) {
    return guard([&] {
        need(o, "output");
        need(xs, "xs");
        need(ys, "ys");
        *o = new cstk_function{cstk::SampledFunction::from_grid(beta, {xs, xs + n}, {ys, ys + n})};
    });
}
cstk_status cstk_function_from_coefficients(double beta, const double* c, size_t n, cstk_function** o) {
    return guard([&] {
        need(o, "output");
        need(c, "coefficients");
        *o = new cstk_function{cstk::SampledFunction::from_coefficients(beta, {c, c + n})};
    });
}
cstk_status cstk_function_load(const char* path, cstk_function** o) {
    return guard([&] {
        need(path, "path");
        need(o, "output");
        *o = new cstk_function{cstk::SampledFunction::load(path)};
    });
}
void cstk_function_free(cstk_function* f) { delete f; }
cstk_status cstk_function_beta(const cstk_function* f, double* o) {
    return guard([&] {
        need(f, "function");
        need(o, "output");
        *o = f->f.beta();
    });
}
cstk_status cstk_function_eval(const cstk_function* f, double x, double* o) {
    return guard([&] {
        need(f, "function");
        need(o, "output");
        *o = f->f(x);
    });
}
cstk_status cstk_transform(const cstk_function* f, int m, double beta, const cstk_complex* targets, size_t n,
                           int degree_hint, const cstk_series_control* ctl, int jobs, cstk_complex* o) {
    return guard([&] {
        need(f, "function");
        if (n > 0) {
            need(targets, "targets");
            need(o, "output");
        }
        const auto c = control(ctl);
        const auto rule = cstk::omega_rule(beta, degree_hint, 1e-12, c);
        std::vector<cstk::cplx> zs(n);
        for (size_t i = 0; i < n; ++i) zs[i] = in(targets[i]);
        const auto v = cstk::apply_transform(f->f, m, beta, zs, rule, c, cstk::ShellRoute::hermite_shells, jobs);
        for (size_t i = 0; i < n; ++i) o[i] = out(v[i]);
    });
}

size_t cstk_check_count(int include_extra) {
    return cstk::default_check_names().size() + (include_extra ? cstk::extra_check_names().size() : 0);
}
const char* cstk_check_name(size_t i) {
    const auto& d = cstk::default_check_names();
    const auto& e = cstk::extra_check_names();
    if (i < d.size()) return d[i].c_str();
    if (i < d.size() + e.size()) return e[i - d.size()].c_str();
    return nullptr;
}

cstk_status cstk_verify_config_new(cstk_verify_config** o) {
    return guard([&] {
        need(o, "output");
        *o = new cstk_verify_config{};
    });
}
void cstk_verify_config_free(cstk_verify_config* cfg) { delete cfg; }
cstk_status cstk_verify_config_set_control(cstk_verify_config* cfg, const cstk_series_control* ctl) {
    return guard([&] {
        need(cfg, "config");
        cfg->cfg.ctl = control(ctl);
    });
}
cstk_status cstk_verify_config_set_grid(cstk_verify_config* cfg, int n_r, int n_theta) {
    return guard([&] {
        need(cfg, "config");
        if (n_r < 1 || n_theta < 1) cstk::fail(cstk::Errc::invalid_argument, "grid sizes must be positive");
        cfg->cfg.n_r = n_r;
        cfg->cfg.n_theta = n_theta;
    });
}
cstk_status cstk_verify_config_set_seed(cstk_verify_config* cfg, unsigned long long seed) {
    return guard([&] {
        need(cfg, "config");
        cfg->cfg.seed = seed;
    });
}
cstk_status cstk_verify_config_set_jobs(cstk_verify_config* cfg, int jobs) {
    return guard([&] {
        need(cfg, "config");
        if (jobs < 1) cstk::fail(cstk::Errc::invalid_argument, "jobs must be positive");
        cfg->cfg.jobs = jobs;
    });
}
cstk_status cstk_verify_config_set_mmax(cstk_verify_config* cfg, int mmax) {
    return guard([&] {
        need(cfg, "config");
        cfg->cfg.mmax = mmax;
    });
}
cstk_status cstk_verify_config_set_nmax(cstk_verify_config* cfg, int nmax) {
    return guard([&] {
        need(cfg, "config");
        cfg->cfg.nmax = nmax;
    });
}
cstk_status cstk_verify_config_set_samples(cstk_verify_config* cfg, int samples) {
    return guard([&] {
        need(cfg, "config");
        cfg->cfg.samples = samples;
    });
}
cstk_status cstk_verify_config_set_betas(cstk_verify_config* cfg, const double* betas, size_t n) {
    return guard([&] {
        need(cfg, "config");
        if (n == 0) {
            cfg->cfg.betas.reset();
            return;
        }
        need(betas, "betas");
        cfg->cfg.betas = std::vector<double>(betas, betas + n);
    });
}
cstk_status cstk_verify_config_set_tolerance(cstk_verify_config* cfg, const char* key, double tol) {
    return guard([&] {
        need(cfg, "config");
        need(key, "key");
        if (!(tol >= 0)) cstk::fail(cstk::Errc::invalid_argument, "tolerance must be non-negative");
        cfg->cfg.tolerances[key] = tol;
    });
}

cstk_status cstk_verify_run(const char* name, const cstk_verify_config* cfg, cstk_report** o) {
    return guard([&] {
        need(name, "name");
        need(o, "output");
        const cstk::VerifyConfig c = cfg ? cfg->cfg : cstk::VerifyConfig{};
        *o = new cstk_report{cstk::run_check(name, c)};
    });
}
cstk_status cstk_verify_run_many(const char* const* names, size_t n, const cstk_verify_config* cfg,
                                 cstk_report** o) {
    return guard([&] {
        if (n == 0) return;
        need(names, "names");
        need(o, "output");
        std::vector<std::string> list;
        for (size_t i = 0; i < n; ++i) {
            need(names[i], "name");
            list.emplace_back(names[i]);
        }
        const cstk::VerifyConfig c = cfg ? cfg->cfg : cstk::VerifyConfig{};
        auto reports = cstk::run_checks(list, c);
        for (size_t i = 0; i < n; ++i) o[i] = new cstk_report{std::move(reports[i])};
    });
}
void cstk_report_free(cstk_report* r) { delete r; }
int cstk_report_pass(const cstk_report* r) { return r && r->report.pass ? 1 : 0; }
const char* cstk_report_check(const cstk_report* r) { return r ? r->report.check.c_str() : nullptr; }
double cstk_report_runtime(const cstk_report* r) { return r ? r->report.runtime_seconds : 0.0; }
cstk_status cstk_report_json(const cstk_report* r, int include_timing, char** o) {
    return guard([&] {
        need(r, "report");
        need(o, "output");
        const std::string s = r->report.to_json(include_timing != 0).dump(2);
        char* buf = static_cast<char*>(std::malloc(s.size() + 1));
        if (!buf) throw std::bad_alloc();
        std::memcpy(buf, s.c_str(), s.size() + 1);
        *o = buf;
    });
}

}  // extern "C"
