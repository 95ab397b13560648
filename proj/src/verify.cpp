#include "cstk/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include "cstk/coherent.hpp"
#include "cstk/error.hpp"
#include "cstk/measures.hpp"
#include "cstk/poly2d.hpp"
#include "cstk/quadrature.hpp"
#include "cstk/transforms.hpp"

namespace cstk {

using json = nlohmann::ordered_json;
using cld = std::complex<long double>;

namespace {

constexpr double kPi = std::numbers::pi;

double nan_max(double a, double b) {
    if (std::isnan(a) || std::isnan(b)) return std::numeric_limits<double>::quiet_NaN();
    return a > b ? a : b;
}

// Doubles from raw 64-bit draws, so the sample points do not depend on the
// standard library's distribution implementation.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : gen_(seed) {}
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1p-53; }
    double uniform(double a, double b) { return a + (b - a) * unit(); }
    cplx disc(double rmin, double rmax) {
        const double r = uniform(rmin, rmax);
        const double th = uniform(0.0, 2 * kPi);
        return std::polar(r, th);
    }

private:
    std::mt19937_64 gen_;
};

enum class Mode { rel, abs };

class ReportBuilder {
public:
    ReportBuilder(std::string check, const VerifyConfig& cfg)
        : cfg_(cfg), start_(std::chrono::steady_clock::now()) {
        report_.check = std::move(check);
        report_.seed = cfg.seed;
    }

    json& params() { return report_.params; }
    json& details() { return report_.details; }

    void criterion(const std::string& name, Mode mode, double value, double fallback) {
        const double tol = cfg_.tol(report_.check, name, fallback);
        if (report_.criteria.empty()) report_.tolerance = tol;
        report_.criteria.push_back({name, value, tol, value <= tol});
        if (mode == Mode::rel)
            report_.max_rel_err = nan_max(report_.max_rel_err, value);
        else
            report_.max_abs_err = nan_max(report_.max_abs_err, value);
    }

    VerificationReport finish(bool informational = false) {
        report_.informational = informational;
        report_.pass = informational || std::all_of(report_.criteria.begin(), report_.criteria.end(),
                                                    [](const Criterion& c) { return c.pass; });
        report_.runtime_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        return std::move(report_);
    }

private:
    const VerifyConfig& cfg_;
    std::chrono::steady_clock::time_point start_;
    VerificationReport report_;
};

void put_series(json& p, const SeriesControl& ctl) {
    p["rel_tol"] = ctl.rel_tol;
    p["abs_tol"] = ctl.abs_tol;
    p["max_terms"] = ctl.max_terms;
}

void require(bool ok, const std::string& msg) {
    if (!ok) fail(Errc::invalid_argument, msg);
}

void require_betas(const std::vector<double>& betas, const std::string& check) {
    require(!betas.empty(), check + ": empty beta list");
    for (double b : betas) require(std::isfinite(b) && b >= 0, check + ": beta must be finite and >= 0");
}

cld to_ld(cplx z) { return {z.real(), z.imag()}; }

}  // namespace

double VerifyConfig::tol(const std::string& check, const std::string& criterion, double fallback) const {
    auto it = tolerances.find(check + "." + criterion);
    return it == tolerances.end() ? fallback : it->second;
}

json VerificationReport::to_json(bool include_timing) const {
    json j;
    j["check"] = check;
    j["params"] = params;
    j["max_abs_err"] = max_abs_err;
    j["max_rel_err"] = max_rel_err;
    j["tolerance"] = tolerance;
    j["pass"] = pass;
    j["runtime_seconds"] = include_timing ? runtime_seconds : 0.0;
    j["seed"] = seed;
    json crit = json::array();
    for (const auto& c : criteria)
        crit.push_back(json{{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass}});
    j["criteria"] = std::move(crit);
    if (informational) j["informational"] = true;
    if (!details.empty()) j["details"] = details;
    return j;
}

VerificationReport check_orthogonality_2d(const std::vector<double>& betas, int nmax, const VerifyConfig& cfg) {
    require_betas(betas, "orthogonality-2d");
    require(nmax >= 0 && nmax <= 8, "orthogonality-2d: nmax must lie in [0, 8]");
    ReportBuilder rb("orthogonality-2d", cfg);
    rb.params()["betas"] = betas;
    rb.params()["nmax"] = nmax;
    rb.params()["n_r"] = cfg.n_r;
    rb.params()["n_theta"] = cfg.n_theta;

    std::vector<std::pair<int, int>> idx;
    for (int j = 0; j <= nmax; ++j)
        for (int n = 0; n <= nmax; ++n) idx.emplace_back(j, n);
    const std::size_t K = idx.size();

    double diag_err = 0, off_err = 0;
    json per_beta = json::array();
    for (double beta : betas) {
        const QuadratureRule rule = polar_rule(cfg.n_r, cfg.n_theta, beta);
        std::vector<cld> gram(K * K, cld(0));
        std::vector<cld> vals(K);
        for (std::size_t p = 0; p < rule.size(); ++p) {
            for (std::size_t a = 0; a < K; ++a) vals[a] = to_ld(h_poly({idx[a].first, idx[a].second, beta}, rule.points[p]));
            const long double w = rule.weights[p];
            for (std::size_t a = 0; a < K; ++a) {
                const cld wa = w * vals[a];
                for (std::size_t b = a; b < K; ++b) gram[a * K + b] += wa * std::conj(vals[b]);
            }
        }
        std::vector<double> expect(K);
        for (std::size_t a = 0; a < K; ++a) {
            const int hi = std::max(idx[a].first, idx[a].second), lo = std::min(idx[a].first, idx[a].second);
            expect[a] = kPi * std::tgamma(beta + hi + 1) / std::tgamma(lo + 1.0);
        }
        double d = 0, o = 0;
        for (std::size_t a = 0; a < K; ++a)
            for (std::size_t b = a; b < K; ++b) {
                const cld g = gram[a * K + b];
                if (a == b)
                    d = nan_max(d, static_cast<double>(std::abs(g - static_cast<long double>(expect[a]))) / expect[a]);
                else
                    o = nan_max(o, static_cast<double>(std::abs(g)) / std::sqrt(expect[a] * expect[b]));
            }
        diag_err = nan_max(diag_err, d);
        off_err = nan_max(off_err, o);
        per_beta.push_back(json{{"beta", beta}, {"diag_rel", d}, {"offdiag_rel", o}});
    }
    rb.details()["per_beta"] = std::move(per_beta);
    rb.criterion("diag_rel", Mode::rel, diag_err, 1e-8);
    rb.criterion("offdiag_rel", Mode::rel, off_err, 1e-10);
    return rb.finish();
}

VerificationReport check_assoc_hermite(const std::vector<double>& betas, int nmax, const VerifyConfig& cfg) {
    require_betas(betas, "assoc-hermite");
    require(nmax >= 0 && nmax <= 5, "assoc-hermite: nmax must lie in [0, 5]");
    ReportBuilder rb("assoc-hermite", cfg);
    const double rule_tol = 1e-12;
    rb.params()["betas"] = betas;
    rb.params()["nmax"] = nmax;
    rb.params()["line_rel_tol"] = rule_tol;
    put_series(rb.params(), cfg.ctl);

    double diag = 0, off = 0, zero = 0;
    bool have_pos = false, have_zero = false;
    json per_beta = json::array();
    for (double beta : betas) {
        const QuadratureRule rule = omega_rule(beta, nmax, rule_tol, cfg.ctl);
        const double scale = std::sqrt(kPi) * std::tgamma(beta + 1);
        std::vector<double> expect(nmax + 1);
        for (int n = 0; n <= nmax; ++n) expect[n] = std::ldexp(std::sqrt(kPi) * std::tgamma(n + beta + 1), n);
        double d = 0, o = 0;
        for (int n = 0; n <= nmax; ++n)
            for (int k = n; k <= nmax; ++k) {
                const long double s = rule.integrate_line([&](double x) {
                    return static_cast<long double>(assoc_hermite(n, x, beta)) * assoc_hermite(k, x, beta);
                });
                const double I = static_cast<double>(s) * scale;
                if (n == k)
                    d = nan_max(d, std::fabs(I - expect[n]) / expect[n]);
                else
                    o = nan_max(o, std::fabs(I) / std::sqrt(expect[n] * expect[k]));
            }
        if (beta == 0) {
            have_zero = true;
            zero = nan_max(zero, nan_max(d, o));
        } else {
            have_pos = true;
            diag = nan_max(diag, d);
            off = nan_max(off, o);
        }
        per_beta.push_back(json{{"beta", beta}, {"nodes", rule.size()}, {"half_width", rule.domain.half_width},
                                {"diag_rel", d}, {"offdiag_rel", o}});
    }
    rb.details()["per_beta"] = std::move(per_beta);
    if (have_pos) {
        rb.criterion("diag_rel", Mode::rel, diag, 1e-6);
        rb.criterion("offdiag_rel", Mode::rel, off, 1e-6);
    }
    if (have_zero) rb.criterion("hermite_beta0", Mode::rel, zero, 1e-10);
    return rb.finish();
}

VerificationReport check_kummer_normalization(const std::vector<double>& betas, const std::vector<double>& ts,
                                              const VerifyConfig& cfg) {
    require_betas(betas, "kummer-normalization");
    require(!ts.empty(), "kummer-normalization: empty t list");
    ReportBuilder rb("kummer-normalization", cfg);
    rb.params()["betas"] = betas;
    rb.params()["ts"] = ts;
    put_series(rb.params(), cfg.ctl);

    double worst = 0;
    json at = nullptr;
    for (double beta : betas)
        for (double t : ts) {
            const double a = norm_closed_m0(beta, t, cfg.ctl);
            const double b = norm_power_series_m0(beta, t, cfg.ctl);
            const double c = std::tgamma(beta + 1) * mittag_leffler(1.0, beta + 1, t, cfg.ctl);
            const double scale = std::max({std::fabs(a), std::fabs(b), std::fabs(c)});
            const double e = std::max({std::fabs(a - b), std::fabs(a - c), std::fabs(b - c)}) / scale;
            if (!(e <= worst)) {
                worst = nan_max(worst, e);
                at = json{{"beta", beta}, {"t", t}};
            }
        }
    rb.details()["worst_at"] = at;
    rb.criterion("three_way_rel", Mode::rel, worst, 1e-11);
    return rb.finish();
}

VerificationReport check_generating_function(const std::vector<double>& betas, const std::vector<double>& cs,
                                             const std::vector<double>& xs, const std::vector<cplx>& ts,
                                             const VerifyConfig& cfg) {
    require_betas(betas, "generating-function");
    require(!cs.empty() && !xs.empty() && !ts.empty(), "generating-function: empty parameter list");
    for (cplx t : ts) require(std::abs(t) <= 0.6, "generating-function: |t| must be <= 0.6");
    ReportBuilder rb("generating-function", cfg);
    rb.params()["betas"] = betas;
    rb.params()["cs"] = cs;
    rb.params()["xs"] = xs;
    json tj = json::array();
    for (cplx t : ts) tj.push_back(json::array({t.real(), t.imag()}));
    rb.params()["ts"] = std::move(tj);
    put_series(rb.params(), cfg.ctl);

    double worst = 0;
    for (double beta : betas)
        for (double c : cs)
            for (double x : xs)
                for (cplx t : ts) {
                    const cplx lhs = lauricella_triple(c, beta, 2.0 * x * t, -t * t, -2.0 * t * t, cfg.ctl);
                    // sum_n t^n H_n(x, beta)/(c)_n with the three-term recurrence
                    const cld tl = to_ld(t);
                    long double hm = 0, h = 1, poch = 1;
                    cld tp = 1, sum = 0;
                    int quiet = 0;
                    for (int n = 0; n < 400 && quiet < 3; ++n) {
                        const cld term = tp * (h / poch);
                        sum += term;
                        quiet = std::abs(term) <= 1e-19L * std::abs(sum) ? quiet + 1 : 0;
                        const long double hn = 2 * x * h - 2 * (n + static_cast<long double>(beta)) * hm;
                        hm = h;
                        h = hn;
                        poch *= c + n;
                        tp *= tl;
                    }
                    const cplx rhs(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
                    worst = nan_max(worst, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300));
                }
    rb.criterion("rel", Mode::rel, worst, 1e-9);
    return rb.finish();
}

VerificationReport check_kernel_reduction(int mmax, int samples, const VerifyConfig& cfg) {
    require(mmax >= 0 && mmax <= 8, "kernel-reduction: mmax must lie in [0, 8]");
    require(samples >= 1, "kernel-reduction: samples must be positive");
    ReportBuilder rb("kernel-reduction", cfg);
    rb.params()["mmax"] = mmax;
    rb.params()["samples"] = samples;
    rb.params()["beta"] = 0.0;
    rb.params()["z_radius"] = json::array({0.2, 3.0});
    rb.params()["x_range"] = json::array({-3.0, 3.0});
    put_series(rb.params(), cfg.ctl);

    double worst = 0;
    json per_m = json::array();
    for (int m = 0; m <= mmax; ++m) {
        Sampler rng(cfg.seed + static_cast<std::uint64_t>(m));
        double e = 0;
        for (int s = 0; s < samples; ++s) {
            const cplx z = rng.disc(0.2, 3.0);
            const double x = rng.uniform(-3.0, 3.0);
            const cplx series = kernel_B(m, 0.0, z, x, cfg.ctl, ShellRoute::triple_series);
            const cplx closed = kernel_B_true_poly(m, z, x);
            e = nan_max(e, std::abs(series - closed) / std::abs(closed));
        }
        worst = nan_max(worst, e);
        per_m.push_back(json{{"m", m}, {"rel", e}});
    }
    rb.details()["per_m"] = std::move(per_m);
    rb.criterion("rel", Mode::rel, worst, 1e-8);
    return rb.finish();
}

VerificationReport check_overlap(int mmax, int samples, const VerifyConfig& cfg) {
    require(mmax >= 0 && mmax <= 4, "overlap: mmax must lie in [0, 4]");
    require(samples >= 1, "overlap: samples must be positive");
    const std::vector<double> betas = cfg.betas.value_or(std::vector<double>{0.0, 0.5, 1.7});
    require_betas(betas, "overlap");
    ReportBuilder rb("overlap", cfg);
    rb.params()["mmax"] = mmax;
    rb.params()["samples"] = samples;
    rb.params()["betas"] = betas;
    rb.params()["z_radius"] = json::array({0.0, 2.0});
    put_series(rb.params(), cfg.ctl);

    double pair = 0, diag = 0, norm = 0;
    for (double beta : betas)
        for (int m = 0; m <= mmax; ++m) {
            Sampler rng(cfg.seed + 1000 * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(beta * 64));
            for (int s = 0; s < samples; ++s) {
                const cplx z = rng.disc(0.0, 2.0), w = rng.disc(0.0, 2.0);
                const cplx closed = overlap_closed(z, w, m, beta, cfg.ctl);
                const cplx series = overlap_series(z, w, m, beta, cfg.ctl);
                pair = nan_max(pair, std::abs(closed - series) / std::max(std::abs(series), 1e-300));
                diag = nan_max(diag, std::abs(overlap_closed(z, z, m, beta, cfg.ctl) - 1.0));
                const double ns = norm_series({z, m, beta, cfg.ctl});
                const double nb = overlap_bracket(z, z, m, beta, cfg.ctl).real();
                norm = nan_max(norm, std::fabs(ns - nb) / ns);
            }
        }
    rb.criterion("closed_vs_series", Mode::rel, pair, 1e-8);
    rb.criterion("diagonal", Mode::abs, diag, 1e-9);
    rb.criterion("norm_vs_bracket", Mode::rel, norm, 1e-9);
    return rb.finish();
}

VerificationReport check_pde_eigen(const std::vector<double>& betas, int nmax, int samples, const VerifyConfig& cfg) {
    require_betas(betas, "pde-eigen");
    require(nmax >= 0 && nmax <= 8, "pde-eigen: nmax must lie in [0, 8]");
    require(samples >= 1, "pde-eigen: samples must be positive");
    ReportBuilder rb("pde-eigen", cfg);
    rb.params()["betas"] = betas;
    rb.params()["nmax"] = nmax;
    rb.params()["samples"] = samples;
    rb.params()["z_radius"] = json::array({0.2, 3.0});

    double worst = 0;
    for (double beta : betas)
        for (int n = 0; n <= nmax; ++n)
            for (int m = 0; m <= n; ++m) {
                const ModeIndex idx{n, m, beta};
                const PolyExpansion image = landau_image(beta, h_poly_expand(idx));
                Sampler rng(cfg.seed + 97 * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(m));
                for (int s = 0; s < samples; ++s) {
                    const cplx z = rng.disc(0.2, 3.0);
                    const cplx h = h_poly(idx, z);
                    const cplx lhs = image.evaluate(z);
                    worst = nan_max(worst, std::abs(lhs - static_cast<double>(m) * h) / (1 + std::abs(h)));
                }
            }
    rb.criterion("residual", Mode::abs, worst, 1e-10);
    return rb.finish();
}

VerificationReport check_transform(int mmax, const std::vector<double>& betas, int nmax, const VerifyConfig& cfg) {
    require_betas(betas, "transform");
    require(mmax >= 0 && mmax <= 3, "transform: mmax must lie in [0, 3]");
    require(nmax >= 0 && nmax <= 3, "transform: nmax must lie in [0, 3]");
    const int n_r = 8, n_theta = 16, hint = 8;
    const double line_tol = 1e-12;
    ReportBuilder rb("transform", cfg);
    rb.params()["mmax"] = mmax;
    rb.params()["betas"] = betas;
    rb.params()["nmax"] = nmax;
    rb.params()["target_n_r"] = n_r;
    rb.params()["target_n_theta"] = n_theta;
    rb.params()["line_degree_hint"] = hint;
    rb.params()["line_rel_tol"] = line_tol;
    put_series(rb.params(), cfg.ctl);

    double point = 0, gram = 0;
    json per = json::array();
    for (double beta : betas) {
        const QuadratureRule line = omega_rule(beta, hint, line_tol, cfg.ctl);
        const QuadratureRule plane = polar_rule(n_r, n_theta, beta);
        const GammaMeasure mu(beta);
        std::vector<SampledFunction> basis;
        for (int n = 0; n <= nmax; ++n) {
            std::vector<double> c(n + 1, 0.0);
            c[n] = 1.0;
            basis.push_back(SampledFunction::from_coefficients(beta, c));
        }
        for (int m = 0; m <= mmax; ++m) {
            const auto img = apply_transform_many(basis, m, beta, plane.points, line, cfg.ctl,
                                                  ShellRoute::hermite_shells, cfg.jobs);
            double pe = 0, ge = 0;
            for (int n = 0; n <= nmax; ++n)
                for (std::size_t t = 0; t < plane.size(); ++t) {
                    const cplx ref = p_norm({n, m, beta}, plane.points[t], mu);
                    pe = nan_max(pe, std::abs(img[n][t] - ref) / std::max(std::abs(ref), 1.0));
                }
            for (int a = 0; a <= nmax; ++a)
                for (int b = 0; b <= nmax; ++b) {
                    cld g = 0;
                    for (std::size_t t = 0; t < plane.size(); ++t)
                        g += static_cast<long double>(plane.weights[t]) * to_ld(img[a][t]) * std::conj(to_ld(img[b][t]));
                    g /= static_cast<long double>(kPi);
                    ge = nan_max(ge, static_cast<double>(std::abs(g - cld(a == b ? 1 : 0))));
                }
            point = nan_max(point, pe);
            gram = nan_max(gram, ge);
            per.push_back(json{{"beta", beta}, {"m", m}, {"line_nodes", line.size()}, {"pointwise", pe}, {"gram", ge}});
        }
    }
    rb.details()["per_case"] = std::move(per);
    rb.criterion("pointwise", Mode::rel, point, 1e-5);
    rb.criterion("gram", Mode::abs, gram, 1e-5);
    return rb.finish();
}

VerificationReport check_resolution_identity(int mmax, const std::vector<double>& betas, int nmax,
                                             const VerifyConfig& cfg) {
    require_betas(betas, "resolution-identity");
    require(mmax >= 0 && mmax <= 2, "resolution-identity: mmax must lie in [0, 2]");
    require(nmax >= 0 && nmax <= 4, "resolution-identity: nmax must lie in [0, 4]");
    ReportBuilder rb("resolution-identity", cfg);
    rb.params()["mmax"] = mmax;
    rb.params()["betas"] = betas;
    rb.params()["nmax"] = nmax;
    rb.params()["n_r"] = cfg.n_r;
    rb.params()["n_theta"] = cfg.n_theta;
    put_series(rb.params(), cfg.ctl);

    const int K = nmax + 1;
    double worst = 0;
    json per = json::array();
    for (double beta : betas) {
        const QuadratureRule radial = gauss_laguerre(cfg.n_r, beta);
        for (int m = 0; m <= mmax; ++m) {
            std::vector<cld> M(K * K, cld(0));
            std::vector<cld> c(K);
            for (std::size_t i = 0; i < radial.size(); ++i) {
                const double u = radial.nodes[i];
                const cplx zr(std::sqrt(u), 0.0);
                const double N = norm_series({zr, m, beta, cfg.ctl});
                // eta / (u^beta e^{-u}) recovers the radial factor the Laguerre weight already carries
                const double ratio = eta_density(zr, m, beta, cfg.ctl) / (std::pow(u, beta) * std::exp(-u));
                const long double w = static_cast<long double>(radial.weights[i]) / cfg.n_theta * ratio / N;
                for (int j = 0; j < cfg.n_theta; ++j) {
                    const cplx z = std::polar(std::sqrt(u), 2 * kPi * j / cfg.n_theta);
                    for (int n = 0; n < K; ++n) c[n] = to_ld(gnlcs_coeff(n, {z, m, beta, cfg.ctl}));
                    for (int k = 0; k < K; ++k)
                        for (int n = 0; n < K; ++n) M[k * K + n] += w * std::conj(c[k]) * c[n];
                }
            }
            double e = 0;
            for (int k = 0; k < K; ++k)
                for (int n = 0; n < K; ++n)
                    e = nan_max(e, static_cast<double>(std::abs(M[k * K + n] - cld(k == n ? 1 : 0))));
            worst = nan_max(worst, e);
            per.push_back(json{{"beta", beta}, {"m", m}, {"max_abs", e}});
        }
    }
    rb.details()["per_case"] = std::move(per);
    rb.criterion("matrix_abs", Mode::abs, worst, 1e-6);
    return rb.finish();
}

VerificationReport check_density_positivity(int mmax, const std::vector<double>& betas, int grid_points,
                                            const VerifyConfig& cfg) {
    require_betas(betas, "density-positivity");
    require(mmax >= 0 && mmax <= 4, "density-positivity: mmax must lie in [0, 4]");
    require(grid_points >= 2, "density-positivity: at least two grid points");
    ReportBuilder rb("density-positivity", cfg);
    const double r0 = 1e-2, r1 = 6.0;
    rb.params()["mmax"] = mmax;
    rb.params()["betas"] = betas;
    rb.params()["grid_points"] = grid_points;
    rb.params()["radius"] = json::array({r0, r1});
    put_series(rb.params(), cfg.ctl);

    double global = std::numeric_limits<double>::infinity();
    json per = json::array();
    for (double beta : betas)
        for (int m = 0; m <= mmax; ++m) {
            double lo = std::numeric_limits<double>::infinity(), at = r0;
            for (int i = 0; i < grid_points; ++i) {
                const double r = r0 * std::pow(r1 / r0, static_cast<double>(i) / (grid_points - 1));
                const double v = eta_density({r, 0.0}, m, beta, cfg.ctl);
                if (std::isnan(v) || v < lo) {
                    lo = v;
                    at = r;
                }
            }
            global = std::isnan(lo) ? lo : std::min(global, lo);
            per.push_back(json{{"beta", beta}, {"m", m}, {"min_density", lo}, {"at_radius", at}});
        }
    rb.details()["per_case"] = std::move(per);
    rb.details()["min_density"] = global;
    // Reported as the amount by which the minimum falls below zero.
    rb.criterion("negativity", Mode::abs, std::isnan(global) ? global : std::max(0.0, -global), 1e-12);
    return rb.finish();
}

VerificationReport check_quadrature(const VerifyConfig& cfg) {
    ReportBuilder rb("quadrature", cfg);
    const std::vector<int> ns{1, 2, 5, 10, 20, 40, 64};
    const std::vector<double> alphas{-0.5, 0.0, 0.5, 2.3};
    rb.params()["sizes"] = ns;
    rb.params()["laguerre_alphas"] = alphas;
    rb.params()["n_r"] = cfg.n_r;
    rb.params()["n_theta"] = cfg.n_theta;

    double lag = 0, her = 0, mass = 0, ang = 0;
    bool positive = true;
    for (int n : ns) {
        for (double a : alphas) {
            const QuadratureRule r = gauss_laguerre(n, a);
            for (double w : r.weights) positive = positive && w > 0;
            mass = nan_max(mass, std::fabs(r.mass() - std::tgamma(a + 1)) / std::tgamma(a + 1));
            for (int k = 0; k <= 2 * n - 1; ++k) {
                const long double s = r.integrate_line([&](double u) { return std::pow(static_cast<long double>(u), k); });
                const long double ex = std::tgamma(static_cast<long double>(k + a + 1));
                lag = nan_max(lag, static_cast<double>(std::fabs(s - ex) / ex));
            }
        }
        const QuadratureRule h = gauss_hermite(n);
        for (double w : h.weights) positive = positive && w > 0;
        mass = nan_max(mass, std::fabs(h.mass() - std::sqrt(kPi)) / std::sqrt(kPi));
        for (int k = 0; k <= 2 * n - 1; ++k) {
            const long double s = h.integrate_line([&](double x) { return std::pow(static_cast<long double>(x), k); });
            const long double scale = h.integrate_line([&](double x) { return std::pow(std::fabs(static_cast<long double>(x)), k); });
            const long double ex = k % 2 ? 0.0L : std::tgamma((k + 1) / 2.0L);
            her = nan_max(her, static_cast<double>(std::fabs(s - ex) / (scale > 0 ? scale : 1.0L)));
        }
    }
    for (double beta : {0.0, 0.5, 2.3}) {
        const QuadratureRule p = polar_rule(cfg.n_r, cfg.n_theta, beta);
        const double ex = kPi * std::tgamma(beta + 1);
        mass = nan_max(mass, std::fabs(p.mass() - ex) / ex);
        for (int k = 1; k < cfg.n_theta; ++k) {
            const cld s = p.integrate_polar([&](cplx z) { return to_ld(std::pow(z / std::abs(z), k)); });
            ang = nan_max(ang, static_cast<double>(std::abs(s)) / ex);
        }
    }
    rb.criterion("laguerre_exactness", Mode::rel, lag, 1e-13);
    rb.criterion("hermite_exactness", Mode::rel, her, 1e-13);
    rb.criterion("mass", Mode::rel, mass, 1e-13);
    rb.criterion("angular", Mode::abs, ang, 1e-13);
    rb.criterion("positive_weights", Mode::abs, positive ? 0.0 : 1.0, 0.0);
    return rb.finish();
}

VerificationReport landau_compare(const std::vector<double>& betas, int nmax, const VerifyConfig& cfg) {
    require_betas(betas, "landau-compare");
    require(nmax >= 0 && nmax <= 20, "landau-compare: nmax must lie in [0, 20]");
    ReportBuilder rb("landau-compare", cfg);
    rb.params()["betas"] = betas;
    rb.params()["nmax"] = nmax;
    json rows = json::array();
    for (double beta : betas) {
        const GammaMeasure mu(beta);
        for (const auto& r : landau_comparison(mu, nmax, nmax))
            rows.push_back(json{{"beta", beta}, {"n", r.n}, {"m", r.m}, {"swapped", r.swapped},
                                {"composed", r.composed}, {"differential", r.differential}});
    }
    rb.details()["rows"] = std::move(rows);
    return rb.finish(true);
}

const std::vector<std::string>& default_check_names() {
    static const std::vector<std::string> names{
        "orthogonality-2d", "assoc-hermite", "kummer-normalization", "generating-function", "kernel-reduction",
        "overlap",          "pde-eigen",     "transform",            "resolution-identity", "density-positivity"};
    return names;
}

const std::vector<std::string>& extra_check_names() {
    static const std::vector<std::string> names{"quadrature", "landau-compare"};
    return names;
}

VerificationReport run_check(const std::string& name, const VerifyConfig& cfg) {
    auto betas = [&](std::vector<double> d) { return cfg.betas.value_or(std::move(d)); };
    if (name == "orthogonality-2d") return check_orthogonality_2d(betas({0.0, 0.5, 2.3}), cfg.nmax.value_or(6), cfg);
    if (name == "assoc-hermite") return check_assoc_hermite(betas({0.0, 1.0, 1.7}), cfg.nmax.value_or(5), cfg);
    if (name == "kummer-normalization") {
        std::vector<double> ts;
        for (int i = 0; i <= 40; ++i) ts.push_back(0.25 * i);
        return check_kummer_normalization(betas({0.0, 0.5, 1.0, 2.3}), ts, cfg);
    }
    if (name == "generating-function") {
        const std::vector<cplx> ts{{0, 0},     {0.1, 0},    {-0.3, 0},  {0.4, 0},    {0.5, 0},
                                   {0, 0.4},   {0.3, 0.4},  {-0.35, 0.2}, {0.25, -0.25}, {-0.1, -0.45}};
        return check_generating_function(betas({0.0, 1.2}), {1.0, 2.2}, {0.0, 0.3, 1.0}, ts, cfg);
    }
    if (name == "kernel-reduction") return check_kernel_reduction(cfg.mmax.value_or(8), cfg.samples.value_or(100), cfg);
    if (name == "overlap") return check_overlap(cfg.mmax.value_or(4), cfg.samples.value_or(25), cfg);
    if (name == "pde-eigen") return check_pde_eigen(betas({0.0, 0.5, 2.3}), cfg.nmax.value_or(8), cfg.samples.value_or(50), cfg);
    if (name == "transform") return check_transform(cfg.mmax.value_or(3), betas({0.0, 1.0}), cfg.nmax.value_or(3), cfg);
    if (name == "resolution-identity")
        return check_resolution_identity(cfg.mmax.value_or(2), betas({0.0, 1.0}), cfg.nmax.value_or(4), cfg);
    if (name == "density-positivity")
        return check_density_positivity(cfg.mmax.value_or(4), betas({0.0, 0.5, 2.0}), cfg.samples.value_or(200), cfg);
    if (name == "quadrature") return check_quadrature(cfg);
    if (name == "landau-compare") return landau_compare(betas({0.0, 0.5, 2.3}), cfg.nmax.value_or(4), cfg);
    fail(Errc::unknown_check, "unknown verification suite '" + name + "'");
}

std::vector<VerificationReport> run_checks(const std::vector<std::string>& names, const VerifyConfig& cfg) {
    for (const auto& n : names) {
        const auto& d = default_check_names();
        const auto& e = extra_check_names();
        if (std::find(d.begin(), d.end(), n) == d.end() && std::find(e.begin(), e.end(), n) == e.end())
            fail(Errc::unknown_check, "unknown verification suite '" + n + "'");
    }
    std::vector<VerificationReport> out(names.size());
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(cfg.jobs > 0 ? cfg.jobs : 1, names.size()));
    if (workers <= 1 || names.size() <= 1) {
        for (std::size_t i = 0; i < names.size(); ++i) out[i] = run_check(names[i], cfg);
        return out;
    }
    VerifyConfig inner = cfg;
    inner.jobs = 1;
    std::vector<std::exception_ptr> errors(names.size());
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < names.size(); i += workers) {
                try {
                    out[i] = run_check(names[i], inner);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace cstk
