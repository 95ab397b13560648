#include "cstk/coherent.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cstk/detail/precision.hpp"
#include "cstk/error.hpp"

namespace cstk {

using detail::cld;

namespace {

void check(int m, double beta) {
    if (m < 0) fail(Errc::invalid_argument, "m must be non-negative");
    if (!(beta >= 0) || !std::isfinite(beta)) fail(Errc::invalid_argument, "beta must be non-negative");
}

cplx to_cd(const cld& z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

cld coeff_ext(int n, int m, long double beta, const cld& z) {
    const int lo = std::min(n, m), hi = std::max(n, m);
    const cld zb = std::conj(z);
    long double l = detail::laguerre_t<long double>(lo, hi - lo + beta, std::norm(z));
    if (lo % 2) l = -l;
    // conj(H_{n,m}(z)): zbar^{n-m} for n >= m, z^{m-n} otherwise.
    cld p = 1;
    const cld base = n >= m ? zb : z;
    for (int i = 0; i < hi - lo; ++i) p *= base;
    long double g = std::tgamma(beta + 1) * detail::pochhammer_t<long double>(beta + 1, hi) /
                    detail::factorial_t<long double>(lo);
    return p * (l / std::sqrt(g));
}

// Sums f(n) over n >= 0 until two consecutive terms are negligible past n_min.
template <class F>
cld sum_terms(F&& f, int n_min, const SeriesControl& ctl, const char* what) {
    detail::CompensatedComplexSum s;
    long double prev = -1;
    for (int n = 0; n < ctl.max_terms; ++n) {
        cld t = f(n);
        s.add(t);
        long double a = std::abs(t);
        long double bound = ctl.rel_tol * std::abs(s.value()) + ctl.abs_tol;
        if (n >= n_min && prev >= 0 && a <= bound && prev <= bound) return s.value();
        prev = a;
    }
    fail(Errc::not_converged, std::string(what) + ": max_terms exhausted");
}

int series_floor(double u, int m) { return static_cast<int>(u) + m + 2; }

}  // namespace

cplx gnlcs_coeff(int n, const CoherentSpec& spec) {
    check(spec.m, spec.beta);
    if (n < 0) fail(Errc::invalid_argument, "gnlcs_coeff: negative n");
    return to_cd(coeff_ext(n, spec.m, spec.beta, cld(spec.z)));
}

double norm_series(const CoherentSpec& spec) {
    check(spec.m, spec.beta);
    spec.truncation.validate();
    const cld z(spec.z);
    auto term = [&](int n) { return cld(std::norm(coeff_ext(n, spec.m, spec.beta, z))); };
    cld s = sum_terms(term, series_floor(std::norm(spec.z), spec.m), spec.truncation, "norm_series");
    return static_cast<double>(s.real());
}

double norm_closed_m0(double beta, double t, const SeriesControl& ctl) {
    check(0, beta);
    cld f = hyp_pfq_ext({beta}, {beta + 1}, cld(-t), ctl);
    return static_cast<double>(std::exp(static_cast<long double>(t)) * f.real());
}

double norm_power_series_m0(double beta, double t, const SeriesControl& ctl) {
    check(0, beta);
    ctl.validate();
    long double term = 1;
    auto f = [&](int n) {
        if (n > 0) term *= t / (beta + n);
        return cld(term);
    };
    return static_cast<double>(sum_terms(f, series_floor(std::fabs(t), 0), ctl, "norm_power_series_m0").real());
}

cplx overlap_bracket(cplx z, cplx w, int m, double beta, const SeriesControl& ctl) {
    check(m, beta);
    const cld zz(z), ww(w);
    const long double uz = std::norm(zz), uw = std::norm(ww);
    const long double b = beta;
    const long double gamma_b1 = std::tgamma(b + 1);

    detail::CompensatedComplexSum finite;
    const cld zbw = std::conj(zz) * ww;
    for (int j = 0; j < m; ++j) {
        long double a = b + m - j;
        cld p = 1;
        for (int i = 0; i < m - j; ++i) p *= zbw;
        long double lz = detail::laguerre_t<long double>(j, a, uz);
        long double lw = detail::laguerre_t<long double>(j, a, uw);
        finite.add(p * (detail::factorial_t<long double>(j) * lz * lw));
    }
    const long double gamma_bm1 = gamma_b1 * detail::pochhammer_t<long double>(b + 1, m);

    // The double sum cancels by up to ~u^{2m}; its 2F2 factors are summed well below ctl.rel_tol.
    SeriesControl inner = ctl;
    inner.rel_tol = std::max(ctl.rel_tol * 1e-6, static_cast<double>(std::numeric_limits<long double>::epsilon()));
    detail::CompensatedComplexSum dbl;
    const cld arg = zz * std::conj(ww);
    for (int k = 0; k <= m; ++k)
        for (int l = 0; l <= m; ++l) {
            long double c = detail::pochhammer_t<long double>(-m, k) * detail::pochhammer_t<long double>(-m, l) *
                            std::pow(uz, static_cast<long double>(k)) * std::pow(uw, static_cast<long double>(l)) /
                            (detail::factorial_t<long double>(k) * detail::factorial_t<long double>(l) *
                             detail::pochhammer_t<long double>(b + 1, k) *
                             detail::pochhammer_t<long double>(b + 1, l));
            dbl.add(c * hyp_pfq_ext({1.0, m + beta + 1}, {k + beta + 1, l + beta + 1}, arg, inner));
        }
    const long double pref = detail::pochhammer_t<long double>(b + 1, m) /
                             (detail::factorial_t<long double>(m) * gamma_b1);
    return to_cd(finite.value() / gamma_bm1 + pref * dbl.value());
}

cplx overlap_closed(cplx z, cplx w, int m, double beta, const SeriesControl& ctl) {
    cplx br = overlap_bracket(z, w, m, beta, ctl);
    double nz = norm_series({z, m, beta, ctl});
    double nw = norm_series({w, m, beta, ctl});
    return br / std::sqrt(nz * nw);
}

cplx overlap_series(cplx z, cplx w, int m, double beta, const SeriesControl& ctl) {
    check(m, beta);
    ctl.validate();
    const cld zz(z), ww(w);
    auto term = [&](int n) { return std::conj(coeff_ext(n, m, beta, zz)) * coeff_ext(n, m, beta, ww); };
    const double u = std::max(std::norm(z), std::norm(w));
    cld s = sum_terms(term, series_floor(u, m), ctl, "overlap_series");
    double nz = norm_series({z, m, beta, ctl});
    double nw = norm_series({w, m, beta, ctl});
    return to_cd(s) / std::sqrt(nz * nw);
}

cplx kernel_K(cplx z, cplx w, double beta, const SeriesControl& ctl) {
    check(0, beta);
    const cld t = cld(z) * std::conj(cld(w));
    cld f = hyp_pfq_ext({beta}, {beta + 1}, -t, ctl);
    return to_cd(std::exp(t) * f / std::tgamma(static_cast<long double>(beta) + 1));
}

double eta_density(cplx z, int m, double beta, const SeriesControl& ctl) {
    const double u = std::norm(z);
    const double bracket = overlap_bracket(z, z, m, beta, ctl).real();
    return bracket * std::pow(u, beta) * std::exp(-u);
}

}  // namespace cstk
