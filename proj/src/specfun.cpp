#include "cstk/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cstk/detail/precision.hpp"
#include "cstk/detail/shells.hpp"
#include "cstk/error.hpp"

namespace cstk {

using detail::cld;

namespace {

bool is_nonpositive_integer(long double x) { return x <= 0 && x == std::floor(x); }

long double rgamma_ext(long double x) {
    if (is_nonpositive_integer(x)) return 0;
    long double g = std::tgamma(x);
    if (std::isinf(g)) return 0;
    return 1.0L / g;
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void SeriesControl::validate() const {
    if (!(rel_tol > 0) || !std::isfinite(rel_tol))
        fail(Errc::invalid_argument, "rel_tol must be positive, got " + num(rel_tol));
    if (!(abs_tol >= 0) || !std::isfinite(abs_tol))
        fail(Errc::invalid_argument, "abs_tol must be non-negative, got " + num(abs_tol));
    if (max_terms < 1)
        fail(Errc::invalid_argument, "max_terms must be at least 1, got " + std::to_string(max_terms));
}

double gamma_fn(double x) {
    if (is_nonpositive_integer(x)) fail(Errc::pole, "gamma_fn: pole at x = " + num(x));
    return std::tgamma(x);
}

double rgamma(double x) { return static_cast<double>(rgamma_ext(x)); }

double pochhammer(double a, int k) {
    if (k < 0) fail(Errc::invalid_argument, "pochhammer: negative k");
    return static_cast<double>(detail::pochhammer_t<long double>(a, k));
}

double laguerre(int n, double alpha, double t) {
    if (n < 0) fail(Errc::invalid_argument, "laguerre: negative degree");
    return static_cast<double>(detail::laguerre_t<long double>(n, alpha, t));
}

double hermite(int n, double x) {
    if (n < 0) fail(Errc::invalid_argument, "hermite: negative degree");
    return static_cast<double>(detail::assoc_hermite_t<long double>(n, x, 0.0L));
}

double assoc_hermite(int n, double x, double beta) {
    if (n < 0) fail(Errc::invalid_argument, "assoc_hermite: negative degree");
    return static_cast<double>(detail::assoc_hermite_t<long double>(n, x, beta));
}

cplx pcf_D(double nu, cplx z, const SeriesControl& ctl) {
    ctl.validate();
    const cld y = cld(z) / std::sqrt(2.0L);
    const int k_min = static_cast<int>(std::fabs(nu) + std::norm(z)) + 2;
    detail::CompensatedComplexSum sum;
    cld p = 1;  // (-nu)_k / k! * y^k
    long double prev = -1;
    bool done = false;
    for (int k = 0; k < ctl.max_terms; ++k) {
        cld term = p * rgamma_ext((k - static_cast<long double>(nu) + 1) / 2);
        if (k % 2) term = -term;
        sum.add(term);
        long double a = std::abs(term);
        long double bound = ctl.rel_tol * std::abs(sum.value()) + ctl.abs_tol;
        if (k >= k_min && prev >= 0 && a <= bound && prev <= bound) {
            done = true;
            break;
        }
        prev = a;
        p *= y * ((static_cast<long double>(k) - nu) / (k + 1));
    }
    if (!done) fail(Errc::not_converged, "pcf_D: max_terms exhausted");
    const cld zz(z);
    cld pref = std::exp(-zz * zz / 4.0L) * std::pow(2.0L, nu / 2.0L) *
               std::sqrt(static_cast<long double>(M_PIl));
    cld r = pref * sum.value();
    return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

// With z = i x sqrt2 the standard even/odd decomposition of D_{-beta}, after Kummer's
// transformation 1F1(a;b;-s) = e^{-s} 1F1(b-a;b;s), gives
//   |D|^2 = 2^{-beta} pi e^{-x^2} (A^2 + 4 x^2 B^2),
//   A = 1F1(1/2-beta/2; 1/2; x^2)/Gamma((1+beta)/2),  B = 1F1(1-beta/2; 3/2; x^2)/Gamma(beta/2).
double pcf_D_inv_sq_imag(double beta, double x, const SeriesControl& ctl) {
    const long double s = static_cast<long double>(x) * x;
    const long double b = beta;
    long double a = hyp_pfq_ext({0.5 - beta / 2}, {0.5}, s, ctl).real() * rgamma_ext((1 + b) / 2);
    long double bb = 0;
    if (rgamma_ext(b / 2) != 0)
        bb = hyp_pfq_ext({1 - beta / 2}, {1.5}, s, ctl).real() * rgamma_ext(b / 2);
    long double bracket = a * a + 4 * s * bb * bb;
    long double mod2 = std::pow(2.0L, -b) * M_PIl * std::exp(-s) * bracket;
    return static_cast<double>(1.0L / mod2);
}

std::complex<long double> hyp_pfq_ext(const std::vector<double>& numer,
                                      const std::vector<double>& denom,
                                      std::complex<long double> t, const SeriesControl& ctl) {
    ctl.validate();
    if (numer.size() > 2 || denom.size() > 2)
        fail(Errc::invalid_argument, "hyp_pfq: at most two numerator and two denominator parameters");
    for (double b : denom)
        if (is_nonpositive_integer(b))
            fail(Errc::pole, "hyp_pfq: denominator parameter " + num(b) + " is a non-positive integer");

    detail::CompensatedComplexSum sum;
    cld term = 1;
    long double prev = -1;
    for (int k = 0; k < ctl.max_terms; ++k) {
        sum.add(term);
        long double ratio = 1;
        for (double a : numer) ratio *= (a + k);
        for (double b : denom) ratio /= (b + k);
        ratio /= (k + 1);
        if (ratio == 0 || (term.real() == 0 && term.imag() == 0 && k > 0)) return sum.value();
        long double a = std::abs(term);
        long double bound = ctl.rel_tol * std::abs(sum.value()) + ctl.abs_tol;
        bool decaying = std::fabs(ratio) * std::abs(t) < 1;
        if (decaying && prev >= 0 && a <= bound && prev <= bound) return sum.value();
        prev = a;
        term *= t * ratio;
    }
    fail(Errc::not_converged, "hyp_pfq: max_terms exhausted");
}

cplx hyp_pfq(const std::vector<double>& numer, const std::vector<double>& denom, cplx t,
             const SeriesControl& ctl) {
    cld r = hyp_pfq_ext(numer, denom, cld(t), ctl);
    return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

double mittag_leffler(double alpha, double gamma, double t, const SeriesControl& ctl) {
    ctl.validate();
    if (!(alpha > 0) || !(gamma > 0))
        fail(Errc::invalid_argument, "mittag_leffler: alpha and gamma must be positive");
    const int n_min = static_cast<int>(std::pow(std::fabs(t), 1.0 / alpha) / alpha) + 2;
    detail::CompensatedSum<long double> sum;
    long double tp = 1;
    long double prev = -1;
    for (int n = 0; n < ctl.max_terms; ++n) {
        long double term = tp * rgamma_ext(static_cast<long double>(alpha) * n + gamma);
        sum.add(term);
        long double a = std::fabs(term);
        long double bound = ctl.rel_tol * std::fabs(sum.value()) + ctl.abs_tol;
        if (n >= n_min && prev >= 0 && a <= bound && prev <= bound)
            return static_cast<double>(sum.value());
        prev = a;
        tp *= t;
    }
    fail(Errc::not_converged, "mittag_leffler: max_terms exhausted");
}

cplx lauricella_triple(double c, double beta, cplx u, cplx v, cplx w, const SeriesControl& ctl) {
    ctl.validate();
    if (is_nonpositive_integer(c))
        fail(Errc::pole, "lauricella_triple: denominator parameter c = " + num(c) +
                             " is a non-positive integer");
    using detail::quad;
    detail::LauricellaShells shells(beta, detail::qcomplex(u), detail::qcomplex(v),
                                    detail::qcomplex(w));
    quad poch = 1;
    int last = 0;
    auto weight = [&](int d) {
        for (; last < d; ++last) poch *= quad(c) + quad(last);
        return quad(1) / poch;
    };
    int floor = detail::shell_floor(std::abs(u), std::abs(v), std::abs(w));
    return detail::sum_shells(shells, weight, floor, ctl, "lauricella_triple").to_cd();
}

}  // namespace cstk
