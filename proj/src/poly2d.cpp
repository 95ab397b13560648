#include "cstk/poly2d.hpp"

#include <cmath>
#include <string>

#include "cstk/detail/precision.hpp"
#include "cstk/error.hpp"

namespace cstk {

namespace {

void check_index(const ModeIndex& idx) {
    if (idx.n < 0 || idx.m < 0) fail(Errc::invalid_argument, "mode index must be non-negative");
    if (!(idx.beta >= 0)) fail(Errc::invalid_argument, "beta must be non-negative");
}

cplx ipow(cplx z, int k) {
    cplx r = 1;
    for (int i = 0; i < k; ++i) r *= z;
    return r;
}

// x_{n,m} with the x_0 = 0 convention.
double x_or_zero(const MomentMeasure& mu, int n, int m) { return n == 0 ? 0.0 : ladder_x(mu, n, m); }

}  // namespace

PolyExpansion::PolyExpansion(std::map<Key, Coef> terms) : terms_(std::move(terms)) {
    for (const auto& [k, c] : terms_)
        if (k.first < 0 || k.second < 0) fail(Errc::invalid_argument, "negative exponent in expansion");
}

cplx PolyExpansion::coefficient(int a, int b) const {
    auto it = terms_.find({a, b});
    return it == terms_.end() ? cplx{} : cplx(static_cast<double>(it->second.real()), static_cast<double>(it->second.imag()));
}

cplx PolyExpansion::evaluate(cplx z) const {
    std::complex<long double> s = 0;
    const std::complex<long double> zz(z), zb = std::conj(zz);
    for (const auto& [k, c] : terms_) {
        std::complex<long double> t = c;
        for (int i = 0; i < k.first; ++i) t *= zz;
        for (int i = 0; i < k.second; ++i) t *= zb;
        s += t;
    }
    return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

cplx h_poly(const ModeIndex& idx, cplx z) {
    check_index(idx);
    const long double u = std::norm(z);
    const int lo = idx.lo();
    long double l = detail::laguerre_t<long double>(lo, idx.diff() + static_cast<long double>(idx.beta), u);
    if (lo % 2) l = -l;
    cplx p = idx.n >= idx.m ? ipow(z, idx.n - idx.m) : ipow(std::conj(z), idx.m - idx.n);
    return p * static_cast<double>(l);
}

// (1/m!) sum_k binom(m,k) (beta+1)_n/(beta+1)_{n-k} (-1)^k z^{n-k} zbar^{m-k} for n >= m,
// and the exponent swap for n < m.
PolyExpansion h_poly_expand(const ModeIndex& idx) {
    check_index(idx);
    const bool swap = idx.n < idx.m;
    const int n = swap ? idx.m : idx.n;
    const int m = swap ? idx.n : idx.m;
    std::map<PolyExpansion::Key, PolyExpansion::Coef> terms;
    const long double mfact = detail::factorial_t<long double>(m);
    for (int k = 0; k <= m; ++k) {
        long double binom = mfact / (detail::factorial_t<long double>(k) * detail::factorial_t<long double>(m - k));
        long double ratio = detail::pochhammer_t<long double>(idx.beta + n - k + 1, k);
        long double c = binom * ratio / mfact;
        if (k % 2) c = -c;
        PolyExpansion::Key key = swap ? PolyExpansion::Key{m - k, n - k} : PolyExpansion::Key{n - k, m - k};
        terms[key] = c;
    }
    return PolyExpansion(std::move(terms));
}

cplx p_norm(const ModeIndex& idx, cplx z, const MomentMeasure& mu) {
    check_index(idx);
    if (std::fabs(idx.beta - mu.beta()) > 1e-15 * (1 + mu.beta()))
        fail(Errc::invalid_argument, "p_norm: index beta differs from the measure's beta");
    const int lo = idx.lo();
    const double alpha = idx.diff() + idx.beta;
    cplx p = ipow(z, idx.n - lo) * ipow(std::conj(z), idx.m - lo);
    double phi = ortho_poly_phi(mu, lo, alpha, std::norm(z));
    return p * (phi / std::sqrt(zeta(mu, lo, alpha)));
}

cplx ito_hermite(int m, int n, cplx z) {
    ModeIndex idx{m, n, 0.0};
    return h_poly(idx, z) * static_cast<double>(detail::factorial_t<long double>(idx.lo()));
}

LadderResult ladder_apply(Ladder which, const ModeIndex& idx, const MomentMeasure& mu) {
    check_index(idx);
    LadderResult r;
    r.target = idx;
    switch (which) {
        case Ladder::lower1:
            if (idx.n == 0) {
                r.annihilated = true;
                return r;
            }
            r.coefficient = std::sqrt(ladder_x(mu, idx.n, idx.m));
            r.target.n -= 1;
            break;
        case Ladder::raise1:
            r.coefficient = std::sqrt(ladder_x(mu, idx.n + 1, idx.m));
            r.target.n += 1;
            break;
        case Ladder::lower2:
            if (idx.m == 0) {
                r.annihilated = true;
                return r;
            }
            r.coefficient = std::sqrt(ladder_x(mu, idx.m, idx.n));
            r.target.m -= 1;
            break;
        case Ladder::raise2:
            r.coefficient = std::sqrt(ladder_x(mu, idx.m + 1, idx.n));
            r.target.m += 1;
            break;
    }
    return r;
}

// z^a zbar^b -> b z^a zbar^b - b(a+beta) z^{a-1} zbar^{b-1}. The z^{-1} zbar^{b-1} images
// (a = 0, beta != 0) are stored with exponent a = -1 in a side map.
namespace {
struct LandauTerms {
    std::map<PolyExpansion::Key, PolyExpansion::Coef> regular;
    std::map<int, PolyExpansion::Coef> inverse_z;  // b-1 -> coefficient of z^{-1} zbar^{b-1}
};

LandauTerms landau_terms(double beta, const PolyExpansion& p) {
    LandauTerms out;
    for (const auto& [k, c] : p.terms()) {
        const int a = k.first, b = k.second;
        if (b == 0) continue;
        out.regular[{a, b}] += c * static_cast<long double>(b);
        const PolyExpansion::Coef low = -c * (static_cast<long double>(b) * (a + static_cast<long double>(beta)));
        if (low == PolyExpansion::Coef{}) continue;
        if (a >= 1)
            out.regular[{a - 1, b - 1}] += low;
        else
            out.inverse_z[b - 1] += low;
    }
    return out;
}
}  // namespace

PolyExpansion landau_image(double beta, const PolyExpansion& p) {
    LandauTerms t = landau_terms(beta, p);
    if (!t.inverse_z.empty())
        fail(Errc::invalid_argument, "landau_image: the image contains z^{-1} terms");
    return PolyExpansion(std::move(t.regular));
}

cplx landau_apply(double beta, const PolyExpansion& p, cplx z) {
    LandauTerms t = landau_terms(beta, p);
    cplx s = PolyExpansion(t.regular).evaluate(z);
    if (!t.inverse_z.empty()) {
        if (z == cplx{}) fail(Errc::pole, "landau_apply: z = 0 with a surviving beta/z term");
        std::map<PolyExpansion::Key, PolyExpansion::Coef> rest;
        for (const auto& [b, c] : t.inverse_z) rest[{0, b}] = c;
        s += PolyExpansion(std::move(rest)).evaluate(z) / z;
    }
    return s;
}

std::vector<LandauRow> landau_comparison(const MomentMeasure& mu, int nmax, int mmax) {
    std::vector<LandauRow> rows;
    for (int n = 0; n <= nmax; ++n)
        for (int m = 0; m <= mmax; ++m) {
            LandauRow r;
            r.n = n;
            r.m = m;
            r.swapped = 0.5 * (x_or_zero(mu, m + 1, n) + x_or_zero(mu, m, n));
            r.composed = 0.5 * (x_or_zero(mu, n, m) + x_or_zero(mu, n + 1, m));
            r.differential = m + mu.beta() + 0.5;
            rows.push_back(r);
        }
    return rows;
}

}  // namespace cstk
