#pragma once

// Weight-shell enumeration of the triple series
//   sum_{n,k,j} (1)_{n+2k+j} (beta)_j u^n/n! v^k/k! w^j/j!  (times a shell weight g(n+2k+2j)).
// Both shell sources produce T(d), the sum of all terms with n+2k+2j = d.

#include <cmath>
#include <string>
#include <vector>

#include "cstk/detail/precision.hpp"
#include "cstk/error.hpp"
#include "cstk/specfun.hpp"

namespace cstk::detail {

// Largest shell index whose factorials stay inside the binary128 range.
inline constexpr int kMaxShell = 1700;

// Direct enumeration. The inner (n,k) sum with n+2k = e does not depend on j, so
// T(d) = sum_j (d-j)! (beta)_j w^j/j! C(d-2j) with C(e) = sum_{n+2k=e} u^n/n! v^k/k!.
class LauricellaShells {
public:
    LauricellaShells(quad beta, qcomplex u, qcomplex v, qcomplex w)
        : beta_(beta), u_(u), v_(v), w_(w) {}

    qcomplex next() {
        const int d = static_cast<int>(c_.size());
        fact_.push_back(d == 0 ? quad(1) : fact_.back() * quad(d));
        upow_.push_back(d == 0 ? qcomplex(1) : upow_.back() * u_ / quad(d));
        if (d % 2 == 0) {
            const int k = d / 2;
            vpow_.push_back(k == 0 ? qcomplex(1) : vpow_.back() * v_ / quad(k));
            apow_.push_back(k == 0 ? qcomplex(1)
                                   : apow_.back() * w_ * ((beta_ + quad(k - 1)) / quad(k)));
        }
        qcomplex ce;
        for (int k = 0; 2 * k <= d; ++k) ce += upow_[d - 2 * k] * vpow_[k];
        c_.push_back(ce);

        qcomplex t;
        for (int j = 0; 2 * j <= d; ++j) t += (apow_[j] * c_[d - 2 * j]) * fact_[d - j];
        return t;
    }

private:
    quad beta_;
    qcomplex u_, v_, w_;
    std::vector<quad> fact_;
    std::vector<qcomplex> upow_, vpow_, apow_, c_;
};

// On the curve u = 2xt, v = -t^2, w = -2t^2 the shells collapse to t^d H_d(x, beta),
// which the associated Hermite recurrence produces directly.
class HermiteShells {
public:
    HermiteShells(quad beta, quad x, qcomplex t) : beta_(beta), two_xt_(t * (2 * x)), t2_(t * t) {}

    qcomplex next() {
        qcomplex g;
        if (d_ == 0)
            g = qcomplex(1);
        else if (d_ == 1)
            g = two_xt_;
        else
            g = two_xt_ * g1_ - t2_ * g0_ * (2 * (quad(d_ - 1) + beta_));
        g0_ = g1_;
        g1_ = g;
        ++d_;
        return g;
    }

private:
    quad beta_;
    qcomplex two_xt_, t2_;
    qcomplex g0_, g1_;
    int d_ = 0;
};

// Shell index below which the tail test is not trusted (terms may still be growing).
inline int shell_floor(double au, double av, double aw) {
    return static_cast<int>(std::ceil(au + 2.0 * av + 2.0 * aw)) + 2;
}

// Sums T(d) g(d) shell by shell. Stops once two consecutive shell contributions fall
// below rel_tol of the running magnitude (plus abs_tol), never before `floor`.
template <class Shells, class Weight>
qcomplex sum_shells(Shells& shells, Weight&& g, int floor, const SeriesControl& ctl,
                    const char* what) {
    const int limit = std::min(ctl.max_terms, kMaxShell);
    qcomplex sum;
    long double prev = -1;
    for (int d = 0; d < limit; ++d) {
        qcomplex term = shells.next() * g(d);
        sum += term;
        long double a = term.abs();
        long double bound = static_cast<long double>(ctl.rel_tol) * sum.abs() + ctl.abs_tol;
        if (d >= floor && prev >= 0 && a <= bound && prev <= bound) return sum;
        prev = a;
    }
    fail(Errc::not_converged, std::string(what) + ": shell limit " + std::to_string(limit) +
                                  " reached before the tail tolerance was met");
}

}  // namespace cstk::detail
