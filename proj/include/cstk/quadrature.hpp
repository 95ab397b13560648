#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "cstk/specfun.hpp"

namespace cstk {

struct Domain {
    enum class Kind { half_line, real_line, polar };
    Kind kind = Kind::real_line;
    double alpha = 0.0;  // half_line exponent, or polar beta
    int n_r = 0;
    int n_theta = 0;
    double half_width = 0.0;  // truncation of an adaptive real_line rule, 0 if untruncated
};

namespace detail {
template <class R>
struct scalar_type { using type = R; };
template <class T>
struct scalar_type<std::complex<T>> { using type = T; };
}  // namespace detail

template <class R>
auto scalar_of(double w) { return static_cast<typename detail::scalar_type<R>::type>(w); }

struct QuadratureRule {
    Domain domain;
    std::vector<double> nodes;  // line rules
    std::vector<cplx> points;   // polar rules
    std::vector<double> weights;

    std::size_t size() const { return weights.size(); }
    double mass() const;

    template <class F>
    auto integrate_line(F&& f) const {
        using R = decltype(f(0.0));
        R s{};
        for (std::size_t i = 0; i < weights.size(); ++i) s += f(nodes[i]) * scalar_of<R>(weights[i]);
        return s;
    }
    template <class F>
    auto integrate_polar(F&& f) const {
        using R = decltype(f(cplx{}));
        R s{};
        for (std::size_t i = 0; i < weights.size(); ++i) s += f(points[i]) * scalar_of<R>(weights[i]);
        return s;
    }
};

// Rule for u^alpha e^{-u} on (0, inf).
QuadratureRule gauss_laguerre(int n, double alpha);
// Rule for e^{-x^2} on the real line.
QuadratureRule gauss_hermite(int n);
// Rule for (z zbar)^beta e^{-z zbar} dx dy: Gauss-Laguerre in u = r^2 times the
// uniform trapezoid in theta. Total mass pi Gamma(beta+1).
QuadratureRule polar_rule(int n_r, int n_theta, double beta);

// Truncated trapezoid rule for an arbitrary positive weight on the real line. The
// cut X is the first half-integer with w(+-X)(1+X)^{2N} < 1e-16 (N = degree_hint);
// the step is halved until every moment of degree <= 2N agrees with the previous
// level to rel_tol.
QuadratureRule adaptive_line(const std::function<double(double)>& weight, double rel_tol,
                             int degree_hint);

}  // namespace cstk
