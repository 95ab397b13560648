#include "cstk/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "cstk/detail/precision.hpp"
#include "cstk/error.hpp"

namespace cstk {

namespace {

// Golub-Welsch for a Jacobi matrix with diagonal a[k] and off-diagonal b[k] (b[k] couples
// k-1 and k, b[0] unused). Nodes are polished by Newton on the recurrence and weights
// come from the Christoffel function, which stays positive and overflow-free.
void golub_welsch(int n, const std::vector<double>& a, const std::vector<double>& b, double mass,
                  std::vector<double>& nodes, std::vector<double>& weights) {
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(std::max(n - 1, 1));
    for (int k = 0; k < n; ++k) diag(k) = a[k];
    for (int k = 1; k < n; ++k) sub(k - 1) = b[k];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub.head(std::max(n - 1, 0)), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) fail(Errc::not_converged, "Golub-Welsch eigensolver failed");

    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        long double x = es.eigenvalues()(i);
        for (int it = 0; it < 4; ++it) {
            long double p0 = 0, p1 = 1, d0 = 0, d1 = 0;
            for (int k = 0; k < n; ++k) {
                long double bk = k > 0 ? b[k] : 0;
                long double bn = k + 1 < n ? b[k + 1] : 1;
                long double p2 = ((x - a[k]) * p1 - bk * p0) / bn;
                long double d2 = (p1 + (x - a[k]) * d1 - bk * d0) / bn;
                p0 = p1; p1 = p2; d0 = d1; d1 = d2;
            }
            if (d1 == 0) break;
            long double dx = p1 / d1;
            if (std::fabs(dx) > 1e-6L * (1 + std::fabs(x))) break;
            x -= dx;
            if (std::fabs(dx) <= 1e-19L * (1 + std::fabs(x))) break;
        }
        nodes[i] = static_cast<double>(x);

        long double p0 = 0, p1 = 1.0L / std::sqrt(static_cast<long double>(mass));
        long double s = p1 * p1;
        for (int k = 0; k + 1 < n; ++k) {
            long double bk = k > 0 ? b[k] : 0;
            long double p2 = ((x - a[k]) * p1 - bk * p0) / b[k + 1];
            p0 = p1; p1 = p2;
            s += p1 * p1;
        }
        weights[i] = static_cast<double>(1.0L / s);
    }
}

}  // namespace

double QuadratureRule::mass() const {
    detail::CompensatedSum<long double> s;
    for (double w : weights) s.add(w);
    return static_cast<double>(s.value());
}

QuadratureRule gauss_laguerre(int n, double alpha) {
    if (n < 1) fail(Errc::invalid_argument, "gauss_laguerre: n must be at least 1");
    if (!(alpha > -1)) fail(Errc::invalid_argument, "gauss_laguerre: alpha must exceed -1");
    std::vector<double> a(n), b(n, 0.0);
    for (int k = 0; k < n; ++k) a[k] = 2.0 * k + alpha + 1;
    for (int k = 1; k < n; ++k) b[k] = std::sqrt(k * (k + alpha));
    QuadratureRule r;
    r.domain.kind = Domain::Kind::half_line;
    r.domain.alpha = alpha;
    golub_welsch(n, a, b, std::tgamma(alpha + 1), r.nodes, r.weights);
    return r;
}

QuadratureRule gauss_hermite(int n) {
    if (n < 1) fail(Errc::invalid_argument, "gauss_hermite: n must be at least 1");
    std::vector<double> a(n, 0.0), b(n, 0.0);
    for (int k = 1; k < n; ++k) b[k] = std::sqrt(k / 2.0);
    QuadratureRule r;
    r.domain.kind = Domain::Kind::real_line;
    golub_welsch(n, a, b, std::sqrt(M_PI), r.nodes, r.weights);
    return r;
}

QuadratureRule polar_rule(int n_r, int n_theta, double beta) {
    if (n_r < 1 || n_theta < 1) fail(Errc::invalid_argument, "polar_rule: sizes must be positive");
    if (!(beta >= 0)) fail(Errc::invalid_argument, "polar_rule: beta must be non-negative");
    QuadratureRule lag = gauss_laguerre(n_r, beta);
    QuadratureRule r;
    r.domain.kind = Domain::Kind::polar;
    r.domain.alpha = beta;
    r.domain.n_r = n_r;
    r.domain.n_theta = n_theta;
    r.points.reserve(static_cast<std::size_t>(n_r) * n_theta);
    r.weights.reserve(r.points.capacity());
    for (int i = 0; i < n_r; ++i) {
        double rad = std::sqrt(lag.nodes[i]);
        double w = M_PI * lag.weights[i] / n_theta;
        for (int j = 0; j < n_theta; ++j) {
            double th = 2.0 * M_PI * j / n_theta;
            r.points.push_back(std::polar(rad, th));
            r.weights.push_back(w);
        }
    }
    return r;
}

QuadratureRule adaptive_line(const std::function<double(double)>& weight, double rel_tol,
                             int degree_hint) {
    if (!(rel_tol > 0)) fail(Errc::invalid_argument, "adaptive_line: rel_tol must be positive");
    if (degree_hint < 0) fail(Errc::invalid_argument, "adaptive_line: negative degree hint");
    const int two_n = 2 * degree_hint;

    double X = 1.0;
    for (;; X += 0.5) {
        if (X > 100) fail(Errc::not_converged, "adaptive_line: weight does not decay by |x| = 100");
        double tail = std::max(weight(X), weight(-X)) * std::pow(1 + X, two_n);
        if (tail < 1e-16) break;
    }

    std::map<long long, double> cache;  // keyed by node index on the finest grid
    constexpr int kMaxHalvings = 12;
    const long long fine = 8LL << kMaxHalvings;  // intervals on the finest grid
    auto value_at = [&](long long idx) {
        auto it = cache.find(idx);
        if (it != cache.end()) return it->second;
        double x = -X + 2 * X * static_cast<double>(idx) / static_cast<double>(fine);
        double w = weight(x);
        if (!(w >= 0) || !std::isfinite(w))
            fail(Errc::invalid_argument, "adaptive_line: weight is negative or non-finite");
        cache.emplace(idx, w);
        return w;
    };

    auto moments = [&](long long stride, std::vector<long double>& mom, std::vector<long double>& absmom) {
        mom.assign(two_n + 1, 0.0L);
        absmom.assign(two_n + 1, 0.0L);
        const long double h = 2 * static_cast<long double>(X) * stride / fine;
        for (long long idx = 0; idx <= fine; idx += stride) {
            long double x = -X + 2 * static_cast<long double>(X) * idx / fine;
            long double w = value_at(idx) * h * ((idx == 0 || idx == fine) ? 0.5L : 1.0L);
            long double p = 1;
            for (int k = 0; k <= two_n; ++k) {
                mom[k] += w * p;
                absmom[k] += w * std::fabs(p);
                p *= x;
            }
        }
    };

    std::vector<long double> prev, prev_abs, cur, cur_abs;
    long long stride = fine / 8;
    moments(stride, prev, prev_abs);
    for (int level = 1; level <= kMaxHalvings; ++level) {
        stride /= 2;
        moments(stride, cur, cur_abs);
        bool ok = true;
        for (int k = 0; k <= two_n; ++k)
            if (std::fabs(cur[k] - prev[k]) > rel_tol * cur_abs[k]) ok = false;
        if (ok) {
            QuadratureRule r;
            r.domain.kind = Domain::Kind::real_line;
            r.domain.half_width = X;
            const double h = 2 * X * static_cast<double>(stride) / static_cast<double>(fine);
            for (long long idx = 0; idx <= fine; idx += stride) {
                double w = value_at(idx) * h * ((idx == 0 || idx == fine) ? 0.5 : 1.0);
                if (w <= 0) continue;
                r.nodes.push_back(-X + 2 * X * static_cast<double>(idx) / static_cast<double>(fine));
                r.weights.push_back(w);
            }
            return r;
        }
        prev.swap(cur);
        prev_abs.swap(cur_abs);
    }
    fail(Errc::not_converged, "adaptive_line: no agreement after 12 halvings");
}

}  // namespace cstk
