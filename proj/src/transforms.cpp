#include "cstk/transforms.hpp"

#include <boost/math/interpolators/barycentric_rational.hpp>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "cstk/detail/precision.hpp"
#include "cstk/detail/shells.hpp"
#include "cstk/error.hpp"

namespace cstk {

using detail::qcomplex;
using detail::quad;

namespace {

void check(int m, double beta) {
    if (m < 0) fail(Errc::invalid_argument, "m must be non-negative");
    if (!(beta >= 0) || !std::isfinite(beta)) fail(Errc::invalid_argument, "beta must be non-negative");
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Kernel without its Gamma(beta+1)^{-1/2} prefactor, evaluated in binary128:
//   finite part  sum_{n<m} 2^{-n/2} H_n(x,beta)/sqrt((beta+1)_n) *
//       [ (-1)^n z^{m-n} sqrt(n!/(beta+1)_m) L_n^{(m-n+beta)}(u)
//         - (-1)^m zbar^{n-m} sqrt(m!/(beta+1)_n) L_m^{(n-m+beta)}(u) ]
//   series part  z^m/sqrt(m!) sum_d T(d) sum_k (-m)_k r_k(d) / (k! u^k),
//       r_k(d) = (beta+1-k)_k / (beta+1-k)_d,
// with u = |z|^2 and T(d) the weight shells at (sqrt2 x zbar, -zbar^2/2, -zbar^2).
qcomplex kernel_core(int m, double beta, cplx z, double x, const SeriesControl& ctl, ShellRoute route) {
    const quad b = beta, qx = x;
    const qcomplex qz(z), qzb = qz.conj();
    const quad u = qz.norm();
    const quad sqrt_half = detail::qsqrt(quad(0.5));

    std::vector<quad> poch_b1{1};  // (beta+1)_j
    auto poch = [&](int j) {
        while (static_cast<int>(poch_b1.size()) <= j)
            poch_b1.push_back(poch_b1.back() * (b + quad(static_cast<int>(poch_b1.size()))));
        return poch_b1[j];
    };

    qcomplex finite;
    quad two_pow = 1;
    for (int n = 0; n < m; ++n, two_pow *= sqrt_half) {
        quad hn = detail::assoc_hermite_t<quad>(n, qx, b) * two_pow / detail::qsqrt(poch(n));
        quad l1 = detail::laguerre_t<quad>(n, quad(m - n) + b, u);
        quad l2 = detail::laguerre_t<quad>(m, quad(n - m) + b, u);
        quad c1 = detail::qsqrt(detail::factorial_t<quad>(n) / poch(m)) * l1;
        quad c2 = detail::qsqrt(detail::factorial_t<quad>(m) / poch(n)) * l2;
        if (n % 2) c1 = -c1;
        if (m % 2) c2 = -c2;
        finite += (detail::qpow(qz, m - n) * c1 - detail::qpow(qzb, n - m) * c2) * hn;
    }

    std::vector<quad> a(m + 1);  // (-m)_k / (k! u^k)
    for (int k = 0; k <= m; ++k) {
        quad c = detail::pochhammer_t<quad>(quad(-m), k) / detail::factorial_t<quad>(k);
        for (int i = 0; i < k; ++i) c /= u;
        a[k] = c;
    }
    auto weight = [&](int d) {
        quad g = 0;
        for (int k = 0; k <= m; ++k) {
            quad r = d >= k ? quad(1) / poch(d - k) : detail::pochhammer_t<quad>(b + quad(1 - k + d), k - d);
            g += a[k] * r;
        }
        return g;
    };

    const double az = std::abs(z);
    const int floor = detail::shell_floor(std::sqrt(2.0) * std::fabs(x) * az, az * az / 2, az * az);
    // Finite and series parts cancel to O(|z|^{2m}) at small |z|; the tail is cut accordingly.
    SeriesControl inner = ctl;
    const double shrink = std::min(1.0, std::pow(az * az, m));
    inner.rel_tol = ctl.rel_tol * shrink;
    inner.abs_tol = ctl.abs_tol * shrink;

    qcomplex series;
    if (route == ShellRoute::triple_series) {
        const quad sqrt2 = detail::qsqrt(quad(2));
        detail::LauricellaShells shells(b, qzb * (sqrt2 * qx), qzb * qzb * quad(-0.5), qzb * qzb * quad(-1));
        series = detail::sum_shells(shells, weight, floor, inner, "kernel_B");
    } else {
        detail::HermiteShells shells(b, qx, qzb * sqrt_half);
        series = detail::sum_shells(shells, weight, floor, inner, "kernel_B");
    }
    series = series * detail::qpow(qz, m) / detail::qsqrt(detail::factorial_t<quad>(m));
    return finite + series;
}

// Neville extrapolation of samples f(s_i) to s = 0.
std::complex<long double> extrapolate_to_zero(const std::vector<long double>& s,
                                              std::vector<std::complex<long double>> f) {
    const std::size_t n = s.size();
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = 0; i + level < n; ++i)
            f[i] = (s[i + level] * f[i] - s[i] * f[i + 1]) / (s[i + level] - s[i]);
    return f[0];
}

}  // namespace

double omega_weight(double x, double beta, const SeriesControl& ctl) {
    check(0, beta);
    return pcf_D_inv_sq_imag(beta, x, ctl) / (std::sqrt(M_PI) * std::tgamma(beta + 1));
}

double basis_phi(int n, double x, double beta) {
    if (n < 0) fail(Errc::invalid_argument, "basis_phi: negative degree");
    check(0, beta);
    long double h = detail::assoc_hermite_t<long double>(n, x, beta);
    long double s = std::pow(2.0L, -n / 2.0L) / std::sqrt(detail::pochhammer_t<long double>(beta + 1, n));
    return static_cast<double>(h * s);
}

QuadratureRule omega_rule(double beta, int degree_hint, double rel_tol, const SeriesControl& ctl) {
    check(0, beta);
    return adaptive_line([beta, ctl](double x) { return omega_weight(x, beta, ctl); }, rel_tol, degree_hint);
}

KernelValue kernel_B_eval(int m, double beta, cplx z, double x, const SeriesControl& ctl, ShellRoute route) {
    check(m, beta);
    ctl.validate();
    const quad pref = quad(1) / detail::qsqrt(quad(std::tgamma(static_cast<long double>(beta) + 1)));
    if (m == 0 || z != cplx{}) return {(kernel_core(m, beta, z, x, ctl, route) * pref).to_cd(), false};

    // Ring averages kill every term except conj(c_m(z)) phi_m(x), a degree-m polynomial
    // in s = |z|^2, so m+1 rings determine the value at s = 0.
    const long double r0 = std::max(1e-3L, std::pow(10.0L, -10.0L / m));
    constexpr int kAngles = 64;
    std::vector<long double> s;
    std::vector<std::complex<long double>> f;
    for (int k = 1; k <= m + 1; ++k) {
        long double r = r0 * k;
        std::complex<long double> avg = 0;
        for (int j = 0; j < kAngles; ++j) {
            cplx zj = std::polar(static_cast<double>(r), 2 * M_PI * j / kAngles);
            cplx v = (kernel_core(m, beta, zj, x, ctl, route) * pref).to_cd();
            avg += std::complex<long double>(v);
        }
        s.push_back(r * r);
        f.push_back(avg / static_cast<long double>(kAngles));
    }
    auto v = extrapolate_to_zero(s, f);
    return {{static_cast<double>(v.real()), static_cast<double>(v.imag())}, true};
}

cplx kernel_B(int m, double beta, cplx z, double x, const SeriesControl& ctl, ShellRoute route) {
    return kernel_B_eval(m, beta, z, x, ctl, route).value;
}

cplx kernel_B_analytic(double beta, cplx z, double x, const SeriesControl& ctl) {
    check(0, beta);
    const cplx zb = std::conj(z);
    return lauricella_triple(beta + 1, beta, std::sqrt(2.0) * x * zb, -zb * zb / 2.0, -zb * zb, ctl);
}

cplx kernel_B_true_poly(int m, cplx z, double x) {
    check(m, 0.0);
    using cl = std::complex<long double>;
    const cl zb = std::conj(cl(z));
    const long double y = x - std::sqrt(2.0L) * z.real();
    const long double h = detail::assoc_hermite_t<long double>(m, y, 0.0L);
    long double c = h / std::sqrt(std::pow(2.0L, m) * detail::factorial_t<long double>(m));
    if (m % 2) c = -c;
    cl v = std::exp(std::sqrt(2.0L) * static_cast<long double>(x) * zb - zb * zb / 2.0L) * c;
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

double kernel_B_at_origin(int m, double beta, double x) {
    check(m, beta);
    long double c = detail::pochhammer_t<long double>(beta + 1, m) / detail::factorial_t<long double>(m);
    long double g = std::tgamma(static_cast<long double>(beta) + 1) *
                    detail::pochhammer_t<long double>(beta + 1, m) / detail::factorial_t<long double>(m);
    if (m % 2) c = -c;
    return static_cast<double>(c / std::sqrt(g)) * basis_phi(m, x, beta);
}

struct SampledFunction::Interp {
    boost::math::barycentric_rational<double> f;
    double lo, hi;
};

SampledFunction SampledFunction::from_grid(double beta, std::vector<double> xs, std::vector<double> ys) {
    check(0, beta);
    if (xs.size() != ys.size()) fail(Errc::invalid_argument, "grid: x and value counts differ");
    if (xs.size() < 2) fail(Errc::invalid_argument, "grid: at least two points are required");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) fail(Errc::invalid_argument, "grid: non-finite entry");
        if (i > 0 && !(xs[i] > xs[i - 1])) fail(Errc::invalid_argument, "grid: x values must be strictly increasing");
    }
    SampledFunction f;
    f.grid_ = true;
    f.beta_ = beta;
    f.xs_ = xs;
    f.ys_ = ys;
    const double lo = xs.front(), hi = xs.back();
    const std::size_t order = std::min<std::size_t>(3, xs.size() - 1);
    f.interp_ = std::make_shared<const Interp>(
        Interp{boost::math::barycentric_rational<double>(std::move(xs), std::move(ys), order), lo, hi});
    return f;
}

SampledFunction SampledFunction::from_coefficients(double beta, std::vector<double> coeffs) {
    check(0, beta);
    for (double c : coeffs)
        if (!std::isfinite(c)) fail(Errc::invalid_argument, "coefficients must be finite");
    SampledFunction f;
    f.beta_ = beta;
    f.coeffs_ = std::move(coeffs);
    return f;
}

SampledFunction SampledFunction::parse(std::istream& in, const std::string& source) {
    std::string line;
    int lineno = 0;
    bool have_header = false, grid = false;
    double beta = 0;
    std::vector<double> a, b;
    auto where = [&] { return source + ":" + std::to_string(lineno); };
    auto to_double = [&](const std::string& tok) {
        try {
            std::size_t used = 0;
            double v = std::stod(tok, &used);
            if (used == tok.size()) return v;
        } catch (const std::exception&) {
        }
        fail(Errc::parse, where() + ": cannot parse number '" + tok + "'");
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') {
            if (have_header) continue;
            std::istringstream hs(line.substr(first + 1));
            std::string tok;
            bool kind = false, has_beta = false;
            while (hs >> tok) {
                auto eq = tok.find('=');
                if (eq == std::string::npos) continue;
                std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
                if (key == "kind") {
                    if (val != "grid" && val != "coeffs") fail(Errc::parse, where() + ": kind must be grid or coeffs");
                    grid = val == "grid";
                    kind = true;
                } else if (key == "beta") {
                    beta = to_double(val);
                    has_beta = true;
                }
            }
            if (!kind || !has_beta) fail(Errc::parse, where() + ": header must give kind= and beta=");
            have_header = true;
            continue;
        }
        if (!have_header) fail(Errc::parse, where() + ": missing `# kind=... beta=...` header");
        std::istringstream ls(line);
        std::string t1, t2, extra;
        ls >> t1 >> t2 >> extra;
        if (grid) {
            if (t2.empty() || !extra.empty()) fail(Errc::parse, where() + ": expected `x value`");
            a.push_back(to_double(t1));
            b.push_back(to_double(t2));
        } else {
            if (!t2.empty()) fail(Errc::parse, where() + ": expected one coefficient per line");
            a.push_back(to_double(t1));
        }
    }
    if (!have_header) fail(Errc::parse, source + ": empty function file");
    if (grid) return from_grid(beta, std::move(a), std::move(b));
    if (a.empty()) fail(Errc::parse, source + ": no coefficients");
    return from_coefficients(beta, std::move(a));
}

SampledFunction SampledFunction::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::io, "cannot open function file '" + path + "'");
    return parse(in, path);
}

double SampledFunction::operator()(double x) const {
    if (grid_) {
        if (x < interp_->lo || x > interp_->hi) return 0.0;
        return interp_->f(x);
    }
    double s = 0;
    for (std::size_t n = 0; n < coeffs_.size(); ++n)
        if (coeffs_[n] != 0) s += coeffs_[n] * basis_phi(static_cast<int>(n), x, beta_);
    return s;
}

std::vector<double> SampledFunction::project(int nmax, const QuadratureRule& rule) const {
    std::vector<double> c(nmax + 1, 0.0);
    for (std::size_t i = 0; i < rule.size(); ++i) {
        double fx = (*this)(rule.nodes[i]) * rule.weights[i];
        if (fx == 0) continue;
        for (int n = 0; n <= nmax; ++n) c[n] += fx * basis_phi(n, rule.nodes[i], beta_);
    }
    return c;
}

std::vector<std::vector<cplx>> apply_transform_many(const std::vector<SampledFunction>& fs, int m, double beta,
                                                    const std::vector<cplx>& targets, const QuadratureRule& rule,
                                                    const SeriesControl& ctl, ShellRoute route, int jobs) {
    check(m, beta);
    ctl.validate();
    for (const auto& f : fs)
        if (std::fabs(f.beta() - beta) > 1e-15 * (1 + beta))
            fail(Errc::invalid_argument,
                 "apply_transform: function beta " + num(f.beta()) + " differs from " + num(beta));
    if (rule.domain.kind != Domain::Kind::real_line || rule.nodes.empty())
        fail(Errc::invalid_argument, "apply_transform: a real-line rule is required");

    const std::size_t nf = fs.size(), nx = rule.size();
    std::vector<double> fw(nf * nx);
    std::vector<char> used(nx, 0);
    for (std::size_t k = 0; k < nf; ++k)
        for (std::size_t i = 0; i < nx; ++i) {
            fw[k * nx + i] = fs[k](rule.nodes[i]) * rule.weights[i];
            if (fw[k * nx + i] != 0) used[i] = 1;
        }

    std::vector<std::vector<cplx>> out(nf, std::vector<cplx>(targets.size()));
    auto work = [&](std::size_t begin, std::size_t step) {
        std::vector<std::complex<long double>> acc(nf);
        for (std::size_t t = begin; t < targets.size(); t += step) {
            std::fill(acc.begin(), acc.end(), std::complex<long double>(0));
            for (std::size_t i = 0; i < nx; ++i) {
                if (!used[i]) continue;
                const std::complex<long double> k(std::conj(kernel_B(m, beta, targets[t], rule.nodes[i], ctl, route)));
                for (std::size_t f = 0; f < nf; ++f) acc[f] += k * static_cast<long double>(fw[f * nx + i]);
            }
            for (std::size_t f = 0; f < nf; ++f)
                out[f][t] = {static_cast<double>(acc[f].real()), static_cast<double>(acc[f].imag())};
        }
    };
    const std::size_t workers = static_cast<std::size_t>(std::max(1, std::min<int>(jobs, static_cast<int>(targets.size()))));
    if (workers <= 1) {
        work(0, 1);
        return out;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                work(w, workers);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

std::vector<cplx> apply_transform(const SampledFunction& f, int m, double beta, const std::vector<cplx>& targets,
                                  const QuadratureRule& rule, const SeriesControl& ctl, ShellRoute route, int jobs) {
    return apply_transform_many({f}, m, beta, targets, rule, ctl, route, jobs).front();
}

}  // namespace cstk
