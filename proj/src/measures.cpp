#include "cstk/measures.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cfloat>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cstk/detail/precision.hpp"
#include "cstk/error.hpp"

namespace cstk {

using detail::quad;

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

long double checked_moment(const MomentMeasure& mu, double s) {
    long double v = mu.moment(s);
    if (!std::isfinite(v) || !(v > 0))
        fail(Errc::invalid_argument, "moment mu_" + num(s) + " is not a finite positive number");
    return v;
}

long double factorial_ld(int n) { return detail::factorial_t<long double>(n); }

}  // namespace

GammaMeasure::GammaMeasure(double beta) : beta_(beta) {
    if (!(beta >= 0) || !std::isfinite(beta))
        fail(Errc::invalid_argument, "GammaMeasure: beta must be finite and non-negative");
}

std::string GammaMeasure::description() const { return "gamma(beta=" + num(beta_) + ")"; }

long double GammaMeasure::moment(double s) const {
    if (!(s > -1)) fail(Errc::invalid_argument, "GammaMeasure: moment order must exceed -1");
    return std::tgamma(static_cast<long double>(s) + 1);
}

TabulatedMeasure::TabulatedMeasure(double beta, std::vector<std::pair<double, long double>> records,
                                   double support_bound, std::string description)
    : beta_(beta), records_(std::move(records)), support_bound_(support_bound),
      description_(std::move(description)) {
    if (!(beta >= 0)) fail(Errc::invalid_argument, "TabulatedMeasure: beta must be non-negative");
    if (!(support_bound > 0)) fail(Errc::invalid_argument, "TabulatedMeasure: support bound must be positive");
    for (std::size_t i = 0; i < records_.size(); ++i) {
        if (!std::isfinite(records_[i].second) || !(records_[i].second > 0))
            fail(Errc::invalid_argument, "moment at s = " + num(records_[i].first) + " is not positive");
        if (i > 0 && !(records_[i].first > records_[i - 1].first))
            fail(Errc::invalid_argument, "moment records must be strictly increasing in s");
    }
    // Log-convexity of s -> mu_s on every consecutive triple.
    for (std::size_t i = 2; i < records_.size(); ++i) {
        long double s0 = records_[i - 2].first, s1 = records_[i - 1].first, s2 = records_[i].first;
        long double l0 = std::log(records_[i - 2].second), l1 = std::log(records_[i - 1].second),
                    l2 = std::log(records_[i].second);
        long double lhs = (s2 - s0) * l1;
        long double rhs = (s2 - s1) * l0 + (s1 - s0) * l2;
        long double scale = std::fabs(lhs) + std::fabs(rhs) + 1;
        if (lhs > rhs + 1e-12L * scale)
            fail(Errc::invalid_argument,
                 "moments violate the Hankel condition mu_{s-1} mu_{s+1} >= mu_s^2 near s = " + num(s1));
    }
}

long double TabulatedMeasure::moment(double s) const {
    auto it = std::lower_bound(records_.begin(), records_.end(), s - 1e-9 * std::max(1.0, std::fabs(s)),
                               [](const auto& r, double v) { return r.first < v; });
    if (it == records_.end() || std::fabs(it->first - s) > 1e-9 * std::max(1.0, std::fabs(s)))
        fail(Errc::invalid_argument, description_ + ": moment at s = " + num(s) + " is not tabulated");
    return it->second;
}

CallableMeasure::CallableMeasure(double beta, std::function<long double(double)> moment,
                                 double support_bound, std::string description)
    : beta_(beta), moment_(std::move(moment)), support_bound_(support_bound),
      description_(std::move(description)) {
    if (!(beta >= 0)) fail(Errc::invalid_argument, "CallableMeasure: beta must be non-negative");
    if (!moment_) fail(Errc::invalid_argument, "CallableMeasure: empty moment function");
}

std::shared_ptr<TabulatedMeasure> parse_moments(std::istream& in, double beta, const std::string& source) {
    std::vector<std::pair<double, long double>> records;
    double bound = std::numeric_limits<double>::infinity();
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') {
            auto pos = line.find("L=");
            if (pos != std::string::npos) {
                std::istringstream vs(line.substr(pos + 2));
                std::string tok;
                vs >> tok;
                try {
                    std::size_t used = 0;
                    bound = std::stod(tok, &used);
                    if (used != tok.size()) throw std::invalid_argument(tok);
                } catch (const std::exception&) {
                    fail(Errc::parse, source + ":" + std::to_string(lineno) + ": bad support bound '" + tok + "'");
                }
            }
            continue;
        }
        std::istringstream ls(line);
        std::string ts, tv, extra;
        ls >> ts >> tv;
        if (tv.empty() || (ls >> extra))
            fail(Errc::parse, source + ":" + std::to_string(lineno) + ": expected `s value`");
        try {
            std::size_t u1 = 0, u2 = 0;
            double s = std::stod(ts, &u1);
            long double v = std::stold(tv, &u2);
            if (u1 != ts.size() || u2 != tv.size()) throw std::invalid_argument(line);
            records.emplace_back(s, v);
        } catch (const std::exception&) {
            fail(Errc::parse, source + ":" + std::to_string(lineno) + ": cannot parse '" + line + "'");
        }
    }
    if (records.empty()) fail(Errc::parse, source + ": no moment records");
    return std::make_shared<TabulatedMeasure>(beta, std::move(records), bound, "moments(" + source + ")");
}

std::shared_ptr<TabulatedMeasure> load_moments_file(const std::string& path, double beta) {
    std::ifstream in(path);
    if (!in) fail(Errc::io, "cannot open moments file '" + path + "'");
    return parse_moments(in, beta, path);
}

void validate_moments(const MomentMeasure& mu, int n_max) {
    const double b = mu.beta();
    for (int n = 0; n <= n_max; ++n) checked_moment(mu, b + n);
    for (int n = 1; n < n_max; ++n) {
        long double lo = mu.moment(b + n - 1), mid = mu.moment(b + n), hi = mu.moment(b + n + 1);
        if (lo * hi < mid * mid * (1 - 1e-12L))
            fail(Errc::invalid_argument, mu.description() + ": log-convexity fails at n = " + std::to_string(n));
    }
}

double x_seq(const MomentMeasure& mu, int n) {
    if (n < 1) fail(Errc::invalid_argument, "x_seq: n must be at least 1");
    const double b = mu.beta();
    return static_cast<double>(checked_moment(mu, b + n) / checked_moment(mu, b + n - 1));
}

double hamiltonian_eigen(const MomentMeasure& mu, int n) {
    if (n < 0) fail(Errc::invalid_argument, "hamiltonian_eigen: negative n");
    return n == 0 ? 0.0 : x_seq(mu, n);
}

OrthoFamily ortho_family(const MomentMeasure& mu, double alpha, int degree) {
    if (degree < 0) fail(Errc::invalid_argument, "ortho_family: negative degree");
    if (degree > kMaxGenericDegree)
        fail(Errc::invalid_argument, "generic orthogonal polynomials are limited to degree " +
                                         std::to_string(kMaxGenericDegree));
    const int n = degree + 1;
    std::vector<long double> mom(2 * n - 1);
    for (int k = 0; k < 2 * n - 1; ++k) mom[k] = checked_moment(mu, alpha + k);

    // Conditioning of the Hankel matrix after symmetric diagonal scaling.
    Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> H(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            H(i, j) = mom[i + j] / std::sqrt(mom[2 * i] * mom[2 * j]);
    Eigen::SelfAdjointEigenSolver<decltype(H)> es(H, Eigen::EigenvaluesOnly);
    long double lmin = es.eigenvalues()(0), lmax = es.eigenvalues()(n - 1);
    OrthoFamily fam;
    fam.alpha = alpha;
    fam.error_estimate = lmin > 0 ? static_cast<double>(lmax / lmin * LDBL_EPSILON)
                                  : std::numeric_limits<double>::infinity();
    if (!(fam.error_estimate <= 1e-6))
        fail(Errc::ill_conditioned, "Hankel system for " + mu.description() + " at alpha = " + num(alpha) +
                                        ", degree " + std::to_string(degree) +
                                        " is ill-conditioned (relative residual estimate " +
                                        num(fam.error_estimate) + ")");

    // Modified Gram-Schmidt on monomials in binary128; <r^i, r^j> = mom[i+j].
    auto inner = [&](const std::vector<quad>& a, const std::vector<quad>& b) {
        quad s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) s += a[i] * b[j] * quad(mom[i + j]);
        }
        return s;
    };
    std::vector<std::vector<quad>> p;
    std::vector<quad> norms;
    for (int k = 0; k < n; ++k) {
        std::vector<quad> v(n, 0);
        v[k] = 1;
        for (int j = 0; j < k; ++j) {
            quad c = inner(v, p[j]) / norms[j];
            for (int i = 0; i < n; ++i) v[i] -= c * p[j][i];
        }
        quad nk = inner(v, v);
        if (!(nk > 0))
            fail(Errc::ill_conditioned, "Hankel system for " + mu.description() + " is not positive definite");
        p.push_back(v);
        norms.push_back(nk);
    }
    for (int k = 0; k < n; ++k) {
        quad f = detail::factorial_t<quad>(k);
        std::vector<long double> c(k + 1);
        for (int i = 0; i <= k; ++i) c[i] = static_cast<long double>(p[k][i] / f);
        fam.coeffs.push_back(std::move(c));
        fam.zeta.push_back(static_cast<long double>(norms[k] / (f * f)));
    }
    return fam;
}

double zeta(const MomentMeasure& mu, int n, double alpha) {
    if (n < 0) fail(Errc::invalid_argument, "zeta: negative n");
    if (mu.is_gamma())
        return static_cast<double>(std::tgamma(static_cast<long double>(alpha) + 1) *
                                   detail::pochhammer_t<long double>(alpha + 1, n) / factorial_ld(n));
    if (n == 0) return static_cast<double>(checked_moment(mu, alpha));
    return static_cast<double>(ortho_family(mu, alpha, n).zeta[n]);
}

double gen_factorial(const MomentMeasure& mu, int n, int m) {
    if (n < 0 || m < 0) fail(Errc::invalid_argument, "gen_factorial: negative index");
    if (n == 0) return 1.0;
    const double b = mu.beta();
    if (mu.is_gamma()) {
        if (n >= m)
            return static_cast<double>(detail::pochhammer_t<long double>(b + m + 1, n - m) / factorial_ld(m));
        return static_cast<double>(1.0L / factorial_ld(n));
    }
    const int lo = std::min(n, m);
    const double a = std::abs(n - m) + b;
    long double num_z = lo == 0 ? checked_moment(mu, a) : ortho_family(mu, a, lo).zeta[lo];
    return static_cast<double>(num_z / checked_moment(mu, m + b));
}

double ladder_x(const MomentMeasure& mu, int n, int m) {
    if (n < 1) fail(Errc::invalid_argument, "ladder_x: n must be at least 1");
    return gen_factorial(mu, n, m) / gen_factorial(mu, n - 1, m);
}

double ortho_poly_phi(const MomentMeasure& mu, int n, double alpha, double r) {
    if (n < 0) fail(Errc::invalid_argument, "ortho_poly_phi: negative degree");
    if (n == 0) return 1.0;
    if (mu.is_gamma()) {
        long double l = detail::laguerre_t<long double>(n, alpha, r);
        return static_cast<double>(n % 2 ? -l : l);
    }
    const auto fam = ortho_family(mu, alpha, n);
    long double s = 0;
    for (int i = n; i >= 0; --i) s = s * r + fam.coeffs[n][i];
    return static_cast<double>(s);
}

RadiusEstimate radius_probe(const MomentMeasure& mu, int m, int probe_depth) {
    if (m < 0) fail(Errc::invalid_argument, "radius: negative m");
    if (probe_depth < 7) fail(Errc::invalid_argument, "radius: probe depth must be at least 7");
    const double b = mu.beta();
    auto family = [&](int n) { return ortho_family(mu, n + b, m); };
    std::vector<long double> ratios;
    auto prev = family(probe_depth - 6);
    for (int n = probe_depth - 5; n <= probe_depth; ++n) {
        auto cur = family(n);
        long double q = std::numeric_limits<long double>::infinity();
        for (int i = 0; i <= m; ++i) {
            long double cn = cur.coeffs[m][m - i];
            if (cn == 0) continue;
            q = std::min(q, std::fabs(prev.coeffs[m][m - i] / cn));
        }
        ratios.push_back(q * q * cur.zeta[m] / prev.zeta[m]);
        prev = std::move(cur);
    }
    RadiusEstimate est;
    est.probe_depth = probe_depth;
    const long double rN = ratios.back(), rN1 = ratios[ratios.size() - 2];
    est.agreement = static_cast<double>(std::fabs(rN / rN1 - 1));
    est.converged = est.agreement <= 1e-3;
    est.value = static_cast<double>(std::sqrt(rN));
    if (!est.converged) {
        est.diverging = std::is_sorted(ratios.begin(), ratios.end()) &&
                        std::adjacent_find(ratios.begin(), ratios.end()) == ratios.end();
        if (est.diverging) est.value = std::numeric_limits<double>::infinity();
    }
    return est;
}

RadiusEstimate radius(const MomentMeasure& mu, int m, int probe_depth) {
    if (mu.is_gamma()) {
        RadiusEstimate est;
        est.value = std::numeric_limits<double>::infinity();
        est.converged = true;
        return est;
    }
    return radius_probe(mu, m, probe_depth);
}

DomainInclusion check_domain_inclusion(const MomentMeasure& mu, int m) {
    DomainInclusion d;
    d.support_bound = mu.support_bound();
    d.radius = radius(mu, m);
    if (!std::isfinite(d.support_bound) && std::isinf(d.radius.value)) return d;
    if (!d.radius.converged && !d.radius.diverging) {
        d.included = false;
        d.warning = "radius estimate did not converge; inclusion of the support disk is undetermined";
        return d;
    }
    if (d.support_bound > d.radius.value * 1.02) {
        d.included = false;
        d.warning = "support bound L = " + num(d.support_bound) + " exceeds the convergence radius " +
                    num(d.radius.value) + "; the resolution of the identity is not guaranteed";
    }
    return d;
}

}  // namespace cstk
