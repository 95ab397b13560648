#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "cstk/error.hpp"
#include "cstk/measures.hpp"
#include "cstk/poly2d.hpp"
#include "cstk/transforms.hpp"
#include "support.hpp"

using namespace cstk;
using testing::rel_err;

namespace {
const double kSqrtPi = std::sqrt(M_PI);
}

TEST_CASE("omega weight") {
    for (double x : {0.0, 0.5, 1.3, -2.0})
        CHECK(rel_err(omega_weight(x, 0.0), std::exp(-x * x) / kSqrtPi) < 1e-13);
    CHECK(rel_err(omega_weight(0.0, 0.0), 1 / kSqrtPi) < 1e-15);
    CHECK(rel_err(omega_weight(1.3, 1.7), 0.21186001092612097558) < 1e-12);
    for (double x : {0.2, 1.1, 2.5}) CHECK(rel_err(omega_weight(-x, 1.2), omega_weight(x, 1.2)) < 1e-13);
    CHECK_THROWS_AS(omega_weight(0.3, -0.5), Error);
}

TEST_CASE("omega rule mass and basis orthonormality") {
    for (double beta : {0.0, 1.0, 1.7}) {
        const auto rule = omega_rule(beta, 8);
        CHECK(std::fabs(rule.mass() - 1.0) < 1e-8);
        for (int n = 0; n <= 5; ++n)
            for (int k = 0; k <= 5; ++k) {
                const double s = rule.integrate_line([&](double x) { return basis_phi(n, x, beta) * basis_phi(k, x, beta); });
                CHECK(std::fabs(s - (n == k ? 1.0 : 0.0)) < 1e-6);
            }
    }
}

TEST_CASE("basis functions") {
    CHECK(basis_phi(0, 0.7, 1.3) == 1.0);
    CHECK(rel_err(basis_phi(1, 1.0, 0.0), std::sqrt(2.0)) < 1e-15);
    // beta = 0 reduces to normalized physicists' Hermite polynomials
    for (int n = 0; n <= 6; ++n)
        CHECK(std::fabs(basis_phi(n, 0.8, 0.0) - hermite(n, 0.8) / std::sqrt(std::pow(2.0, n) * std::tgamma(n + 1.0))) < 1e-13);
}

TEST_CASE("kernel values") {
    CHECK(std::abs(kernel_B(0, 0.0, 0.0, 0.4) - 1.0) < 1e-15);
    CHECK(rel_err(kernel_B(2, 1.2, {0.8, -0.5}, 0.7), cplx(-1.0662929261887640662, 0.0077395710279011318403)) < 1e-11);
    CHECK(rel_err(kernel_B(3, 0.5, {-1.1, 0.4}, -0.9), cplx(1.5096755990007328813, 0.063368934137912688687)) < 1e-11);
    CHECK(rel_err(kernel_B(1, 1.7, {2.0, 1.0}, 1.5), cplx(3.2750862671798411881, 0.81750078704262191437)) < 1e-11);
    const cplx b0(0.9825851015354330063, 0.023618925278752133309);
    CHECK(rel_err(kernel_B(0, 1.2, {0.5, 0.2}, 0.3), b0) < 1e-12);
    // the m = 0 kernel is the analytic one over sqrt(Gamma(beta+1))
    CHECK(rel_err(kernel_B_analytic(1.2, {0.5, 0.2}, 0.3), b0 * std::sqrt(std::tgamma(2.2))) < 1e-12);
}

TEST_CASE("kernel routes agree") {
    for (double beta : {0.0, 0.5, 1.7})
        for (int m = 0; m <= 4; ++m)
            for (cplx z : {cplx(0.3, 0.4), cplx(-1.2, 0.7), cplx(1.5, -1.1)})
                for (double x : {-1.0, 0.2, 1.6}) {
                    const cplx a = kernel_B(m, beta, z, x, {}, ShellRoute::triple_series);
                    const cplx b = kernel_B(m, beta, z, x, {}, ShellRoute::hermite_shells);
                    CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(b)));
                }
}

TEST_CASE("kernel at the origin") {
    CHECK(rel_err(kernel_B_at_origin(2, 1.0, 0.5), -1.0606601717798212866) < 1e-13);
    CHECK(rel_err(kernel_B_at_origin(3, 0.5, -0.8), -1.3345221710531503624) < 1e-13);
    for (double beta : {0.0, 1.0})
        for (int m = 1; m <= 3; ++m) {
            const auto v = kernel_B_eval(m, beta, 0.0, 0.5);
            CHECK(v.extrapolated);
            CHECK(std::fabs(v.value.real() - kernel_B_at_origin(m, beta, 0.5)) < 1e-8);
            CHECK(std::fabs(v.value.imag()) < 1e-8);
        }
    CHECK_FALSE(kernel_B_eval(0, 0.5, 0.0, 0.5).extrapolated);
}

TEST_CASE("analytic kernel") {
    for (cplx z : {cplx(0.0), cplx(0.6, -0.3), cplx(-1.0, 1.2)})
        for (double x : {0.0, 0.7}) {
            const cplx zb = std::conj(z);
            CHECK(rel_err(kernel_B_analytic(0.0, z, x), std::exp(-zb * zb / 2.0 + std::sqrt(2.0) * x * zb)) < 1e-12);
        }
    CHECK(std::abs(kernel_B_analytic(1.4, 0.0, 0.9) - 1.0) < 1e-15);
    // direct sum of (zbar/sqrt2)^n H_n(x, beta) / (beta+1)_n
    const double beta = 1.2, x = 0.3;
    const cplx z(0.5, 0.2), t = std::conj(z) / std::sqrt(2.0);
    cplx s = 0, tp = 1;
    for (int n = 0; n < 60; ++n) {
        s += tp * assoc_hermite(n, x, beta) / pochhammer(beta + 1, n);
        tp *= t;
    }
    CHECK(rel_err(kernel_B_analytic(beta, z, x), s) < 1e-9);
}

TEST_CASE("true-polyanalytic reduction") {
    const cplx z(0.7, 0.3);
    const double x = 0.4;
    const cplx zb = std::conj(z), g = std::exp(std::sqrt(2.0) * x * zb - zb * zb / 2.0);
    CHECK(rel_err(kernel_B_true_poly(0, z, x), g) < 1e-14);
    const double arg = x - 2 * z.real() / std::sqrt(2.0);
    CHECK(rel_err(kernel_B_true_poly(1, z, x), -g * 2.0 * arg / std::sqrt(2.0)) < 1e-14);
    CHECK(rel_err(kernel_B_true_poly(2, 0.0, 0.0), cplx(-2 / std::sqrt(8.0))) < 1e-15);
    for (int m = 0; m <= 4; ++m)
        CHECK(rel_err(kernel_B(m, 0.0, z, x), kernel_B_true_poly(m, z, x)) < 1e-8);
}

TEST_CASE("sampled function parsing") {
    std::istringstream grid("# kind=grid beta=0.5\n-1 0.2\n0 1\n1 0.2\n");
    const auto f = SampledFunction::parse(grid);
    CHECK(f.is_grid());
    CHECK(f.beta() == 0.5);
    CHECK(f(0.0) == doctest::Approx(1.0));
    CHECK(f(3.0) == 0.0);

    std::istringstream coeffs("# kind=coeffs beta=1\n0\n2.5\n");
    const auto g = SampledFunction::parse(coeffs);
    CHECK_FALSE(g.is_grid());
    CHECK(rel_err(g(0.6), 2.5 * basis_phi(1, 0.6, 1.0)) < 1e-14);

    std::istringstream noheader("0 1\n1 2\n");
    CHECK_THROWS_AS(SampledFunction::parse(noheader), Error);
    std::istringstream unordered("# kind=grid beta=0\n1 0\n0 1\n");
    CHECK_THROWS_AS(SampledFunction::parse(unordered), Error);
    std::istringstream badnum("# kind=coeffs beta=0\nx\n");
    CHECK_THROWS_AS(SampledFunction::parse(badnum), Error);
    CHECK_THROWS_AS(SampledFunction::load("/nonexistent/f.txt"), Error);
    CHECK_THROWS_AS(SampledFunction::from_coefficients(0.0, {1.0, NAN}), Error);
}

TEST_CASE("transform of basis functions") {
    const std::vector<cplx> targets{{0.3, 0.2}, {-0.8, 0.5}, {1.1, -0.6}, {0.0, 1.4}};
    for (double beta : {0.0, 1.0}) {
        const GammaMeasure mu(beta);
        const auto rule = omega_rule(beta, 8);
        for (int n = 0; n <= 3; ++n) {
            std::vector<double> c(n + 1, 0.0);
            c[n] = 1;
            const auto f = SampledFunction::from_coefficients(beta, c);
            for (int m = 0; m <= 3; ++m) {
                const auto vals = apply_transform(f, m, beta, targets, rule, {}, ShellRoute::hermite_shells, 2);
                for (std::size_t i = 0; i < targets.size(); ++i) {
                    const cplx p = p_norm({n, m, beta}, targets[i], mu);
                    CHECK(std::abs(vals[i] - p) <= 1e-5 * std::max(1.0, std::abs(p)));
                }
            }
        }
    }
}

TEST_CASE("grid and coefficient inputs give the same transform") {
    const double beta = 0.5;
    const std::vector<double> c{0.4, -0.3, 0.2};
    const auto fc = SampledFunction::from_coefficients(beta, c);
    std::vector<double> xs, ys;
    for (int i = 0; i <= 240; ++i) {
        const double x = -8 + i * (16.0 / 240);
        xs.push_back(x);
        ys.push_back(fc(x));
    }
    const auto fg = SampledFunction::from_grid(beta, xs, ys);
    const std::vector<cplx> targets{{0.2, 0.1}, {-0.7, 0.9}};
    const auto rule = omega_rule(beta, 8);
    const auto both = apply_transform_many({fc, fg}, 1, beta, targets, rule);
    for (std::size_t i = 0; i < targets.size(); ++i)
        CHECK(std::abs(both[0][i] - both[1][i]) <= 1e-4 * std::max(1.0, std::abs(both[0][i])));
}

TEST_CASE("zero function and projection") {
    const auto z = SampledFunction::from_coefficients(0.0, {0.0, 0.0});
    const auto rule = omega_rule(0.0, 6);
    for (cplx v : apply_transform(z, 2, 0.0, {{0.5, 0.5}, {1.0, 0.0}}, rule)) CHECK(v == cplx(0.0));
    const auto f = SampledFunction::from_coefficients(0.0, {0.5, -1.0, 0.25});
    const auto p = f.project(3, rule);
    CHECK(std::fabs(p[0] - 0.5) < 1e-9);
    CHECK(std::fabs(p[1] + 1.0) < 1e-9);
    CHECK(std::fabs(p[2] - 0.25) < 1e-9);
    CHECK(std::fabs(p[3]) < 1e-9);
}
