#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "cstk/error.hpp"
#include "cstk/specfun.hpp"
#include "support.hpp"

using namespace cstk;
using testing::rel_err;
using C = std::complex<double>;

TEST_CASE("gamma values and poles") {
    CHECK(gamma_fn(1.0) == 1.0);
    CHECK(rel_err(gamma_fn(0.5), std::sqrt(std::numbers::pi)) < 1e-14);
    CHECK(rel_err(gamma_fn(4.5), 11.631728396567448929) < 1e-13);
    CHECK(rel_err(gamma_fn(4.5), 3.5 * 2.5 * 1.5 * 0.5 * gamma_fn(0.5)) < 1e-14);
    CHECK(rel_err(gamma_fn(-1.5), 4.0 * std::sqrt(std::numbers::pi) / 3.0) < 1e-13);
    CHECK_THROWS_AS(gamma_fn(0.0), Error);
    CHECK_THROWS_AS(gamma_fn(-3.0), Error);
    CHECK(rgamma(-2.0) == 0.0);
}

TEST_CASE("pochhammer products") {
    CHECK(pochhammer(2.7, 0) == 1.0);
    CHECK(pochhammer(3, 4) == 360.0);
    CHECK(pochhammer(-2, 3) == 0.0);
    for (double a : {-3.5, -1.0, 0.25, 2.0, 7.3})
        for (int k = 0; k < 12; ++k) {
            const double lhs = pochhammer(a, k + 1), rhs = pochhammer(a, k) * (a + k);
            CHECK(std::fabs(lhs - rhs) <= 1e-15 * std::fabs(rhs));
        }
}

TEST_CASE("laguerre including negative alpha") {
    CHECK(laguerre(0, -2.5, 3.0) == 1.0);
    CHECK(laguerre(1, 0, 2) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(laguerre(2, -1, 1) == doctest::Approx(-0.5).epsilon(1e-15));
    // L_2^{(-1)}(t) = (-t)(1!/2!) L_1^{(1)}(t)
    for (double t : {0.3, 1.7, 4.0}) CHECK(rel_err(laguerre(2, -1, t), -t * 0.5 * laguerre(1, 1, t)) < 1e-14);
    // three-term recurrence
    for (double a : {0.0, 0.5, 2.3})
        for (int n = 1; n < 10; ++n) {
            const double t = 1.9;
            const double lhs = (n + 1) * laguerre(n + 1, a, t);
            const double rhs = (2 * n + 1 + a - t) * laguerre(n, a, t) - (n + a) * laguerre(n - 1, a, t);
            CHECK(std::fabs(lhs - rhs) < 1e-11 * (1 + std::fabs(lhs)));
        }
}

TEST_CASE("hermite and associated hermite") {
    CHECK(hermite(0, 0.7) == 1.0);
    CHECK(hermite(1, 1.5) == 3.0);
    CHECK(hermite(2, 1.0) == 2.0);
    CHECK(assoc_hermite(0, 0.3, 1.1) == 1.0);
    CHECK(assoc_hermite(1, 0.3, 1.1) == doctest::Approx(0.6));
    CHECK(assoc_hermite(2, 1.0, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
    for (int n = 0; n < 12; ++n) CHECK(assoc_hermite(n, 0.8, 0.0) == doctest::Approx(hermite(n, 0.8)).epsilon(1e-14));
}

TEST_CASE("parabolic cylinder function") {
    CHECK(rel_err(pcf_D(0, C(2, 0)), C(std::exp(-1.0), 0)) < 1e-14);
    const double nu = 0.7;
    CHECK(rel_err(pcf_D(nu, 0.0), C(std::pow(2, nu / 2) * std::sqrt(std::numbers::pi) / std::tgamma((1 - nu) / 2), 0)) <
          1e-13);
    CHECK(rel_err(pcf_D(0.7, C(1.2, -0.8)), C(1.0772888549591218399, 0.1120275482591212065)) < 1e-12);
    CHECK(rel_err(pcf_D(2, 1.5), C(0.71222853091365376221, 0)) < 1e-12);
    CHECK(rel_err(pcf_D(-1.7, C(0, 2.3)), C(-0.8949832139305593641, -1.2081669662897643809)) < 1e-12);
    // |D_0(i sqrt2)|^{-2} = e^{-1}
    CHECK(rel_err(std::pow(std::abs(pcf_D(0, C(0, std::sqrt(2.0)))), -2), std::exp(-1.0)) < 1e-14);
    CHECK(rel_err(pcf_D_inv_sq_imag(1.7, 1.1), 0.6499893234996875878) < 1e-12);
}

TEST_CASE("Kummer split matches the direct series on the imaginary axis") {
    for (double beta : {0.0, 0.5, 1.0, 1.7, 3.2})
        for (double x = -3; x <= 3; x += 0.25) {
            const double direct = std::pow(std::abs(pcf_D(-beta, C(0, x * std::sqrt(2.0)))), -2);
            CHECK(rel_err(pcf_D_inv_sq_imag(beta, x), direct) < 1e-10);
        }
}

TEST_CASE("generalized hypergeometric series") {
    CHECK(hyp_pfq({1.3, 2.0}, {0.7, 4.1}, 0.0) == C(1, 0));
    CHECK(rel_err(hyp_pfq({1}, {1}, 1.0), C(std::exp(1.0), 0)) < 1e-14);
    // Kummer transformation at beta = 1, t = 2
    CHECK(rel_err(std::exp(-2.0) * hyp_pfq({1}, {2}, 2.0), hyp_pfq({1}, {2}, -2.0)) < 1e-12);
    CHECK(rel_err(hyp_pfq({1, 2.5}, {1.5, 3.2}, C(1.7, 0.4)), C(2.5926362214552642691, 0.68094909892109837507)) < 1e-13);
    CHECK(rel_err(hyp_pfq({0.3}, {2.1}, -4.5), C(0.67606122144839882981, 0)) < 1e-12);
    // terminating series: 1F1(-2; 1; t) = L_2(t)
    CHECK(rel_err(hyp_pfq({-2}, {1}, 3.0).real(), laguerre(2, 0, 3.0)) < 1e-14);
    CHECK_THROWS_AS(hyp_pfq({1}, {-2}, 0.5), Error);
    CHECK_THROWS_AS(hyp_pfq({1, 1, 1}, {2}, 0.5), Error);
}

TEST_CASE("truncation failure is an error") {
    SeriesControl ctl;
    ctl.max_terms = 5;
    CHECK_THROWS_AS(hyp_pfq({1}, {1}, 30.0, ctl), Error);
    try {
        hyp_pfq({1}, {1}, 30.0, ctl);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::not_converged);
    }
    SeriesControl bad;
    bad.rel_tol = 0;
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("Mittag-Leffler") {
    for (double t : {-1.5, 0.0, 2.0}) CHECK(rel_err(mittag_leffler(1, 1, t), std::exp(t)) < 1e-14);
    CHECK(rel_err(mittag_leffler(1, 2, 1), std::exp(1.0) - 1) < 1e-14);
    CHECK(rel_err(std::tgamma(2.3) * mittag_leffler(1, 2.3, 2), hyp_pfq({1}, {2.3}, 2.0).real()) < 1e-12);
    CHECK(rel_err(mittag_leffler(0.8, 1.3, 2.0), 10.160670550437094685) < 1e-12);
}

TEST_CASE("Lauricella triple series") {
    CHECK(lauricella_triple(2.5, 0.7, 0, 0, 0) == C(1, 0));
    for (C u : {C(0.3, 0.1), C(-1, 0.5)})
        for (C v : {C(0.2, -0.7), C(-0.9, 0)}) {
            const C w(0.4, 0.9);
            CHECK(rel_err(lauricella_triple(1, 0, u, v, w), std::exp(u + v)) < 1e-12);
        }
    CHECK(rel_err(lauricella_triple(2.2, 1.2, 2 * 0.3 * 0.4, -0.16, -0.32), C(1.009405994299546006, 0)) < 1e-12);
    CHECK(rel_err(lauricella_triple(1.7, 0.6, C(0.3, 0.2), -0.4, C(0, 0.25)),
                  C(0.99066955595941030926, 0.14843661934038555585)) < 1e-12);
    CHECK_THROWS_AS(lauricella_triple(-1.0, 0.5, 0.1, 0.1, 0.1), Error);
}
