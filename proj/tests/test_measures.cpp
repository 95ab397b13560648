#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "cstk/error.hpp"
#include "cstk/measures.hpp"
#include "cstk/quadrature.hpp"
#include "support.hpp"

using namespace cstk;
using testing::rel_err;

namespace {

// Gamma moments seen through the generic interface only.
CallableMeasure opaque_gamma(double beta) {
    return CallableMeasure(beta, [](double s) { return std::tgamma(static_cast<long double>(s) + 1); },
                           std::numeric_limits<double>::infinity(), "gamma via callable");
}

// r^beta dr on (0, 1) after the r^beta convention: mu_s = 1/(s+1).
CallableMeasure uniform(double beta) {
    return CallableMeasure(beta, [](double s) { return 1.0L / (static_cast<long double>(s) + 1); }, 1.0, "uniform");
}

}  // namespace

TEST_CASE("x sequence") {
    CHECK(rel_err(x_seq(GammaMeasure(0.5), 2), 2.5) < 1e-15);
    CHECK(x_seq(GammaMeasure(0.0), 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(x_seq(GammaMeasure(0.0), 0), Error);
    const GammaMeasure g(1.3);
    const auto u = uniform(0.4);
    for (const MomentMeasure* mu : {static_cast<const MomentMeasure*>(&g), static_cast<const MomentMeasure*>(&u)}) {
        long double prod = 1;
        for (int n = 1; n <= 20; ++n) {
            prod *= x_seq(*mu, n);
            const long double direct = mu->moment(mu->beta() + n) / mu->moment(mu->beta());
            CHECK(rel_err(static_cast<double>(prod), static_cast<double>(direct)) < 1e-13);
        }
    }
}

TEST_CASE("Hamiltonian eigenvalues") {
    CHECK(hamiltonian_eigen(GammaMeasure(2.0), 0) == 0.0);
    CHECK(hamiltonian_eigen(GammaMeasure(2.0), 5) == doctest::Approx(7.0).epsilon(1e-15));
    CHECK(hamiltonian_eigen(GammaMeasure(0.0), 1) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("generalized factorials for the gamma weight") {
    CHECK(gen_factorial(GammaMeasure(0.7), 0, 4) == 1.0);
    CHECK(gen_factorial(GammaMeasure(0), 3, 1) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(gen_factorial(GammaMeasure(0), 1, 3) == doctest::Approx(1.0).epsilon(1e-15));
    for (double beta : {0.0, 0.5, 2.3})
        for (int n = 0; n <= 10; ++n)
            for (int m = 0; m <= 10; ++m) {
                const double ex = std::tgamma(beta + std::max(n, m) + 1) /
                                  (std::tgamma(beta + m + 1) * std::tgamma(std::min(n, m) + 1.0));
                CHECK(rel_err(gen_factorial(GammaMeasure(beta), n, m), ex) < 1e-13);
            }
}

TEST_CASE("factorial ratios match zeta ratios") {
    const GammaMeasure mu(0.8);
    for (int n = 1; n <= 8; ++n)
        for (int m = 0; m <= 6; ++m) {
            const double lhs = gen_factorial(mu, n, m) / gen_factorial(mu, n - 1, m);
            const double rhs = zeta(mu, std::min(n, m), std::abs(n - m) + 0.8) /
                               zeta(mu, std::min(n - 1, m), std::abs(n - 1 - m) + 0.8);
            CHECK(rel_err(lhs, rhs) < 1e-13);
            CHECK(rel_err(ladder_x(mu, n, m), lhs) < 1e-13);
        }
}

TEST_CASE("zeta closed form and generic construction") {
    CHECK(rel_err(zeta(GammaMeasure(1.4), 0, 1.4), std::tgamma(2.4)) < 1e-15);
    CHECK(rel_err(zeta(GammaMeasure(0.5), 2, 0.5), 1.6616754852239212756) < 1e-14);
    const auto g = opaque_gamma(0.5);
    for (int n = 0; n <= 8; ++n)
        for (double alpha : {0.5, 1.5, 3.0}) CHECK(rel_err(zeta(g, n, alpha), zeta(GammaMeasure(0.5), n, alpha)) < 1e-9);
}

TEST_CASE("orthogonal polynomials phi_n") {
    const GammaMeasure mu(1.2);
    CHECK(ortho_poly_phi(mu, 0, 1.2, 3.3) == 1.0);
    for (double r : {0.5, 1.0, 4.0}) CHECK(rel_err(ortho_poly_phi(mu, 1, 1.2, r), r - 2.2) < 1e-14);
    const auto g = opaque_gamma(1.2);
    for (int n = 0; n <= 6; ++n)
        for (double r : {0.5, 1.0, 4.0})
            CHECK(std::fabs(ortho_poly_phi(g, n, 1.2, r) - ortho_poly_phi(mu, n, 1.2, r)) <=
                  1e-9 * std::max(1.0, std::fabs(ortho_poly_phi(mu, n, 1.2, r))));
}

TEST_CASE("phi_n orthogonality under Gauss-Laguerre") {
    const double alpha = 0.6;
    const GammaMeasure mu(alpha);
    const auto rule = gauss_laguerre(16, alpha);
    for (int n = 0; n <= 6; ++n)
        for (int k = 0; k <= 6; ++k) {
            const double s = rule.integrate_line(
                [&](double r) { return ortho_poly_phi(mu, n, alpha, r) * ortho_poly_phi(mu, k, alpha, r); });
            const double z = zeta(mu, n, alpha);
            if (n == k)
                CHECK(rel_err(s, z) < 1e-9);
            else
                CHECK(std::fabs(s) < 1e-9 * std::sqrt(z * zeta(mu, k, alpha)));
        }
}

TEST_CASE("generic path flags degree and conditioning limits") {
    const auto g = opaque_gamma(0.0);
    CHECK_THROWS_AS(ortho_family(g, 0.0, kMaxGenericDegree + 1), Error);
    const auto fam = ortho_family(g, 0.0, 8);
    CHECK(fam.error_estimate < 1e-6);
}

TEST_CASE("convergence radius") {
    CHECK(std::isinf(radius(GammaMeasure(0.5), 0).value));
    CHECK(std::isinf(radius(GammaMeasure(0.5), 3).value));
    const auto probe = radius_probe(GammaMeasure(0.5), 3);
    CHECK(probe.diverging);
    const auto u = uniform(0.0);
    const auto r = radius(u, 0);
    CHECK(r.converged);
    CHECK(r.probe_depth == 60);
    // radius^2 = lim x_n = 1 for the uniform measure; the probe converges like 1/N
    CHECK(std::fabs(r.value * r.value - x_seq(u, 60)) < 1e-2);
    CHECK(std::fabs(r.value - 1.0) < 2e-2);
}

TEST_CASE("domain inclusion") {
    CHECK(check_domain_inclusion(GammaMeasure(1), 0).included);
    CHECK(check_domain_inclusion(uniform(0.0), 0).included);
    // moments of r^beta dr on (0, 2) with a deliberately understated bound of 4
    CallableMeasure wide(0.0, [](double s) { return std::pow(2.0L, static_cast<long double>(s) + 1) / (s + 1); }, 4.0,
                         "wide");
    const auto d = check_domain_inclusion(wide, 0);
    CHECK_FALSE(d.included);
    CHECK_FALSE(d.warning.empty());
}

TEST_CASE("moments file parsing") {
    std::istringstream ok("# moments of the gamma weight\n# L=inf\n0 1\n1 1\n2 2\n3 6\n4 24\n");
    const auto mu = parse_moments(ok, 0.0);
    CHECK(mu->moment(3) == 6.0L);
    CHECK(std::isinf(mu->support_bound()));
    CHECK(rel_err(x_seq(*mu, 3), 3.0) < 1e-15);
    CHECK_THROWS_AS(mu->moment(7), Error);

    std::istringstream bounded("# L=2.5\n0 1\n1 0.5\n");
    CHECK(parse_moments(bounded, 0.0)->support_bound() == 2.5);

    std::istringstream garbage("0 1\n1 abc\n");
    try {
        parse_moments(garbage, 0.0);
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::parse);
    }
    std::istringstream negative("0 1\n1 -2\n");
    CHECK_THROWS_AS(parse_moments(negative, 0.0), Error);
    std::istringstream unordered("0 1\n2 2\n1 1\n");
    CHECK_THROWS_AS(parse_moments(unordered, 0.0), Error);
    std::istringstream concave("0 1\n1 3\n2 1\n");
    CHECK_THROWS_AS(parse_moments(concave, 0.0), Error);
    CHECK_THROWS_AS(load_moments_file("/nonexistent/moments.txt", 0.0), Error);
}

TEST_CASE("moment validation") {
    CHECK_NOTHROW(validate_moments(GammaMeasure(0.3)));
    CallableMeasure bad(0.0, [](double s) { return s < 3 ? 1.0L : -1.0L; }, 1.0, "bad");
    CHECK_THROWS_AS(validate_moments(bad), Error);
}
