#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "cstk/cstk.h"

namespace {

cstk_complex c(double re, double im = 0) { return cstk_complex{re, im}; }

bool parses_to(const char* text, double re, double im) {
    cstk_complex z{};
    return cstk_parse_complex(text, &z) == CSTK_OK && z.re == re && z.im == im;
}

}  // namespace

TEST_CASE("version and status names") {
    CHECK(std::string(cstk_version()) == "1.0.0");
    CHECK(std::string(cstk_status_name(CSTK_OK)) == "ok");
    CHECK(std::string(cstk_status_name(CSTK_E_UNKNOWN_CHECK)) == "unknown_check");
    const auto d = cstk_default_control();
    CHECK(d.rel_tol == 1e-13);
    CHECK(d.max_terms == 500);
}

TEST_CASE("complex text round trip") {
    CHECK(parses_to("1+0i", 1, 0));
    CHECK(parses_to("2i", 0, 2));
    CHECK(parses_to("3", 3, 0));
    CHECK(parses_to("-1.5e-3-2i", -1.5e-3, -2));
    CHECK(parses_to("-i", 0, -1));
    CHECK(parses_to(" 0.5 - 1e+2j ", 0.5, -100));
    CHECK(parses_to("1e-3+i", 1e-3, 1));
    cstk_complex z{};
    CHECK(cstk_parse_complex("abc", &z) == CSTK_E_PARSE);
    CHECK(cstk_parse_complex("1+2", &z) == CSTK_E_PARSE);
    CHECK(cstk_parse_complex("nan", &z) == CSTK_E_PARSE);
    CHECK(std::strlen(cstk_last_error()) > 0);

    char buf[64];
    const cstk_complex v{0.1, -2.5};
    const size_t need = cstk_format_complex(v, buf, sizeof buf);
    CHECK(need == std::strlen(buf));
    cstk_complex back{};
    REQUIRE(cstk_parse_complex(buf, &back) == CSTK_OK);
    CHECK(back.re == v.re);
    CHECK(back.im == v.im);
    char tiny[4];
    CHECK(cstk_format_complex(v, tiny, sizeof tiny) == need);
    CHECK(std::strlen(tiny) == 3);
}

TEST_CASE("error codes propagate") {
    double out = 0;
    CHECK(cstk_gamma(-2.0, &out) == CSTK_E_POLE);
    CHECK(cstk_gamma(5.0, &out) == CSTK_OK);
    CHECK(out == doctest::Approx(24.0));
    CHECK(cstk_x_seq(nullptr, 1, &out) == CSTK_E_INVALID_ARGUMENT);
    cstk_measure* mu = nullptr;
    CHECK(cstk_measure_gamma(-1.0, &mu) == CSTK_E_INVALID_ARGUMENT);
    CHECK(mu == nullptr);
    CHECK(cstk_measure_load("/nonexistent/moments.txt", 0.0, &mu) == CSTK_E_IO);
    cstk_complex z{};
    CHECK(cstk_h_poly(1, -1, 0.0, c(1), &z) == CSTK_E_INVALID_ARGUMENT);
}

TEST_CASE("measure handles") {
    cstk_measure* g = nullptr;
    REQUIRE(cstk_measure_gamma(0.0, &g) == CSTK_OK);
    double v = 0;
    CHECK(cstk_gen_factorial(g, 3, 1, &v) == CSTK_OK);
    CHECK(v == doctest::Approx(6.0));
    CHECK(cstk_ladder_x(g, 3, 1, &v) == CSTK_OK);
    CHECK(v == doctest::Approx(3.0));
    int conv = 0, div = 0;
    CHECK(cstk_radius(g, 0, &v, &conv, &div) == CSTK_OK);
    CHECK(std::isinf(v));
    int annihilated = 0, tn = -1, tm = -1;
    CHECK(cstk_ladder_apply(CSTK_LOWER1, 3, 1, g, &annihilated, &v, &tn, &tm) == CSTK_OK);
    CHECK(annihilated == 0);
    CHECK(v == doctest::Approx(std::sqrt(3.0)));
    CHECK(tn == 2);
    cstk_measure_free(g);

    const double s[] = {0, 1, 2, 3};
    const double m[] = {1, 0.5, 1.0 / 3, 0.25};
    cstk_measure* u = nullptr;
    REQUIRE(cstk_measure_tabulated(0.0, s, m, 4, 1.0, &u) == CSTK_OK);
    CHECK(cstk_x_seq(u, 2, &v) == CSTK_OK);
    CHECK(v == doctest::Approx(2.0 / 3));
    CHECK(cstk_x_seq(u, 9, &v) == CSTK_E_INVALID_ARGUMENT);
    cstk_measure_free(u);
    const double bad[] = {1, 3, 1, 1};
    CHECK(cstk_measure_tabulated(0.0, s, bad, 4, 1.0, &u) == CSTK_E_INVALID_ARGUMENT);
}

TEST_CASE("evaluations through the C interface") {
    cstk_complex out{};
    REQUIRE(cstk_kernel_b_analytic(0.0, c(1), 0.0, nullptr, &out) == CSTK_OK);
    CHECK(out.re == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
    CHECK(std::fabs(out.im) < 1e-15);

    int extrapolated = -1;
    REQUIRE(cstk_kernel_b(2, 1.0, c(0), 0.5, nullptr, &out, &extrapolated) == CSTK_OK);
    CHECK(extrapolated == 1);
    CHECK(out.re == doctest::Approx(-1.0606601717798212866).epsilon(1e-8));

    REQUIRE(cstk_h_poly(2, 1, 0.0, c(1), &out) == CSTK_OK);
    CHECK(out.re == doctest::Approx(-1.0));

    size_t count = 0;
    REQUIRE(cstk_h_poly_expand(2, 2, 0.0, 0, nullptr, nullptr, nullptr, &count) == CSTK_OK);
    CHECK(count == 3);
    std::vector<int> a(count), b(count);
    std::vector<cstk_complex> cc(count);
    REQUIRE(cstk_h_poly_expand(2, 2, 0.0, count, a.data(), b.data(), cc.data(), &count) == CSTK_OK);
    double sum = 0;
    for (size_t i = 0; i < count; ++i) sum += cc[i].re;
    CHECK(sum == doctest::Approx(-0.5));

    double d = 0;
    REQUIRE(cstk_eta_density(c(1.3), 1, 0.5, nullptr, &d) == CSTK_OK);
    CHECK(d == doctest::Approx(0.91686548736110936642).epsilon(1e-11));

    std::vector<double> nodes(3), weights(3);
    REQUIRE(cstk_gauss_hermite(3, nodes.data(), weights.data()) == CSTK_OK);
    CHECK(weights[0] + weights[1] + weights[2] == doctest::Approx(std::sqrt(M_PI)));
    CHECK(cstk_gauss_laguerre(0, 0.0, nodes.data(), weights.data()) == CSTK_E_INVALID_ARGUMENT);
}

TEST_CASE("functions and transforms") {
    const double coeffs[] = {0.0, 1.0};
    cstk_function* f = nullptr;
    REQUIRE(cstk_function_from_coefficients(0.0, coeffs, 2, &f) == CSTK_OK);
    double v = 0;
    CHECK(cstk_function_eval(f, 1.0, &v) == CSTK_OK);
    CHECK(v == doctest::Approx(std::sqrt(2.0)));
    const cstk_complex targets[] = {c(0.5, 0.25), c(-1.0, 0.5)};
    cstk_complex out[2];
    REQUIRE(cstk_transform(f, 0, 0.0, targets, 2, 8, nullptr, 2, out) == CSTK_OK);
    // phi_1 maps to z for m = 0, beta = 0
    for (int i = 0; i < 2; ++i) {
        CHECK(std::fabs(out[i].re - targets[i].re) < 1e-6);
        CHECK(std::fabs(out[i].im - targets[i].im) < 1e-6);
    }
    cstk_function_free(f);
    CHECK(cstk_function_load("/nonexistent/f.txt", &f) == CSTK_E_IO);
}

TEST_CASE("verification through the C interface") {
    CHECK(cstk_check_count(0) == 10);
    CHECK(cstk_check_count(1) == 12);
    CHECK(std::string(cstk_check_name(0)) == "orthogonality-2d");
    CHECK(cstk_check_name(12) == nullptr);

    cstk_verify_config* cfg = nullptr;
    REQUIRE(cstk_verify_config_new(&cfg) == CSTK_OK);
    CHECK(cstk_verify_config_set_mmax(cfg, 1) == CSTK_OK);
    CHECK(cstk_verify_config_set_samples(cfg, 4) == CSTK_OK);
    cstk_report* r = nullptr;
    REQUIRE(cstk_verify_run("overlap", cfg, &r) == CSTK_OK);
    CHECK(cstk_report_pass(r) == 1);
    CHECK(std::string(cstk_report_check(r)) == "overlap");
    char* text = nullptr;
    REQUIRE(cstk_report_json(r, 0, &text) == CSTK_OK);
    CHECK(std::string(text).find("\"check\": \"overlap\"") != std::string::npos);
    cstk_string_free(text);
    cstk_report_free(r);

    CHECK(cstk_verify_run("nope", cfg, &r) == CSTK_E_UNKNOWN_CHECK);
    CHECK(cstk_verify_config_set_tolerance(cfg, "overlap.closed_vs_series", 1e-40) == CSTK_OK);
    const char* names[] = {"overlap", "kummer-normalization"};
    cstk_report* many[2] = {nullptr, nullptr};
    REQUIRE(cstk_verify_run_many(names, 2, cfg, many) == CSTK_OK);
    CHECK(cstk_report_pass(many[0]) == 0);
    CHECK(cstk_report_pass(many[1]) == 1);
    cstk_report_free(many[0]);
    cstk_report_free(many[1]);
    cstk_verify_config_free(cfg);
}
