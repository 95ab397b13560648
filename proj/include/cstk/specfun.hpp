#pragma once

#include <complex>
#include <vector>

namespace cstk {

using cplx = std::complex<double>;

// Truncation policy for every infinite series in the library.
struct SeriesControl {
    double rel_tol = 1e-13;
    double abs_tol = 0.0;
    int max_terms = 500;

    void validate() const;
};

double gamma_fn(double x);
// 1/Gamma(x), zero at the poles.
double rgamma(double x);
double pochhammer(double a, int k);
double laguerre(int n, double alpha, double t);
double hermite(int n, double x);
double assoc_hermite(int n, double x, double beta);

cplx pcf_D(double nu, cplx z, const SeriesControl& ctl = {});

// |D_{-beta}(i x sqrt2)|^{-2}, computed from the Kummer-transformed even/odd split
// so that no e^{x^2}-sized cancellation occurs for large |x|.
double pcf_D_inv_sq_imag(double beta, double x, const SeriesControl& ctl = {});

cplx hyp_pfq(const std::vector<double>& numer, const std::vector<double>& denom, cplx t,
             const SeriesControl& ctl = {});
std::complex<long double> hyp_pfq_ext(const std::vector<double>& numer,
                                      const std::vector<double>& denom,
                                      std::complex<long double> t, const SeriesControl& ctl = {});

double mittag_leffler(double alpha, double gamma, double t, const SeriesControl& ctl = {});

// Sum over n,k,j of (1)_{n+2k+j} (beta)_j / (c)_{n+2k+2j} u^n/n! v^k/k! w^j/j!.
cplx lauricella_triple(double c, double beta, cplx u, cplx v, cplx w, const SeriesControl& ctl = {});

}  // namespace cstk
