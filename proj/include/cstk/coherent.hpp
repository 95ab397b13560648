#pragma once

#include "cstk/specfun.hpp"

namespace cstk {

struct CoherentSpec {
    cplx z;
    int m = 0;
    double beta = 0.0;
    SeriesControl truncation;
};

// Unnormalized coefficient conj(H_{n,m}(z)) / sqrt(Gamma(beta+max(n,m)+1)/min(n,m)!).
cplx gnlcs_coeff(int n, const CoherentSpec& spec);

// N_{beta,m}(|z|^2) = sum_n |c_n|^2.
double norm_series(const CoherentSpec& spec);

// S(t) = e^t 1F1(beta; beta+1; -t), the total normalization of the m = 0 states
// (S(t)/Gamma(beta+1) is N_{beta,0}).
double norm_closed_m0(double beta, double t, const SeriesControl& ctl = {});
// Same quantity as the plain power series sum_n t^n/(beta+1)_n.
double norm_power_series_m0(double beta, double t, const SeriesControl& ctl = {});

// Closed form of sum_n conj(c_n(z)) c_n(w): finite Laguerre sum plus the double 2F2 sum.
cplx overlap_bracket(cplx z, cplx w, int m, double beta, const SeriesControl& ctl = {});
// <theta_z | theta_w>: the bracket over sqrt(N(z) N(w)).
cplx overlap_closed(cplx z, cplx w, int m, double beta, const SeriesControl& ctl = {});
// The same overlap summed directly from the coefficients.
cplx overlap_series(cplx z, cplx w, int m, double beta, const SeriesControl& ctl = {});

cplx kernel_K(cplx z, cplx w, double beta, const SeriesControl& ctl = {});

// Density of eta_{beta,m} against (1/pi) dx dy: N_{beta,m}(u) u^beta e^{-u}, u = |z|^2.
double eta_density(cplx z, int m, double beta, const SeriesControl& ctl = {});

}  // namespace cstk
