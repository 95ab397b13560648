#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "cstk/quadrature.hpp"
#include "cstk/specfun.hpp"

namespace cstk {

// Density of d omega_beta: |D_{-beta}(i x sqrt2)|^{-2} / (sqrt(pi) Gamma(beta+1)).
double omega_weight(double x, double beta, const SeriesControl& ctl = {});
// Orthonormal basis 2^{-n/2} H_n(x,beta) / sqrt((beta+1)_n) of L^2(d omega_beta).
double basis_phi(int n, double x, double beta);

// Truncated trapezoid rule for d omega_beta, resolving polynomials up to degree 2*degree_hint.
QuadratureRule omega_rule(double beta, int degree_hint, double rel_tol = 1e-12,
                          const SeriesControl& ctl = {});

// How the weight shells of the triple series are produced: by literal enumeration,
// or by the associated Hermite recurrence they reduce to on the kernel's arguments.
enum class ShellRoute { triple_series, hermite_shells };

struct KernelValue {
    cplx value;
    // Set when z = 0 and m >= 1: the value is a ring-average extrapolation.
    bool extrapolated = false;
};

KernelValue kernel_B_eval(int m, double beta, cplx z, double x, const SeriesControl& ctl = {},
                          ShellRoute route = ShellRoute::triple_series);
cplx kernel_B(int m, double beta, cplx z, double x, const SeriesControl& ctl = {},
              ShellRoute route = ShellRoute::triple_series);
cplx kernel_B_analytic(double beta, cplx z, double x, const SeriesControl& ctl = {});
cplx kernel_B_true_poly(int m, cplx z, double x);
// Exact z -> 0 value of kernel_B, used to audit the extrapolation.
double kernel_B_at_origin(int m, double beta, double x);

// A real function on the line, either sampled on a grid (interpolated with a
// barycentric rational scheme, zero outside the grid) or given by coefficients
// over basis_phi.
class SampledFunction {
public:
    static SampledFunction from_grid(double beta, std::vector<double> xs, std::vector<double> ys);
    static SampledFunction from_coefficients(double beta, std::vector<double> coeffs);
    // Header `# kind=grid|coeffs beta=<float>`, then `x value` pairs or one coefficient per line.
    static SampledFunction parse(std::istream& in, const std::string& source = "<stream>");
    static SampledFunction load(const std::string& path);

    bool is_grid() const { return grid_; }
    double beta() const { return beta_; }
    const std::vector<double>& xs() const { return xs_; }
    const std::vector<double>& ys() const { return ys_; }
    const std::vector<double>& coefficients() const { return coeffs_; }

    double operator()(double x) const;
    // <f, phi_n> for n <= nmax under the given omega_beta rule.
    std::vector<double> project(int nmax, const QuadratureRule& rule) const;

private:
    struct Interp;
    bool grid_ = false;
    double beta_ = 0;
    std::vector<double> xs_, ys_, coeffs_;
    std::shared_ptr<const Interp> interp_;
};

// B[f](z) = int conj(B_{beta,m}(z, x)) f(x) d omega_beta(x), so that B[phi_n] = P~_{n,m}.
// Targets are split over `jobs` worker threads; output order follows the targets.
std::vector<cplx> apply_transform(const SampledFunction& f, int m, double beta,
                                  const std::vector<cplx>& targets, const QuadratureRule& rule,
                                  const SeriesControl& ctl = {},
                                  ShellRoute route = ShellRoute::hermite_shells, int jobs = 1);
// Several functions at once; the kernel is evaluated once per (target, node). Result [f][target].
std::vector<std::vector<cplx>> apply_transform_many(const std::vector<SampledFunction>& fs, int m, double beta,
                                                    const std::vector<cplx>& targets, const QuadratureRule& rule,
                                                    const SeriesControl& ctl = {},
                                                    ShellRoute route = ShellRoute::hermite_shells, int jobs = 1);

}  // namespace cstk
