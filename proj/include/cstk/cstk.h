/* C interface to the cstk library. Every fallible call returns a cstk_status;
 * on failure the message is available from cstk_last_error() on the same thread. */
#ifndef CSTK_CSTK_H
#define CSTK_CSTK_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(CSTK_BUILDING)
#    define CSTK_API __declspec(dllexport)
#  else
#    define CSTK_API __declspec(dllimport)
#  endif
#else
#  define CSTK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cstk_status {
    CSTK_OK = 0,
    CSTK_E_INVALID_ARGUMENT = 1,
    CSTK_E_POLE = 2,
    CSTK_E_NOT_CONVERGED = 3,
    CSTK_E_ILL_CONDITIONED = 4,
    CSTK_E_PARSE = 5,
    CSTK_E_IO = 6,
    CSTK_E_UNKNOWN_CHECK = 7,
    CSTK_E_INTERNAL = 8
} cstk_status;

typedef struct cstk_complex {
    double re;
    double im;
} cstk_complex;

typedef struct cstk_series_control {
    double rel_tol;
    double abs_tol;
    int max_terms;
} cstk_series_control;

typedef struct cstk_measure cstk_measure;
typedef struct cstk_function cstk_function;
typedef struct cstk_verify_config cstk_verify_config;
typedef struct cstk_report cstk_report;

CSTK_API const char* cstk_version(void);
CSTK_API const char* cstk_last_error(void);
CSTK_API const char* cstk_status_name(cstk_status s);
/* Library defaults: rel_tol 1e-13, abs_tol 0, max_terms 500. */
CSTK_API cstk_series_control cstk_default_control(void);

/* "a+bi" with 17 significant digits. Returns the length the full text needs;
 * writes at most cap bytes including the terminator. */
CSTK_API size_t cstk_format_complex(cstk_complex z, char* buf, size_t cap);
/* Accepts "1+0i", "2i", "-i", "3", "-1.5e-3-2i". */
CSTK_API cstk_status cstk_parse_complex(const char* text, cstk_complex* out);
/* Free a string returned by the library. */
CSTK_API void cstk_string_free(char* s);

/* Special functions. A NULL control means the defaults. */
CSTK_API cstk_status cstk_gamma(double x, double* out);
CSTK_API cstk_status cstk_pochhammer(double a, int k, double* out);
CSTK_API cstk_status cstk_laguerre(int n, double alpha, double t, double* out);
CSTK_API cstk_status cstk_hermite(int n, double x, double* out);
CSTK_API cstk_status cstk_assoc_hermite(int n, double x, double beta, double* out);
CSTK_API cstk_status cstk_pcf_d(double nu, cstk_complex z, const cstk_series_control* ctl, cstk_complex* out);
CSTK_API cstk_status cstk_hyp_pfq(const double* numer, int p, const double* denom, int q, cstk_complex t,
                                  const cstk_series_control* ctl, cstk_complex* out);
CSTK_API cstk_status cstk_mittag_leffler(double alpha, double gamma, double t, const cstk_series_control* ctl,
                                         double* out);
CSTK_API cstk_status cstk_lauricella_triple(double c, double beta, cstk_complex u, cstk_complex v, cstk_complex w,
                                            const cstk_series_control* ctl, cstk_complex* out);

/* Radial measures. */
CSTK_API cstk_status cstk_measure_gamma(double beta, cstk_measure** out);
/* Moments mu[i] at exponents s[i], strictly increasing; support_bound may be INFINITY. */
CSTK_API cstk_status cstk_measure_tabulated(double beta, const double* s, const double* mu, size_t n,
                                            double support_bound, cstk_measure** out);
CSTK_API cstk_status cstk_measure_load(const char* path, double beta, cstk_measure** out);
CSTK_API void cstk_measure_free(cstk_measure* mu);
CSTK_API cstk_status cstk_measure_beta(const cstk_measure* mu, double* out);
CSTK_API cstk_status cstk_measure_moment(const cstk_measure* mu, double s, double* out);
CSTK_API cstk_status cstk_measure_validate(const cstk_measure* mu, int n_max);
CSTK_API cstk_status cstk_x_seq(const cstk_measure* mu, int n, double* out);
CSTK_API cstk_status cstk_hamiltonian_eigen(const cstk_measure* mu, int n, double* out);
CSTK_API cstk_status cstk_gen_factorial(const cstk_measure* mu, int n, int m, double* out);
CSTK_API cstk_status cstk_ladder_x(const cstk_measure* mu, int n, int m, double* out);
CSTK_API cstk_status cstk_zeta(const cstk_measure* mu, int n, double alpha, double* out);
CSTK_API cstk_status cstk_ortho_poly_phi(const cstk_measure* mu, int n, double alpha, double r, double* out);
/* converged/diverging may be NULL. */
CSTK_API cstk_status cstk_radius(const cstk_measure* mu, int m, double* value, int* converged, int* diverging);
/* included is 0 when the support bound exceeds the convergence radius. */
CSTK_API cstk_status cstk_domain_inclusion(const cstk_measure* mu, int m, int* included, double* radius);

/* Two-dimensional polynomials. */
CSTK_API cstk_status cstk_h_poly(int n, int m, double beta, cstk_complex z, cstk_complex* out);
/* Monomial expansion sum c_k z^a_k zbar^b_k. *count receives the number of terms;
 * arrays may be NULL when cap is 0. */
CSTK_API cstk_status cstk_h_poly_expand(int n, int m, double beta, size_t cap, int* a, int* b, cstk_complex* c,
                                        size_t* count);
CSTK_API cstk_status cstk_p_norm(int n, int m, const cstk_measure* mu, cstk_complex z, cstk_complex* out);
CSTK_API cstk_status cstk_ito_hermite(int m, int n, cstk_complex z, cstk_complex* out);
/* The operator -d^2/dz dzbar + zbar d/dzbar - (beta/z) d/dzbar applied to H_{n,m}. */
CSTK_API cstk_status cstk_landau_apply_h(double beta, int n, int m, cstk_complex z, cstk_complex* out);

typedef enum cstk_ladder {
    CSTK_LOWER1 = 0,
    CSTK_RAISE1 = 1,
    CSTK_LOWER2 = 2,
    CSTK_RAISE2 = 3
} cstk_ladder;
CSTK_API cstk_status cstk_ladder_apply(cstk_ladder which, int n, int m, const cstk_measure* mu, int* annihilated,
                                       double* coefficient, int* target_n, int* target_m);

/* Coherent states. */
CSTK_API cstk_status cstk_gnlcs_coeff(int n, int m, double beta, cstk_complex z, const cstk_series_control* ctl,
                                      cstk_complex* out);
CSTK_API cstk_status cstk_norm_series(int m, double beta, cstk_complex z, const cstk_series_control* ctl,
                                      double* out);
CSTK_API cstk_status cstk_norm_closed_m0(double beta, double t, const cstk_series_control* ctl, double* out);
CSTK_API cstk_status cstk_overlap_closed(int m, double beta, cstk_complex z, cstk_complex w,
                                         const cstk_series_control* ctl, cstk_complex* out);
CSTK_API cstk_status cstk_overlap_series(int m, double beta, cstk_complex z, cstk_complex w,
                                         const cstk_series_control* ctl, cstk_complex* out);
CSTK_API cstk_status cstk_kernel_k(cstk_complex z, cstk_complex w, double beta, const cstk_series_control* ctl,
                                   cstk_complex* out);
CSTK_API cstk_status cstk_eta_density(cstk_complex z, int m, double beta, const cstk_series_control* ctl,
                                      double* out);

/* Quadrature. Output arrays hold n entries. */
CSTK_API cstk_status cstk_gauss_laguerre(int n, double alpha, double* nodes, double* weights);
CSTK_API cstk_status cstk_gauss_hermite(int n, double* nodes, double* weights);

/* Transforms. */
CSTK_API cstk_status cstk_omega_weight(double x, double beta, const cstk_series_control* ctl, double* out);
CSTK_API cstk_status cstk_basis_phi(int n, double x, double beta, double* out);
/* extrapolated may be NULL; it is set to 1 when z = 0 and m >= 1. */
CSTK_API cstk_status cstk_kernel_b(int m, double beta, cstk_complex z, double x, const cstk_series_control* ctl,
                                   cstk_complex* out, int* extrapolated);
CSTK_API cstk_status cstk_kernel_b_analytic(double beta, cstk_complex z, double x, const cstk_series_control* ctl,
                                            cstk_complex* out);
CSTK_API cstk_status cstk_kernel_b_true_poly(int m, cstk_complex z, double x, cstk_complex* out);

CSTK_API cstk_status cstk_function_from_grid(double beta, const double* xs, const double* ys, size_t n,
                                             cstk_function** out);
CSTK_API cstk_status cstk_function_from_coefficients(double beta, const double* c, size_t n, cstk_function** out);
CSTK_API cstk_status cstk_function_load(const char* path, cstk_function** out);
CSTK_API void cstk_function_free(cstk_function* f);
CSTK_API cstk_status cstk_function_beta(const cstk_function* f, double* out);
CSTK_API cstk_status cstk_function_eval(const cstk_function* f, double x, double* out);
/* B[f] at n targets. The line rule resolves degree 2*degree_hint. */
CSTK_API cstk_status cstk_transform(const cstk_function* f, int m, double beta, const cstk_complex* targets,
                                    size_t n, int degree_hint, const cstk_series_control* ctl, int jobs,
                                    cstk_complex* out);

/* Verification suites. */
CSTK_API size_t cstk_check_count(int include_extra);
/* Default suites first, then the extra ones. NULL past the end. */
CSTK_API const char* cstk_check_name(size_t i);

CSTK_API cstk_status cstk_verify_config_new(cstk_verify_config** out);
CSTK_API void cstk_verify_config_free(cstk_verify_config* cfg);
CSTK_API cstk_status cstk_verify_config_set_control(cstk_verify_config* cfg, const cstk_series_control* ctl);
CSTK_API cstk_status cstk_verify_config_set_grid(cstk_verify_config* cfg, int n_r, int n_theta);
CSTK_API cstk_status cstk_verify_config_set_seed(cstk_verify_config* cfg, unsigned long long seed);
CSTK_API cstk_status cstk_verify_config_set_jobs(cstk_verify_config* cfg, int jobs);
CSTK_API cstk_status cstk_verify_config_set_mmax(cstk_verify_config* cfg, int mmax);
CSTK_API cstk_status cstk_verify_config_set_nmax(cstk_verify_config* cfg, int nmax);
CSTK_API cstk_status cstk_verify_config_set_samples(cstk_verify_config* cfg, int samples);
CSTK_API cstk_status cstk_verify_config_set_betas(cstk_verify_config* cfg, const double* betas, size_t n);
/* key is "<check>.<criterion>", e.g. "overlap.diagonal". */
CSTK_API cstk_status cstk_verify_config_set_tolerance(cstk_verify_config* cfg, const char* key, double tol);

CSTK_API cstk_status cstk_verify_run(const char* name, const cstk_verify_config* cfg, cstk_report** out);
/* Runs n suites on the configured number of workers; out receives n reports in order. */
CSTK_API cstk_status cstk_verify_run_many(const char* const* names, size_t n, const cstk_verify_config* cfg,
                                          cstk_report** out);
CSTK_API void cstk_report_free(cstk_report* r);
CSTK_API int cstk_report_pass(const cstk_report* r);
CSTK_API const char* cstk_report_check(const cstk_report* r);
CSTK_API double cstk_report_runtime(const cstk_report* r);
/* Pretty-printed JSON; release with cstk_string_free. */
CSTK_API cstk_status cstk_report_json(const cstk_report* r, int include_timing, char** out);

#ifdef __cplusplus
}
#endif

#endif
