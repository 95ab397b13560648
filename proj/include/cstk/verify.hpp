#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "cstk/specfun.hpp"

namespace cstk {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct Criterion {
    std::string name;
    double value = 0;
    double tolerance = 0;
    bool pass = false;
};

struct VerificationReport {
    std::string check;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    double max_abs_err = 0;
    double max_rel_err = 0;
    double tolerance = 0;
    std::vector<Criterion> criteria;
    bool pass = false;
    // Comparison-only reports (no tolerance attached) always pass.
    bool informational = false;
    double runtime_seconds = 0;
    std::uint64_t seed = kDefaultSeed;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();

    nlohmann::ordered_json to_json(bool include_timing = true) const;
};

struct VerifyConfig {
    SeriesControl ctl;
    int n_r = 64;
    int n_theta = 256;
    std::uint64_t seed = kDefaultSeed;
    int jobs = 1;
    // Overrides keyed "<check>.<criterion>", e.g. "overlap.closed_vs_series".
    std::map<std::string, double> tolerances;
    std::optional<int> mmax;
    std::optional<int> nmax;
    std::optional<int> samples;
    std::optional<std::vector<double>> betas;

    double tol(const std::string& check, const std::string& criterion, double fallback) const;
};

VerificationReport check_orthogonality_2d(const std::vector<double>& betas, int nmax, const VerifyConfig& cfg);
VerificationReport check_assoc_hermite(const std::vector<double>& betas, int nmax, const VerifyConfig& cfg);
VerificationReport check_kummer_normalization(const std::vector<double>& betas, const std::vector<double>& ts,
                                              const VerifyConfig& cfg);
VerificationReport check_generating_function(const std::vector<double>& betas, const std::vector<double>& cs,
                                             const std::vector<double>& xs, const std::vector<cplx>& ts,
                                             const VerifyConfig& cfg);
VerificationReport check_kernel_reduction(int mmax, int samples, const VerifyConfig& cfg);
VerificationReport check_overlap(int mmax, int samples, const VerifyConfig& cfg);
VerificationReport check_pde_eigen(const std::vector<double>& betas, int nmax, int samples, const VerifyConfig& cfg);
VerificationReport check_transform(int mmax, const std::vector<double>& betas, int nmax, const VerifyConfig& cfg);
VerificationReport check_resolution_identity(int mmax, const std::vector<double>& betas, int nmax,
                                             const VerifyConfig& cfg);
VerificationReport check_density_positivity(int mmax, const std::vector<double>& betas, int grid_points,
                                            const VerifyConfig& cfg);
VerificationReport check_quadrature(const VerifyConfig& cfg);
VerificationReport landau_compare(const std::vector<double>& betas, int nmax, const VerifyConfig& cfg);

// The ten suites run by "all", in report order.
const std::vector<std::string>& default_check_names();
// Suites available by name but outside "all".
const std::vector<std::string>& extra_check_names();

// Runs a suite by name with its default parameters, adjusted by cfg.
VerificationReport run_check(const std::string& name, const VerifyConfig& cfg);
// Runs several suites on cfg.jobs workers; the result order follows `names`.
std::vector<VerificationReport> run_checks(const std::vector<std::string>& names, const VerifyConfig& cfg);

}  // namespace cstk
