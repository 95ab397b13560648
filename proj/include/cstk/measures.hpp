#pragma once

#include <functional>
#include <iosfwd>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace cstk {

// A positive measure r^beta dmu(r) on (0, L), seen only through its moments
// mu_s = int r^s dmu(r). Implementations must be safe to call concurrently.
class MomentMeasure {
public:
    virtual ~MomentMeasure() = default;
    virtual std::string description() const = 0;
    virtual double beta() const = 0;
    virtual double support_bound() const = 0;
    virtual long double moment(double s) const = 0;
    // True when the Laguerre closed forms apply (r^beta e^{-r} dr).
    virtual bool is_gamma() const { return false; }
};

using MeasurePtr = std::shared_ptr<const MomentMeasure>;

class GammaMeasure final : public MomentMeasure {
public:
    explicit GammaMeasure(double beta);
    std::string description() const override;
    double beta() const override { return beta_; }
    double support_bound() const override { return std::numeric_limits<double>::infinity(); }
    long double moment(double s) const override;
    bool is_gamma() const override { return true; }

private:
    double beta_;
};

// Moments given at a finite list of s values (typically s = beta + n).
class TabulatedMeasure final : public MomentMeasure {
public:
    TabulatedMeasure(double beta, std::vector<std::pair<double, long double>> records,
                     double support_bound, std::string description);
    std::string description() const override { return description_; }
    double beta() const override { return beta_; }
    double support_bound() const override { return support_bound_; }
    long double moment(double s) const override;
    const std::vector<std::pair<double, long double>>& records() const { return records_; }

private:
    double beta_;
    std::vector<std::pair<double, long double>> records_;
    double support_bound_;
    std::string description_;
};

// Moments from a closed-form callable.
class CallableMeasure final : public MomentMeasure {
public:
    CallableMeasure(double beta, std::function<long double(double)> moment, double support_bound,
                    std::string description);
    std::string description() const override { return description_; }
    double beta() const override { return beta_; }
    double support_bound() const override { return support_bound_; }
    long double moment(double s) const override { return moment_(s); }

private:
    double beta_;
    std::function<long double(double)> moment_;
    double support_bound_;
    std::string description_;
};

// Plain-text moments: `s value` per line, `#` comments, optional `# L=<bound>` line.
std::shared_ptr<TabulatedMeasure> parse_moments(std::istream& in, double beta,
                                                const std::string& source = "<stream>");
std::shared_ptr<TabulatedMeasure> load_moments_file(const std::string& path, double beta);

// Positivity and log-convexity of mu_{beta+n} for n <= n_max.
void validate_moments(const MomentMeasure& mu, int n_max = 12);

double x_seq(const MomentMeasure& mu, int n);
double hamiltonian_eigen(const MomentMeasure& mu, int n);
double zeta(const MomentMeasure& mu, int n, double alpha);
double gen_factorial(const MomentMeasure& mu, int n, int m);
// x_{n,m} = x_{n,m}! / x_{n-1,m}!, n >= 1.
double ladder_x(const MomentMeasure& mu, int n, int m);
double ortho_poly_phi(const MomentMeasure& mu, int n, double alpha, double r);

inline constexpr int kMaxGenericDegree = 12;

// phi_0..phi_N for r^alpha dmu by Gram-Schmidt on the Hankel moment matrix, normalized
// to leading coefficient 1/n! (matching (-1)^n L_n^{(alpha)} for the gamma weight).
struct OrthoFamily {
    double alpha = 0;
    std::vector<std::vector<long double>> coeffs;  // coeffs[n][i]: coefficient of r^i
    std::vector<long double> zeta;
    double error_estimate = 0;  // condition number of the scaled Hankel matrix times eps
};
OrthoFamily ortho_family(const MomentMeasure& mu, double alpha, int degree);

struct RadiusEstimate {
    double value = 0;
    int probe_depth = 0;
    double agreement = 0;
    bool converged = false;
    bool diverging = false;
};
RadiusEstimate radius(const MomentMeasure& mu, int m, int probe_depth = 60);
// Always uses the ratio probe, even when a closed form exists.
RadiusEstimate radius_probe(const MomentMeasure& mu, int m, int probe_depth = 60);

struct DomainInclusion {
    double support_bound = 0;
    RadiusEstimate radius;
    bool included = true;
    std::string warning;
};
DomainInclusion check_domain_inclusion(const MomentMeasure& mu, int m);

}  // namespace cstk
