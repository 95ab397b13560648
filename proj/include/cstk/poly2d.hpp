#pragma once

#include <map>
#include <utility>
#include <vector>

#include "cstk/measures.hpp"
#include "cstk/specfun.hpp"

namespace cstk {

struct ModeIndex {
    int n = 0;
    int m = 0;
    double beta = 0.0;

    int lo() const { return n < m ? n : m; }
    int diff() const { return n > m ? n - m : m - n; }
};

// Finite sum of c_{ab} z^a zbar^b, coefficients kept in extended precision.
class PolyExpansion {
public:
    using Key = std::pair<int, int>;
    using Coef = std::complex<long double>;

    PolyExpansion() = default;
    explicit PolyExpansion(std::map<Key, Coef> terms);

    const std::map<Key, Coef>& terms() const { return terms_; }
    cplx coefficient(int a, int b) const;
    cplx evaluate(cplx z) const;

private:
    std::map<Key, Coef> terms_;
};

cplx h_poly(const ModeIndex& idx, cplx z);
PolyExpansion h_poly_expand(const ModeIndex& idx);
// Orthonormal P~_{n,m}; idx.beta must equal mu.beta().
cplx p_norm(const ModeIndex& idx, cplx z, const MomentMeasure& mu);
// Ito's complex Hermite polynomial H_{m,n}(z, zbar).
cplx ito_hermite(int m, int n, cplx z);

enum class Ladder { lower1, raise1, lower2, raise2 };

struct LadderResult {
    bool annihilated = false;
    double coefficient = 0.0;
    ModeIndex target;
};
LadderResult ladder_apply(Ladder which, const ModeIndex& idx, const MomentMeasure& mu);

// -d^2/dz dzbar + zbar d/dzbar - (beta/z) d/dzbar, applied monomial by monomial.
PolyExpansion landau_image(double beta, const PolyExpansion& p);
cplx landau_apply(double beta, const PolyExpansion& p, cplx z);

// Candidate eigenvalues of L_1 on P~_{n,m}. swapped: (x_{m+1,n} + x_{m,n})/2.
// composed: (x_{n,m} + x_{n+1,m})/2, from the ladder actions. differential:
// m + beta + 1/2, meaningful for the gamma weight only.
struct LandauRow {
    int n = 0;
    int m = 0;
    double swapped = 0;
    double composed = 0;
    double differential = 0;
};
std::vector<LandauRow> landau_comparison(const MomentMeasure& mu, int nmax, int mmax);

}  // namespace cstk
