#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

namespace testing {

inline double rel_err(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }
inline double rel_err(std::complex<double> a, std::complex<double> b) {
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

}  // namespace testing
