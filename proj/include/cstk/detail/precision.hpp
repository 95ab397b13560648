#pragma once

// Extended-precision helpers shared by the series code. The quad type is the
// GCC binary128 software float; only +,-,*,/ are used so libquadmath is not needed.

#include <cmath>
#include <complex>

namespace cstk::detail {

using quad = __float128;
using cld = std::complex<long double>;

inline quad qabs(quad a) { return a < 0 ? -a : a; }

// One Newton step from the long double root doubles the correct bits.
inline quad qsqrt(quad a) {
    if (a <= 0) return 0;
    quad y = std::sqrt(static_cast<long double>(a));
    return (y + a / y) / 2;
}

struct qcomplex {
    quad re = 0;
    quad im = 0;

    qcomplex() = default;
    qcomplex(quad r, quad i = 0) : re(r), im(i) {}
    explicit qcomplex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

    qcomplex& operator+=(const qcomplex& o) { re += o.re; im += o.im; return *this; }
    qcomplex& operator-=(const qcomplex& o) { re -= o.re; im -= o.im; return *this; }
    qcomplex& operator*=(const qcomplex& o) {
        quad r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    qcomplex& operator*=(quad s) { re *= s; im *= s; return *this; }
    qcomplex& operator/=(quad s) { re /= s; im /= s; return *this; }

    qcomplex conj() const { return {re, -im}; }
    quad norm() const { return re * re + im * im; }
    long double abs() const {
        return std::hypot(static_cast<long double>(re), static_cast<long double>(im));
    }
    qcomplex inv() const {
        quad d = norm();
        return {re / d, -im / d};
    }
    std::complex<double> to_cd() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }
};

inline qcomplex operator+(qcomplex a, const qcomplex& b) { return a += b; }
inline qcomplex operator-(qcomplex a, const qcomplex& b) { return a -= b; }
inline qcomplex operator-(const qcomplex& a) { return {-a.re, -a.im}; }
inline qcomplex operator*(qcomplex a, const qcomplex& b) { return a *= b; }
inline qcomplex operator*(qcomplex a, quad s) { return a *= s; }
inline qcomplex operator*(quad s, qcomplex a) { return a *= s; }
inline qcomplex operator/(qcomplex a, quad s) { return a /= s; }
inline qcomplex operator/(const qcomplex& a, const qcomplex& b) { return a * b.inv(); }

inline qcomplex qpow(qcomplex z, int k) {
    if (k < 0) return qpow(z.inv(), -k);
    qcomplex r(1);
    while (k > 0) {
        if (k & 1) r *= z;
        z *= z;
        k >>= 1;
    }
    return r;
}

// Neumaier variant of Kahan summation.
template <class T>
class CompensatedSum {
public:
    void add(T x) {
        T t = s_ + x;
        if (std::fabs(s_) >= std::fabs(x))
            c_ += (s_ - t) + x;
        else
            c_ += (x - t) + s_;
        s_ = t;
    }
    T value() const { return s_ + c_; }

private:
    T s_ = 0;
    T c_ = 0;
};

class CompensatedComplexSum {
public:
    void add(const cld& z) { re_.add(z.real()); im_.add(z.imag()); }
    cld value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum<long double> re_;
    CompensatedSum<long double> im_;
};

// Polynomial families evaluated in any arithmetic type.

template <class T>
T pochhammer_t(T a, int k) {
    T r = 1;
    for (int i = 0; i < k; ++i) r *= a + T(i);
    return r;
}

template <class T>
T factorial_t(int k) {
    T r = 1;
    for (int i = 2; i <= k; ++i) r *= T(i);
    return r;
}

// Explicit sum with binom(n+alpha, n-k) = (alpha+k+1)_{n-k}/(n-k)!, valid for every real alpha.
template <class T>
T laguerre_t(int n, T alpha, T t) {
    T sum = 0;
    T tk_over_kfact = 1;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) tk_over_kfact = tk_over_kfact * t / T(k);
        T binom = pochhammer_t<T>(alpha + T(k + 1), n - k) / factorial_t<T>(n - k);
        T term = binom * tk_over_kfact;
        sum += (k % 2 == 0) ? term : -term;
    }
    return sum;
}

template <class T>
T assoc_hermite_t(int n, T x, T beta) {
    if (n == 0) return T(1);
    T h0 = 1, h1 = T(2) * x;
    for (int k = 1; k < n; ++k) {
        T h2 = T(2) * x * h1 - T(2) * (T(k) + beta) * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

}  // namespace cstk::detail
