#pragma once

#include <complex>
#include <ostream>

#include <boost/multiprecision/cpp_int.hpp>

namespace dbrlab {

using Rational = boost::multiprecision::cpp_rational;

/// Exact element of Q[i].
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(long long r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
    GaussianRational& operator-=(const GaussianRational& b) { return *this = *this - b; }
    GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) { return a.re == b.re && a.im == b.im; }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
        return os << "(" << z.re << ")+(" << z.im << ")i";
    }
};

inline GaussianRational conj(const GaussianRational& z) { return {z.re, -z.im}; }

inline std::complex<double> to_complex(const GaussianRational& z) {
    return {static_cast<double>(z.re), static_cast<double>(z.im)};
}
inline std::complex<double> to_complex(const std::complex<double>& z) { return z; }

/// |z| as a double; exactly 0 iff z == 0.
inline double magnitude(const GaussianRational& z) {
    if (z.is_zero()) return 0.0;
    return std::sqrt(static_cast<double>(z.re * z.re + z.im * z.im));
}
inline double magnitude(const std::complex<double>& z) { return std::abs(z); }

}  // namespace dbrlab
