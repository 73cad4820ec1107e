#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace dbrlab {

using Complex = std::complex<double>;

/// Truncated power series a_0 + a_1 z + ... + a_N z^N with complex
/// coefficients. Holds the holomorphic functions of the lab (f, f', f_r,
/// h, phi, a, b). Values are immutable; every operation returns a new series.
///
/// Products and compositions never grow the order: the result is truncated
/// to the smaller operand order.
class TaylorSeries {
public:
    /// The zero series of order 0.
    TaylorSeries() : coeffs_(1, Complex{}) {}

    /// Throws DomainError for an empty coefficient list.
    explicit TaylorSeries(std::vector<Complex> coeffs);

    static TaylorSeries zero(std::size_t order);
    static TaylorSeries constant(Complex c, std::size_t order = 0);
    /// z, as a series of the given order (order >= 1).
    static TaylorSeries identity(std::size_t order);
    /// sum_{k<=order} q^k z^k, i.e. 1/(1 - q z) truncated.
    static TaylorSeries geometric(Complex q, std::size_t order);

    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    std::span<const Complex> coeffs() const noexcept { return coeffs_; }
    Complex operator[](std::size_t k) const { return coeffs_.at(k); }

    /// Horner evaluation. Intended for |z| <= 1, where the truncation is
    /// the function being represented.
    Complex evaluate(Complex z) const;

    /// Coefficients (k+1) a_{k+1}; order N-1. A series of order 0 maps to
    /// the zero series of order 0.
    TaylorSeries derivative() const;

    /// Integral with zero constant term; order N+1.
    TaylorSeries antiderivative() const;

    /// f_r(z) = f(r z), coefficients a_k r^k. Requires 0 <= r <= 1.
    TaylorSeries dilate(double r) const;

    /// sum |a_k|^2
    double h2_norm_sq() const;

    /// Multiplication by z, keeping the order (top coefficient dropped).
    TaylorSeries shift() const;

    TaylorSeries truncated(std::size_t order) const;

    /// 1/f for a_0 != 0, to the same order.
    TaylorSeries reciprocal() const;

    /// exp(f), to the same order.
    TaylorSeries exp() const;

    TaylorSeries conj_coeffs() const;

    friend TaylorSeries operator+(const TaylorSeries& a, const TaylorSeries& b);
    friend TaylorSeries operator-(const TaylorSeries& a, const TaylorSeries& b);
    friend TaylorSeries operator*(const TaylorSeries& a, const TaylorSeries& b);
    friend TaylorSeries operator*(Complex c, const TaylorSeries& a);

private:
    std::vector<Complex> coeffs_;
};

}  // namespace dbrlab
