#pragma once

#include <complex>
#include <vector>

namespace dbrlab {

/// Correctly rounded floating-point summation (Shewchuk's non-overlapping
/// partials, with the half-even fix-up used by Python's math.fsum).
///
/// The returned value depends only on the multiset of addends, not on the
/// order they were added in. Quadrature relies on this to produce
/// bit-identical results for any thread count.
class ExactSum {
public:
    void add(double x);
    void merge(const ExactSum& other);
    double value() const;

private:
    std::vector<double> partials_;
};

class ExactComplexSum {
public:
    void add(std::complex<double> z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    void merge(const ExactComplexSum& other) {
        re_.merge(other.re_);
        im_.merge(other.im_);
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
    ExactSum re_;
    ExactSum im_;
};

}  // namespace dbrlab
