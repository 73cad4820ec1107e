#include "dbrlab/series.hpp"

#include <algorithm>
#include <cmath>

#include "dbrlab/errors.hpp"

namespace dbrlab {

TaylorSeries::TaylorSeries(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw DomainError("TaylorSeries needs at least one coefficient");
}

TaylorSeries TaylorSeries::zero(std::size_t order) {
    return TaylorSeries(std::vector<Complex>(order + 1));
}

TaylorSeries TaylorSeries::constant(Complex c, std::size_t order) {
    std::vector<Complex> a(order + 1);
    a[0] = c;
    return TaylorSeries(std::move(a));
}

TaylorSeries TaylorSeries::identity(std::size_t order) {
    if (order < 1) throw DomainError("identity series needs order >= 1");
    std::vector<Complex> a(order + 1);
    a[1] = 1.0;
    return TaylorSeries(std::move(a));
}

TaylorSeries TaylorSeries::geometric(Complex q, std::size_t order) {
    std::vector<Complex> a(order + 1);
    Complex p = 1.0;
    for (auto& c : a) {
        c = p;
        p *= q;
    }
    return TaylorSeries(std::move(a));
}

Complex TaylorSeries::evaluate(Complex z) const {
    Complex acc = coeffs_.back();
    for (std::size_t k = coeffs_.size() - 1; k-- > 0;) acc = acc * z + coeffs_[k];
    return acc;
}

TaylorSeries TaylorSeries::derivative() const {
    if (order() == 0) return zero(0);
    std::vector<Complex> b(order());
    for (std::size_t k = 0; k < b.size(); ++k) b[k] = static_cast<double>(k + 1) * coeffs_[k + 1];
    return TaylorSeries(std::move(b));
}

TaylorSeries TaylorSeries::antiderivative() const {
    std::vector<Complex> b(coeffs_.size() + 1);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) b[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
    return TaylorSeries(std::move(b));
}

TaylorSeries TaylorSeries::dilate(double r) const {
    if (!(r >= 0.0 && r <= 1.0)) throw DomainError("dilation radius must lie in [0,1]");
    std::vector<Complex> b(coeffs_);
    double p = 1.0;
    for (auto& c : b) {
        c *= p;
        p *= r;
    }
    return TaylorSeries(std::move(b));
}

double TaylorSeries::h2_norm_sq() const {
    double s = 0.0;
    for (const auto& c : coeffs_) s += std::norm(c);
    return s;
}

TaylorSeries TaylorSeries::shift() const {
    std::vector<Complex> b(coeffs_.size());
    std::copy(coeffs_.begin(), coeffs_.end() - 1, b.begin() + 1);
    return TaylorSeries(std::move(b));
}

TaylorSeries TaylorSeries::truncated(std::size_t n) const {
    std::vector<Complex> b(n + 1);
    std::copy_n(coeffs_.begin(), std::min(b.size(), coeffs_.size()), b.begin());
    return TaylorSeries(std::move(b));
}

TaylorSeries TaylorSeries::reciprocal() const {
    if (coeffs_[0] == Complex{}) throw DomainError("reciprocal of a series with zero constant term");
    const std::size_t n = coeffs_.size();
    std::vector<Complex> b(n);
    b[0] = 1.0 / coeffs_[0];
    for (std::size_t k = 1; k < n; ++k) {
        Complex s{};
        for (std::size_t j = 1; j <= k; ++j) s += coeffs_[j] * b[k - j];
        b[k] = -s * b[0];
    }
    return TaylorSeries(std::move(b));
}

TaylorSeries TaylorSeries::exp() const {
    // g = exp(f)  =>  n g_n = sum_{k=1}^{n} k f_k g_{n-k}
    const std::size_t n = coeffs_.size();
    std::vector<Complex> g(n);
    g[0] = std::exp(coeffs_[0]);
    for (std::size_t m = 1; m < n; ++m) {
        Complex s{};
        for (std::size_t k = 1; k <= m; ++k) s += static_cast<double>(k) * coeffs_[k] * g[m - k];
        g[m] = s / static_cast<double>(m);
    }
    return TaylorSeries(std::move(g));
}

TaylorSeries TaylorSeries::conj_coeffs() const {
    std::vector<Complex> b(coeffs_);
    for (auto& c : b) c = std::conj(c);
    return TaylorSeries(std::move(b));
}

TaylorSeries operator+(const TaylorSeries& a, const TaylorSeries& b) {
    const std::size_t n = std::min(a.order(), b.order());
    std::vector<Complex> c(n + 1);
    for (std::size_t k = 0; k <= n; ++k) c[k] = a.coeffs_[k] + b.coeffs_[k];
    return TaylorSeries(std::move(c));
}

TaylorSeries operator-(const TaylorSeries& a, const TaylorSeries& b) {
    return a + Complex(-1.0) * b;
}

TaylorSeries operator*(const TaylorSeries& a, const TaylorSeries& b) {
    const std::size_t n = std::min(a.order(), b.order());
    std::vector<Complex> c(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        Complex s{};
        for (std::size_t j = 0; j <= k; ++j) s += a.coeffs_[j] * b.coeffs_[k - j];
        c[k] = s;
    }
    return TaylorSeries(std::move(c));
}

TaylorSeries operator*(Complex s, const TaylorSeries& a) {
    std::vector<Complex> c(a.coeffs_);
    for (auto& x : c) x *= s;
    return TaylorSeries(std::move(c));
}

}  // namespace dbrlab
