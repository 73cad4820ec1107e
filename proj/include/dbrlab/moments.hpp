#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "dbrlab/errors.hpp"
#include "dbrlab/gaussian_rational.hpp"
#include "dbrlab/quadrature.hpp"
#include "dbrlab/weights.hpp"

namespace dbrlab {

/// Dense (n x n) matrix, row-major.
template <class T>
class SquareTable {
public:
    SquareTable() = default;
    explicit SquareTable(std::size_t n) : n_(n), data_(n * n, T(0)) {}

    std::size_t size() const noexcept { return n_; }
    T& operator()(std::size_t j, std::size_t k) { return data_[j * n_ + k]; }
    const T& operator()(std::size_t j, std::size_t k) const { return data_[j * n_ + k]; }

private:
    std::size_t n_ = 0;
    std::vector<T> data_;
};

enum class ProvenanceKind { Point, Measure, Synthetic };

struct Provenance {
    ProvenanceKind kind = ProvenanceKind::Synthetic;
    /// Grid identifier for Measure tables.
    std::string grid;

    std::string str() const;
    static Provenance parse(const std::string& text);
};

/// M[j][k] = <u, z^j conj(z)^k> for 0 <= j,k <= order.
template <class T>
struct BasicMomentTable {
    SquareTable<T> M;
    Provenance provenance;

    BasicMomentTable() = default;
    BasicMomentTable(std::size_t order, Provenance p) : M(order + 1), provenance(std::move(p)) {}

    std::size_t order() const noexcept { return M.size() - 1; }
    T& operator()(std::size_t j, std::size_t k) { return M(j, k); }
    const T& operator()(std::size_t j, std::size_t k) const { return M(j, k); }
};

using MomentTable = BasicMomentTable<Complex>;
using ExactMomentTable = BasicMomentTable<GaussianRational>;

/// u = sum_{j,k} c_jk d^j dbar^k delta_a.
template <class T>
struct BasicPointDistribution {
    T a;
    SquareTable<T> c;

    std::size_t degree() const noexcept { return c.size() - 1; }
    bool is_zero() const {
        for (std::size_t j = 0; j < c.size(); ++j)
            for (std::size_t k = 0; k < c.size(); ++k)
                if (magnitude(c(j, k)) != 0.0) return false;
        return true;
    }
};

using PointDistribution = BasicPointDistribution<Complex>;
using ExactPointDistribution = BasicPointDistribution<GaussianRational>;

namespace detail {

template <class T>
T conj_of(const T& x) {
    using std::conj;
    return conj(x);
}

template <class T>
T factorial(std::size_t n) {
    T f(1);
    for (std::size_t i = 2; i <= n; ++i) f = f * T(static_cast<long long>(i));
    return f;
}

template <class T>
T binomial(std::size_t n, std::size_t k) {
    long long b = 1;
    for (std::size_t i = 1; i <= k; ++i) b = b * static_cast<long long>(n - k + i) / static_cast<long long>(i);
    return T(b);
}

}  // namespace detail

/// Centered moments <u, (z-a)^m conj(z-a)^n> = (-1)^{m+n} m! n! c_mn, m,n <= order.
template <class T>
SquareTable<T> centered_moments(const BasicPointDistribution<T>& d, std::size_t order) {
    SquareTable<T> K(order + 1);
    const std::size_t top = std::min(order, d.degree());
    for (std::size_t m = 0; m <= top; ++m)
        for (std::size_t n = 0; n <= top; ++n) {
            T v = detail::factorial<T>(m) * detail::factorial<T>(n) * d.c(m, n);
            K(m, n) = (m + n) % 2 == 0 ? v : T(0) - v;
        }
    return K;
}

/// Raw moments <u, z^j conj(z)^k>, obtained from the centered ones by expanding
/// z^j = sum_m C(j,m) a^{j-m} (z-a)^m and its conjugate.
template <class T>
BasicMomentTable<T> point_moments(const BasicPointDistribution<T>& d, std::size_t order) {
    const SquareTable<T> K = centered_moments(d, order);
    const T abar = detail::conj_of(d.a);

    // A(j,m) = C(j,m) a^{j-m}, B(k,n) = C(k,n) conj(a)^{k-n}
    std::vector<T> apow(order + 1, T(1)), bpow(order + 1, T(1));
    for (std::size_t i = 1; i <= order; ++i) {
        apow[i] = apow[i - 1] * d.a;
        bpow[i] = bpow[i - 1] * abar;
    }
    SquareTable<T> A(order + 1), B(order + 1);
    for (std::size_t j = 0; j <= order; ++j)
        for (std::size_t m = 0; m <= j; ++m) {
            A(j, m) = detail::binomial<T>(j, m) * apow[j - m];
            B(j, m) = detail::binomial<T>(j, m) * bpow[j - m];
        }

    SquareTable<T> AK(order + 1);
    for (std::size_t j = 0; j <= order; ++j)
        for (std::size_t n = 0; n <= order; ++n) {
            T s(0);
            for (std::size_t m = 0; m <= j; ++m) s += A(j, m) * K(m, n);
            AK(j, n) = s;
        }

    BasicMomentTable<T> table(order, Provenance{ProvenanceKind::Point, {}});
    for (std::size_t j = 0; j <= order; ++j)
        for (std::size_t k = 0; k <= order; ++k) {
            T s(0);
            for (std::size_t n = 0; n <= k; ++n) s += AK(j, n) * B(k, n);
            table(j, k) = s;
        }
    return table;
}

/// M[j][k] = integral of z^j conj(z)^k w dA.
MomentTable measure_moments(const Weight& w, const DiskGrid& grid, std::size_t order);

struct WeakMultReport {
    bool passes = true;
    std::size_t j = 0;
    std::size_t k = 0;
    double residual = 0.0;
};

/// residual_jk = |M[j][k] - M[j][0] M[0][k]|; passes iff the maximum is <= tol.
/// Among equal maxima the lexicographically smallest (j,k) is reported.
template <class T>
WeakMultReport weak_mult_check(const BasicMomentTable<T>& M, double tol) {
    WeakMultReport r;
    r.residual = -1.0;
    for (std::size_t j = 0; j <= M.order(); ++j)
        for (std::size_t k = 0; k <= M.order(); ++k) {
            const double res = magnitude(M(j, k) - M(j, 0) * M(0, k));
            if (std::isnan(res)) return {false, j, k, res};
            if (res > r.residual) {
                r.residual = res;
                r.j = j;
                r.k = k;
            }
        }
    r.passes = r.residual <= tol;
    return r;
}

/// <u (x) u, (z1 - z2)(z1^j z2^k + z1^k z2^j) conj(z1)^m conj(z2)^n>, expanded
/// through the tensor-product rule into products of table entries.
template <class T>
T tensor_entry(const BasicMomentTable<T>& M, std::size_t j, std::size_t k, std::size_t m, std::size_t n) {
    return M(j + 1, m) * M(k, n) + M(k + 1, m) * M(j, n) - M(j, m) * M(k + 1, n) - M(k, m) * M(j + 1, n);
}

struct TensorReport {
    bool passes = true;
    std::size_t j = 0, k = 0, m = 0, n = 0;
    double residual = 0.0;
};

/// Sweeps j,k < N and m,n <= N. Requires order N >= 1.
template <class T>
TensorReport tensor_diag_check(const BasicMomentTable<T>& M, double tol) {
    const std::size_t N = M.order();
    if (N < 1) throw DomainError("tensor_diag_check needs a moment table of order >= 1");
    TensorReport r;
    r.residual = -1.0;
    for (std::size_t j = 0; j < N; ++j)
        for (std::size_t k = 0; k < N; ++k)
            for (std::size_t m = 0; m <= N; ++m)
                for (std::size_t n = 0; n <= N; ++n) {
                    const double res = magnitude(tensor_entry(M, j, k, m, n));
                    if (std::isnan(res)) return {false, j, k, m, n, res};
                    if (res > r.residual) {
                        r.residual = res;
                        r.j = j;
                        r.k = k;
                        r.m = m;
                        r.n = n;
                    }
                }
    r.passes = r.residual <= tol;
    return r;
}

template <class T>
struct Factorization {
    std::vector<T> p;  ///< p_j = c_j0, so that u = p(d) q(dbar) delta_a
    std::vector<T> q;  ///< q_k = c_0k
};

struct FactorizationFailure {
    std::size_t m = 0;
    std::size_t n = 0;
    double residual = 0.0;
    std::string detail;
};

template <class T>
using FactorizeResult = std::variant<Factorization<T>, FactorizationFailure>;

/// Splits c = p q^T when c_mn = c_m0 c_0n for all (m,n) within 1e-12.
/// c_00 is snapped to 0 or 1 within 1e-9; any other value throws
/// NotWeaklyMultiplicativeError, and c_00 = 0 with c != 0 throws
/// InconsistentTableError. The zero distribution has no factorization either.
template <class T>
FactorizeResult<T> factorize(const BasicPointDistribution<T>& d) {
    const auto& c = d.c;
    const std::size_t n = c.size();
    const double to_one = magnitude(c(0, 0) - T(1));
    const double to_zero = magnitude(c(0, 0));
    if (to_zero <= 1e-9) {
        if (!d.is_zero())
            throw InconsistentTableError("c_00 = 0 forces u = 0, but the coefficient table is nonzero");
        throw InconsistentTableError("the zero distribution has no p(d) q(dbar) factorization");
    }
    if (to_one > 1e-9) throw NotWeaklyMultiplicativeError("c_00 must be 0 or 1 for a weakly multiplicative distribution");

    Factorization<T> f;
    for (std::size_t j = 0; j < n; ++j) {
        f.p.push_back(j == 0 ? T(1) : c(j, 0));
        f.q.push_back(j == 0 ? T(1) : c(0, j));
    }
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t k = 0; k < n; ++k) {
            const double res = magnitude(c(m, k) - f.p[m] * f.q[k]);
            if (res > 1e-12) {
                return FactorizationFailure{m, k, res,
                                            "c_" + std::to_string(m) + std::to_string(k) + " != c_" + std::to_string(m) +
                                                "0 * c_0" + std::to_string(k)};
            }
        }
    return f;
}

/// c_jk = p_j q_k on a square table of side max(|p|, |q|).
template <class T>
SquareTable<T> rank_one_coefficients(const std::vector<T>& p, const std::vector<T>& q) {
    const std::size_t n = std::max(p.size(), q.size());
    SquareTable<T> c(n);
    for (std::size_t j = 0; j < p.size(); ++j)
        for (std::size_t k = 0; k < q.size(); ++k) c(j, k) = p[j] * q[k];
    return c;
}

MomentTable to_complex_table(const ExactMomentTable& exact);

/// {"order": N, "re": [[...]], "im": [[...]], "provenance": "..."}
nlohmann::json to_json(const MomentTable& M);
MomentTable moment_table_from_json(const nlohmann::json& j);

}  // namespace dbrlab
