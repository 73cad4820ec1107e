#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dbrlab/moments.hpp"
#include "dbrlab/series.hpp"

// Seeded generators for suites and property tests. Only the raw
// mt19937_64 stream is used (its output is fixed by the standard), so draws
// are the same on every platform.

namespace dbrlab::samplers {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Integer in [lo, hi].
    long long integer(long long lo, long long hi) {
        return lo + static_cast<long long>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::mt19937_64 engine_;
};

/// p/q with |p| <= max_num and 1 <= q <= max_den.
inline Rational rational(Rng& rng, long long max_num, long long max_den) {
    return Rational(rng.integer(-max_num, max_num), rng.integer(1, max_den));
}

/// Gaussian rational with |re|, |im| <= 7/5, so |a| <= 2.
inline GaussianRational support_point(Rng& rng) {
    auto part = [&] {
        const long long den = rng.integer(1, 8);
        const long long num = rng.integer(-(7 * den) / 5, (7 * den) / 5);
        return Rational(num, den);
    };
    Rational re = part();
    return {re, part()};
}

inline GaussianRational coefficient(Rng& rng) { return {rational(rng, 5, 6), rational(rng, 5, 6)}; }

/// c_jk = p_j q_k with p_0 = q_0 = 1 and the given degree.
inline ExactPointDistribution rank_one_distribution(Rng& rng, std::size_t degree) {
    std::vector<GaussianRational> p{GaussianRational(1)}, q{GaussianRational(1)};
    for (std::size_t i = 1; i <= degree; ++i) {
        p.push_back(coefficient(rng));
        q.push_back(coefficient(rng));
    }
    return {support_point(rng), rank_one_coefficients(p, q)};
}

/// Rank-one table with one entry c_mn (m, n >= 1) moved off the product, so
/// c_00 = 1 but c_mn != c_m0 c_0n. Requires degree >= 1.
inline ExactPointDistribution non_rank_one_distribution(Rng& rng, std::size_t degree) {
    ExactPointDistribution d = rank_one_distribution(rng, degree);
    const auto m = static_cast<std::size_t>(rng.integer(1, static_cast<long long>(degree)));
    const auto n = static_cast<std::size_t>(rng.integer(1, static_cast<long long>(degree)));
    GaussianRational bump = coefficient(rng);
    if (bump.is_zero()) bump = GaussianRational(1);
    d.c(m, n) += bump;
    return d;
}

/// Polynomial with complex coefficients in the unit box, stored at `order`.
inline TaylorSeries polynomial(Rng& rng, std::size_t degree, std::size_t order) {
    std::vector<Complex> c(std::max(order, degree) + 1);
    for (std::size_t k = 0; k <= degree; ++k) c[k] = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    return TaylorSeries(std::move(c));
}

inline Complex disk_point(Rng& rng, double rmin, double rmax) {
    return std::polar(rng.uniform(rmin, rmax), rng.uniform(0.0, 2.0 * 3.141592653589793));
}

/// `count` points with rmin <= |w| <= rmax, pairwise at least `separation` apart.
inline std::vector<Complex> separated_points(Rng& rng, std::size_t count, double rmin, double rmax, double separation) {
    std::vector<Complex> pts;
    while (pts.size() < count) {
        const Complex w = disk_point(rng, rmin, rmax);
        bool ok = true;
        for (const auto& p : pts) ok = ok && std::abs(p - w) >= separation;
        if (ok) pts.push_back(w);
    }
    return pts;
}

inline std::vector<Complex> coefficients(Rng& rng, std::size_t count) {
    std::vector<Complex> c(count);
    for (auto& x : c) x = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    return c;
}

}  // namespace dbrlab::samplers
