#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstddef>
#include <exception>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dbrlab/errors.hpp"
#include "dbrlab/exact_sum.hpp"
#include "dbrlab/series.hpp"

namespace dbrlab {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(std::size_t n);

/// Rings whose relative distance d to the unit circle (or to an interior
/// singular radius) is small get max(angular_order, ceil(kAngularResolution / d))
/// angles, which keeps the per-ring aliasing error below exp(-kAngularResolution).
inline constexpr double kAngularResolution = 24.0;

/// Quadrature for normalized area measure dA = r dr dtheta / pi on the disk.
///
/// Radius: composite Gauss-Legendre for the measure 2r dr on [0,1], with
/// panel breaks at the requested singular radii. Angle: uniform nodes offset
/// by half a step, the count per ring graded as described above. Nodes are
/// stored ring by ring (radial-major) and never touch r = 1 or a break.
class DiskGrid {
public:
    int radial_order() const noexcept { return radial_order_; }
    int angular_order() const noexcept { return angular_order_; }
    std::span<const Complex> nodes() const noexcept { return nodes_; }
    std::span<const double> weights() const noexcept { return weights_; }
    std::span<const double> radial_breaks() const noexcept { return breaks_; }
    std::span<const double> ring_radii() const noexcept { return ring_radii_; }
    std::size_t size() const noexcept { return nodes_.size(); }

    /// Short stable identifier, e.g. "disk(120x256)" or "disk(120x256;breaks=0.4)".
    std::string id() const;

private:
    friend DiskGrid make_disk_grid(int, int, std::vector<double>);

    int radial_order_ = 0;
    int angular_order_ = 0;
    std::vector<double> breaks_;
    std::vector<double> ring_radii_;
    std::vector<Complex> nodes_;
    std::vector<double> weights_;
};

/// radial_order >= 1, angular_order >= 4; breaks outside (0,1) are ignored.
DiskGrid make_disk_grid(int radial_order, int angular_order, std::vector<double> radial_breaks = {});

/// Uniform quadrature for d(theta)/2pi on the unit circle. Nodes e^{2 pi i k/M}
/// are built with exact antipodal symmetry, so odd trigonometric moments
/// integrate to exactly zero.
class CircleGrid {
public:
    std::span<const Complex> nodes() const noexcept { return nodes_; }
    std::span<const double> weights() const noexcept { return weights_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    std::string id() const { return "circle(" + std::to_string(nodes_.size()) + ")"; }

private:
    friend CircleGrid make_circle_grid(int);

    std::vector<Complex> nodes_;
    std::vector<double> weights_;
};

/// count >= 4 and even.
CircleGrid make_circle_grid(int count);

void set_worker_threads(unsigned n);
unsigned worker_threads();

namespace detail {

// Runs `eval(node, out)` over every node and accumulates weights[i] * out[c]
// exactly for c < count. The reduction is correctly rounded, so the result
// does not depend on how nodes are split between threads.
template <class Grid, class F>
std::vector<Complex> reduce_nodes(const Grid& grid, std::size_t count, F& eval) {
    const auto nodes = grid.nodes();
    const auto weights = grid.weights();
    const std::size_t n = nodes.size();

    struct Chunk {
        std::vector<ExactComplexSum> sums;
        std::size_t bad_index = std::numeric_limits<std::size_t>::max();
        std::string bad_message;
    };

    auto run = [&](std::size_t begin, std::size_t end, Chunk& chunk) {
        chunk.sums.assign(count, ExactComplexSum{});
        std::vector<Complex> out(count);
        for (std::size_t i = begin; i < end; ++i) {
            try {
                eval(nodes[i], std::span<Complex>(out));
            } catch (const Error& e) {
                chunk.bad_index = i;
                chunk.bad_message = e.what();
                return;
            }
            for (std::size_t c = 0; c < count; ++c) {
                if (!std::isfinite(out[c].real()) || !std::isfinite(out[c].imag())) {
                    chunk.bad_index = i;
                    chunk.bad_message = "non-finite value";
                    return;
                }
                chunk.sums[c].add(weights[i] * out[c]);
            }
        }
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(worker_threads(), static_cast<unsigned>(n / 2048 + 1)));
    std::vector<Chunk> chunks(threads);
    if (threads == 1) {
        run(0, n, chunks[0]);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t begin = n * t / threads;
            const std::size_t end = n * (t + 1) / threads;
            pool.emplace_back([&, begin, end, t] { run(begin, end, chunks[t]); });
        }
    }

    // Earliest failing node wins, independent of the split.
    const Chunk* failed = nullptr;
    for (const auto& c : chunks)
        if (c.bad_index != std::numeric_limits<std::size_t>::max() && (!failed || c.bad_index < failed->bad_index))
            failed = &c;
    if (failed) {
        std::ostringstream msg;
        msg.precision(17);
        const Complex z = nodes[failed->bad_index];
        msg << "singular integrand at node #" << failed->bad_index << " (" << z.real() << ", " << z.imag()
            << "): " << failed->bad_message;
        throw SingularIntegrandError(msg.str());
    }

    std::vector<Complex> result(count);
    for (std::size_t c = 0; c < count; ++c) {
        ExactComplexSum total;
        for (const auto& chunk : chunks) total.merge(chunk.sums[c]);
        result[c] = total.value();
    }
    return result;
}

}  // namespace detail

/// sum_i weights[i] * f(nodes[i]). Non-finite values (or library errors raised
/// by f) become a SingularIntegrandError naming the node.
template <class Grid, class F>
Complex integrate(const Grid& grid, F&& f) {
    auto eval = [&f](Complex z, std::span<Complex> out) { out[0] = Complex(f(z)); };
    return detail::reduce_nodes(grid, 1, eval)[0];
}

/// Several integrals in one pass: f(z, out) writes `count` integrand values.
template <class Grid, class F>
std::vector<Complex> integrate_many(const Grid& grid, std::size_t count, F&& f) {
    return detail::reduce_nodes(grid, count, f);
}

struct RichardsonEstimate {
    Complex value;
    double error_estimate;
};

/// Fine value and |fine - coarse|. The fine grid must have at least twice
/// both orders of the coarse one.
template <class F>
RichardsonEstimate richardson_check(const DiskGrid& coarse, const DiskGrid& fine, F&& f) {
    if (fine.radial_order() < 2 * coarse.radial_order() || fine.angular_order() < 2 * coarse.angular_order())
        throw DomainError("richardson_check: fine grid must double both orders of the coarse grid");
    const Complex lo = integrate(coarse, f);
    const Complex hi = integrate(fine, f);
    return {hi, std::abs(hi - lo)};
}

}  // namespace dbrlab
