#include "dbrlab/quadrature.hpp"

#include <numbers>

namespace dbrlab {

namespace {

std::atomic<unsigned> g_threads{1};

constexpr std::size_t kMaxNodes = 50'000'000;

}  // namespace

void set_worker_threads(unsigned n) { g_threads = std::max(1u, n); }
unsigned worker_threads() { return g_threads; }

GaussLegendreRule gauss_legendre(std::size_t n) {
    if (n == 0) throw DomainError("Gauss-Legendre rule needs at least one node");
    GaussLegendreRule rule{std::vector<double>(n), std::vector<double>(n)};
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = pk;
            }
            // P_n = p1, P_{n-1} = p0
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute the derivative at the converged node.
        double p0 = 1.0, p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
            p0 = p1;
            p1 = pk;
        }
        dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

std::string DiskGrid::id() const {
    std::ostringstream s;
    s << "disk(" << radial_order_ << "x" << angular_order_;
    if (!breaks_.empty()) {
        s << ";breaks=";
        for (std::size_t i = 0; i < breaks_.size(); ++i) s << (i ? "," : "") << breaks_[i];
    }
    s << ")";
    return s.str();
}

DiskGrid make_disk_grid(int radial_order, int angular_order, std::vector<double> radial_breaks) {
    if (radial_order < 1) throw DomainError("make_disk_grid: radial_order must be >= 1");
    if (angular_order < 4) throw DomainError("make_disk_grid: angular_order must be >= 4");

    std::erase_if(radial_breaks, [](double b) { return !(b > 1e-12 && b < 1.0 - 1e-12); });
    std::sort(radial_breaks.begin(), radial_breaks.end());
    radial_breaks.erase(std::unique(radial_breaks.begin(), radial_breaks.end()), radial_breaks.end());

    DiskGrid g;
    g.radial_order_ = radial_order;
    g.angular_order_ = angular_order;
    g.breaks_ = radial_breaks;

    std::vector<double> edges{0.0};
    edges.insert(edges.end(), radial_breaks.begin(), radial_breaks.end());
    edges.push_back(1.0);

    struct Ring {
        double r;
        double weight;
        std::size_t angles;
    };
    std::vector<Ring> rings;
    std::size_t total = 0;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double lo = edges[p], hi = edges[p + 1];
        const std::size_t count =
            edges.size() == 2 ? static_cast<std::size_t>(radial_order)
                              : std::max<std::size_t>(4, static_cast<std::size_t>(std::lround(radial_order * (hi - lo))));
        const auto rule = gauss_legendre(count);
        for (std::size_t i = 0; i < count; ++i) {
            const double r = lo + (hi - lo) * (rule.nodes[i] + 1.0) / 2.0;
            const double w = rule.weights[i] * (hi - lo) / 2.0 * 2.0 * r;
            double d = 1.0 - r;
            for (double b : radial_breaks) d = std::min(d, std::abs(r - b) / std::max(b, r));
            const double wanted = std::ceil(kAngularResolution / d);
            const std::size_t m = std::max<std::size_t>(static_cast<std::size_t>(angular_order),
                                                        wanted > 1e12 ? kMaxNodes + 1 : static_cast<std::size_t>(wanted));
            total += m;
            if (total > kMaxNodes) throw DomainError("make_disk_grid: grid would exceed the node budget");
            rings.push_back({r, w, m});
        }
    }

    g.nodes_.reserve(total);
    g.weights_.reserve(total);
    for (const auto& ring : rings) {
        g.ring_radii_.push_back(ring.r);
        const double step = 2.0 * std::numbers::pi / static_cast<double>(ring.angles);
        const double w = ring.weight / static_cast<double>(ring.angles);
        for (std::size_t k = 0; k < ring.angles; ++k) {
            const double theta = (static_cast<double>(k) + 0.5) * step;
            g.nodes_.push_back(std::polar(ring.r, theta));
            g.weights_.push_back(w);
        }
    }
    return g;
}

CircleGrid make_circle_grid(int count) {
    if (count < 4 || count % 2 != 0) throw DomainError("make_circle_grid: count must be even and >= 4");
    CircleGrid g;
    const auto m = static_cast<std::size_t>(count);
    g.nodes_.resize(m);
    g.weights_.assign(m, 1.0 / static_cast<double>(count));
    const std::size_t half = m / 2;
    for (std::size_t k = 0; k < half; ++k) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
        g.nodes_[k] = {std::cos(theta), std::sin(theta)};
        g.nodes_[k + half] = -g.nodes_[k];
    }
    return g;
}

}  // namespace dbrlab
