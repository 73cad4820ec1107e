#include "dbrlab/weights.hpp"

#include <cmath>
#include <limits>

#include "dbrlab/errors.hpp"
#include "dbrlab/weight_spec.hpp"

namespace dbrlab {

namespace {

std::string point_text(Complex z) { return format_number(z.real()) + "," + format_number(z.imag()); }

double poisson(Complex z, Complex zeta) { return (1.0 - std::norm(z)) / std::norm(z - zeta); }

double green(Complex z, Complex zeta) {
    return 0.5 * std::log(std::norm(1.0 - std::conj(zeta) * z) / std::norm(z - zeta));
}

void validate(const GreenDecomposition& d) {
    for (const auto& a : d.mu) {
        if (!(a.mass > 0.0) || !std::isfinite(a.mass)) throw DomainError("Green decomposition: masses must be positive");
        if (!(std::abs(a.point) < 1.0)) throw DomainError("Green decomposition: mu atoms must lie in the open disk");
    }
    for (const auto& a : d.nu) {
        if (!(a.mass > 0.0) || !std::isfinite(a.mass)) throw DomainError("Green decomposition: masses must be positive");
        if (std::abs(std::abs(a.point) - 1.0) > 1e-12) throw DomainError("Green decomposition: nu atoms must lie on the unit circle");
    }
}

}  // namespace

Weight Weight::harmonic_boundary(Complex zeta) {
    if (std::abs(std::abs(zeta) - 1.0) > 1e-12) throw DomainError("HarmonicBoundary needs |zeta| = 1");
    return Weight(HarmonicBoundary{zeta}, "harm:" + point_text(zeta));
}

Weight Weight::log_green(Complex zeta) {
    if (!(std::abs(zeta) < 1.0)) throw DomainError("LogGreen needs |zeta| < 1");
    return Weight(LogGreen{zeta}, "log:" + point_text(zeta));
}

Weight Weight::scaled(double c, const Weight& inner) {
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("scale factor must be positive and finite");
    if (const auto* s = std::get_if<Scaled>(&inner.kind_)) return scaled(c * s->factor, *s->inner);
    return Weight(Scaled{c, std::make_shared<const Weight>(inner)}, "scaled:" + format_number(c) + ":" + inner.label_);
}

Weight Weight::custom(std::function<double(Complex)> fn, std::vector<Complex> singularities, std::string label) {
    if (!fn) throw DomainError("custom weight needs a callable");
    return Weight(Custom{std::move(fn), std::move(singularities), std::nullopt}, std::move(label));
}

Weight Weight::uniform() {
    return custom([](Complex) { return 1.0; }, {}, "uniform");
}

Weight Weight::zero() {
    return custom([](Complex) { return 0.0; }, {}, "zero");
}

double Weight::operator()(Complex z) const { return eval(*this, z); }

std::vector<Complex> Weight::singularities() const {
    return std::visit(
        [](const auto& k) -> std::vector<Complex> {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, HarmonicBoundary> || std::is_same_v<K, LogGreen>) return {k.zeta};
            else if constexpr (std::is_same_v<K, Scaled>) return k.inner->singularities();
            else return k.singularities;
        },
        kind_);
}

std::vector<double> Weight::singular_radii() const {
    std::vector<double> radii;
    for (const auto& s : singularities())
        if (std::abs(s) < 1.0) radii.push_back(std::abs(s));
    return radii;
}

std::optional<GreenDecomposition> Weight::green_decomposition() const {
    return std::visit(
        [](const auto& k) -> std::optional<GreenDecomposition> {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, HarmonicBoundary>) {
                return GreenDecomposition{{}, {{k.zeta, 1.0}}};
            } else if constexpr (std::is_same_v<K, LogGreen>) {
                return GreenDecomposition{{{k.zeta, (1.0 - std::norm(k.zeta)) / 2.0}}, {}};
            } else if constexpr (std::is_same_v<K, Scaled>) {
                auto inner = k.inner->green_decomposition();
                if (!inner) return std::nullopt;
                return scale(*inner, k.factor);
            } else {
                return k.decomposition;
            }
        },
        kind_);
}

bool Weight::is_harmonic() const {
    const auto d = green_decomposition();
    return d && d->mu.empty();
}

double eval(const Weight& w, Complex z) {
    if (!(std::abs(z) < 1.0)) throw DomainError("weights are evaluated inside the open unit disk");
    const double value = std::visit(
        [z](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, HarmonicBoundary>) {
                return poisson(z, k.zeta);
            } else if constexpr (std::is_same_v<K, LogGreen>) {
                if (z == k.zeta) throw SingularPointError("LogGreen weight evaluated at its pole");
                return green(z, k.zeta);
            } else if constexpr (std::is_same_v<K, Scaled>) {
                return k.factor * eval(*k.inner, z);
            } else {
                for (const auto& s : k.singularities)
                    if (z == s) throw SingularPointError("custom weight evaluated at a singular point");
                return k.fn(z);
            }
        },
        w.kind());
    if (!std::isfinite(value)) throw SingularPointError("weight '" + w.label() + "' is not finite at this point");
    return value;
}

DiskGrid make_disk_grid_for(const Weight& w, int radial_order, int angular_order) {
    return make_disk_grid(radial_order, angular_order, w.singular_radii());
}

double l1_norm(const Weight& w, const DiskGrid& grid) {
    return integrate(grid, [&w](Complex z) { return eval(w, z); }).real();
}

Weight normalize(const Weight& w, const DiskGrid& grid) {
    const double norm = l1_norm(w, grid);
    if (!(norm > std::numeric_limits<double>::min())) throw DegenerateWeightError("cannot normalize weight '" + w.label() + "' with zero L1 norm");
    return Weight::scaled(1.0 / norm, w);
}

SuperharmonicReport superharmonic_test(const Weight& w, const std::vector<Complex>& centers,
                                       const std::vector<double>& radii, const CircleGrid& circle, double tol) {
    if (centers.empty() || radii.empty()) throw DomainError("superharmonic_test needs at least one center and radius");
    for (const auto& c : centers)
        for (double r : radii)
            if (!(r > 0.0) || !(std::abs(c) + r < 1.0)) throw DomainError("superharmonic_test: circle leaves the open disk");

    SuperharmonicReport report;
    report.worst_violation = -std::numeric_limits<double>::infinity();
    for (const auto& c : centers) {
        const double center_value = eval(w, c);
        for (double r : radii) {
            const double mean = integrate(circle, [&](Complex u) { return eval(w, c + r * u); }).real();
            const double violation = mean - center_value;
            ++report.circles_checked;
            if (violation > report.worst_violation) {
                report.worst_violation = violation;
                report.worst_center = c;
                report.worst_radius = r;
            }
        }
    }
    report.passes = report.worst_violation <= tol;
    return report;
}

GreenDecomposition scale(const GreenDecomposition& d, double c) {
    GreenDecomposition out = d;
    for (auto& a : out.mu) a.mass *= c;
    for (auto& a : out.nu) a.mass *= c;
    return out;
}

Weight synthesize(const GreenDecomposition& d) {
    validate(d);
    std::vector<Complex> singular;
    std::string label = "green(";
    for (const auto& a : d.mu) {
        singular.push_back(a.point);
        label += "mu@" + point_text(a.point) + "*" + format_number(a.mass) + ";";
    }
    for (const auto& a : d.nu) {
        singular.push_back(a.point);
        label += "nu@" + point_text(a.point) + "*" + format_number(a.mass) + ";";
    }
    if (label.back() == ';') label.pop_back();
    label += ")";

    auto fn = [d](Complex z) {
        double value = 0.0;
        for (const auto& a : d.mu) value += a.mass * 2.0 / (1.0 - std::norm(a.point)) * green(z, a.point);
        for (const auto& a : d.nu) value += a.mass * poisson(z, a.point);
        return value;
    };
    return Weight(Custom{fn, std::move(singular), d}, d.empty() ? "zero" : label);
}

}  // namespace dbrlab
