#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dbrlab/quadrature.hpp"
#include "dbrlab/series.hpp"

namespace dbrlab {

/// One atom of a Green-potential decomposition.
struct GreenAtom {
    Complex point;
    double mass;
};

/// Finite-atom version of omega = Green potential of mu + Poisson integral of nu,
/// with mu carried by the open disk and nu by the unit circle. The Green
/// kernel carries the factor 2/(1-|zeta|^2), so that
/// -(1/4pi)(1-|z|^2) Laplacian(omega) = mu + nu.
struct GreenDecomposition {
    std::vector<GreenAtom> mu;
    std::vector<GreenAtom> nu;

    bool empty() const noexcept { return mu.empty() && nu.empty(); }
};

class Weight;

/// (1-|z|^2)/|z-zeta|^2, zeta on the unit circle.
struct HarmonicBoundary {
    Complex zeta;
};

/// log|(1 - conj(zeta) z)/(z - zeta)|, zeta in the open disk.
struct LogGreen {
    Complex zeta;
};

struct Scaled {
    double factor;
    std::shared_ptr<const Weight> inner;
};

struct Custom {
    std::function<double(Complex)> fn;
    std::vector<Complex> singularities;
    /// Present when the weight came from synthesize().
    std::optional<GreenDecomposition> decomposition;
};

/// A nonnegative integrable function on the unit disk. Immutable value type;
/// copies share the underlying callable.
class Weight {
public:
    using Kind = std::variant<HarmonicBoundary, LogGreen, Scaled, Custom>;

    /// |zeta| must be 1 within 1e-12.
    static Weight harmonic_boundary(Complex zeta);
    /// |zeta| < 1.
    static Weight log_green(Complex zeta);
    /// c > 0. Nested scalings are folded into one factor.
    static Weight scaled(double c, const Weight& inner);
    static Weight custom(std::function<double(Complex)> fn, std::vector<Complex> singularities = {},
                         std::string label = "custom");
    /// w == 1
    static Weight uniform();
    /// w == 0
    static Weight zero();

    const Kind& kind() const noexcept { return kind_; }
    const std::string& label() const noexcept { return label_; }

    /// Pointwise value; see dbrlab::eval.
    double operator()(Complex z) const;

    std::vector<Complex> singularities() const;

    /// Moduli of the singular points inside the disk, for grid panel breaks.
    std::vector<double> singular_radii() const;

    /// The atomic decomposition for catalog weights (and synthesized ones).
    std::optional<GreenDecomposition> green_decomposition() const;

    /// True when the decomposition exists and has no interior (mu) atoms.
    bool is_harmonic() const;

private:
    friend Weight synthesize(const GreenDecomposition& d);

    Weight(Kind kind, std::string label) : kind_(std::move(kind)), label_(std::move(label)) {}

    Kind kind_;
    std::string label_;
};

/// Value at z, |z| < 1. Throws SingularPointError at a singular point and
/// DomainError outside the open disk.
double eval(const Weight& w, Complex z);

/// A disk grid whose radial panels break at the weight's interior singular radii.
DiskGrid make_disk_grid_for(const Weight& w, int radial_order, int angular_order);

/// integral of w dA
double l1_norm(const Weight& w, const DiskGrid& grid);

/// Scaled(1/l1_norm(w), w). DegenerateWeightError when the norm is not positive.
Weight normalize(const Weight& w, const DiskGrid& grid);

struct SuperharmonicReport {
    bool passes = true;
    /// max over the lattice of (circle mean - center value); <= tol when passing.
    double worst_violation = 0.0;
    Complex worst_center{};
    double worst_radius = 0.0;
    std::size_t circles_checked = 0;
};

/// Sub-mean-value test w(c) >= mean of w on |z - c| = r - tol over every
/// (center, radius) pair. Every circle must lie inside the disk.
SuperharmonicReport superharmonic_test(const Weight& w, const std::vector<Complex>& centers,
                                       const std::vector<double>& radii, const CircleGrid& circle,
                                       double tol = 1e-8);

/// The Custom weight
///   sum_mu m * 2/(1-|zeta|^2) * log|(1 - conj(zeta) z)/(zeta - z)| + sum_nu m * (1-|z|^2)/|zeta - z|^2.
/// An empty decomposition yields the zero weight.
Weight synthesize(const GreenDecomposition& d);

/// Scale every atom mass by c.
GreenDecomposition scale(const GreenDecomposition& d, double c);

}  // namespace dbrlab
