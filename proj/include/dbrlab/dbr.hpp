#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "dbrlab/moments.hpp"
#include "dbrlab/quadrature.hpp"
#include "dbrlab/series.hpp"
#include "dbrlab/weights.hpp"

namespace dbrlab {

// The de Branges-Rovnyak side. Throughout, u denotes the distribution
// -(1/4pi)(1-|z|^2) Laplacian(w) of a normalized weight w. Its moments satisfy
// <u, z^j conj(z)^k> = conj(h_j) h_k when D_w = H(b), where
// integral (1-|w|^2)/|1 - z conj(w)|^4 w(z) dA(z) = |h(w)|^2 and phi(w) = w h(w).

struct DbrGrids {
    DiskGrid disk;
    CircleGrid circle;
};

/// Disk grid broken at the weight's singular radii plus a circle grid for the
/// outer-function step.
DbrGrids default_grids(const Weight& w, int radial_order = 120, int angular_order = 256, int circle_nodes = 4096);

/// |phi(w)|^2 = (1-|w|^2) * integral |w|^2 / |1 - z conj(w)|^4 weight(z) dA(z).
double phi_modulus_sq(Complex w, const Weight& weight, const DiskGrid& grid);

/// integral (1-|w|^2)/|1 - z conj(w)|^4 weight(z) dA(z) at every point, in one pass.
std::vector<double> h_identity_lhs(std::span<const Complex> points, const Weight& weight, const DiskGrid& grid);

/// Moments of u for a finite Green decomposition: u = mu + nu, so
/// M[j][k] = sum over atoms of mass * zeta^j conj(zeta)^k.
MomentTable u_moments_from_decomposition(const GreenDecomposition& d, std::size_t order);

/// Moments of u from the measure moments m_jk of w dA, without differentiating w:
/// M[j][k] = (j+1)(k+1) m_jk - j k m_{j-1,k-1}.
MomentTable u_moments_from_weight(const Weight& w, const DiskGrid& grid, std::size_t order);

/// The same formula applied to an existing table of measure moments.
MomentTable u_moments_from_measure(const MomentTable& m);

/// Decomposition route when the weight has one, quadrature route otherwise.
MomentTable u_moments(const Weight& w, const DiskGrid& grid, std::size_t order);

struct RankOneFit {
    /// h with conj(h_j) h_k closest to M in the Frobenius sense, h_0 >= 0.
    TaylorSeries h;
    /// sigma_2 / sigma_1 of the table (0 for an exactly rank-one table).
    double sigma_ratio = 0.0;
    /// max |M[j][k] - conj(h_j) h_k|.
    double residual = 0.0;
};

RankOneFit rank_one_fit(const MomentTable& M);

/// h_k = M[0][k]. Requires M[0][0] = 1 within 1e-6; throws NotDbrWeightError
/// unless sigma_2 <= 1e-6 sigma_1 and M[j][k] = conj(h_j) h_k.
TaylorSeries h_from_moments(const MomentTable& M);

struct HIdentityReport {
    bool passes = true;
    double worst_residual = 0.0;
    Complex worst_point{};
    std::vector<double> lhs;
    std::vector<double> rhs;
};

/// max over points of |integral (1-|w|^2)/|1-z conj(w)|^4 weight dA - |h(w)|^2| <= tol.
HIdentityReport verify_h_identity(const Weight& weight, const TaylorSeries& h, std::span<const Complex> points,
                                  const DiskGrid& grid, double tol);

/// Relative error of the 5-point finite-difference Laplacian of
/// z -> (1-|z|^2)/|1 - z conj(w0)|^2 at z0 against -4(1-|w0|^2)/|1 - z0 conj(w0)|^4.
double laplacian_identity_check(Complex z0, Complex w0, double step);

/// Outer function with boundary log-modulus `target` sampled on `circle`:
/// a = exp(c_0 + 2 sum_{k>=1} c_k z^k) with c_k the discrete Fourier
/// coefficients of the samples, so a(0) = exp(mean of target) > 0.
TaylorSeries outer_function(std::span<const double> target, const CircleGrid& circle, std::size_t order);

struct DbrDiagnostics {
    double raw_l1_norm = 0.0;
    double rank_one_sigma_ratio = 0.0;
    double rank_one_residual = 0.0;
    double h0_deviation = 0.0;
    double max_b_modulus = 0.0;
    /// max |log|outer(e^{it})| - target(t)| on circle midpoints not used in the fit.
    double outer_modulus_error = 0.0;
};

/// The bundle (w, phi, h, a, b) realizing D_w = H(b), gauge fixed by h_0 = 1 and a(0) > 0.
struct DbrModel {
    std::string source;  ///< weight spec or label before normalization
    Weight weight;       ///< normalized, L1 norm 1
    std::size_t order = 0;
    std::vector<std::pair<Complex, Complex>> phi_samples;
    TaylorSeries h;
    TaylorSeries a;
    TaylorSeries b;
    std::vector<double> boundary_modulus;  ///< |a| at the circle-grid nodes
    DbrDiagnostics diagnostics;

    /// Same model with a different symbol b (for falsification runs).
    DbrModel with_symbol(TaylorSeries other) const;
};

/// phi/h from the moment route, a as the outer function with
/// |a|^2 = 1/(1 + |phi|^2) on the circle, b = phi a. Throws NotDbrWeightError
/// when the moment table of u is not rank one and ModelInvariantError when
/// the constructed model breaks h_0 = 1, |b| <= 1 on |w| <= 0.9 or a(0) > 0.
DbrModel build_model(const Weight& weight, const DbrGrids& grids, std::size_t order = 64, std::size_t moment_order = 8);

/// (1 - b(z) conj(b(w))) / (1 - z conj(w)), |z|, |w| < 1.
Complex kernel(const DbrModel& model, Complex z, Complex w);

/// Taylor series in z of the kernel function k_w(z) = kernel(z, w).
TaylorSeries kernel_series(const DbrModel& model, Complex w);

struct IsometryReport {
    double hb_norm_sq = 0.0;  ///< c* G c
    double h2_norm_sq = 0.0;
    double energy = 0.0;
    double relative_gap = 0.0;
    double min_gram_eigenvalue = 0.0;
    bool passes = true;
};

/// Compares ||f||^2_{H(b)} = c* G c, G[i][j] = kernel(w_i, w_j), with
/// ||f||^2_{H^2} + D_w(f) for f = sum_i c_i k_{w_i}. Throws
/// DegenerateNodeSetError for repeated nodes or a Gram matrix whose smallest
/// eigenvalue is <= 1e-10.
IsometryReport verify_isometry(const DbrModel& model, const std::vector<Complex>& nodes,
                               const std::vector<Complex>& coefficients, const DiskGrid& grid, double tol = 1e-2);

nlohmann::json to_json(const DbrModel& model);

}  // namespace dbrlab
