#include "dbrlab/dbr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "dbrlab/dirichlet.hpp"
#include "dbrlab/errors.hpp"
#include "dbrlab/exact_sum.hpp"
#include "dbrlab/weight_spec.hpp"

namespace dbrlab {

namespace {

// Sample set for phi and for the |b| <= 1 invariant.
std::vector<Complex> interior_samples() {
    std::vector<Complex> pts;
    for (double r : {0.3, 0.6, 0.9})
        for (int k = 0; k < 16; ++k) pts.push_back(std::polar(r, 2.0 * std::numbers::pi * k / 16.0));
    return pts;
}

// Row M[0][k], k <= order, of the moment table of u.
std::vector<Complex> u_first_row(const Weight& w, const DiskGrid& grid, std::size_t order) {
    std::vector<Complex> row(order + 1);
    if (const auto d = w.green_decomposition()) {
        for (const auto* atoms : {&d->mu, &d->nu})
            for (const auto& atom : *atoms) {
                Complex p = atom.mass;
                for (auto& x : row) {
                    x += p;
                    p *= std::conj(atom.point);
                }
            }
        return row;
    }
    const auto m = integrate_many(grid, order + 1, [&](Complex z, std::span<Complex> out) {
        Complex term = eval(w, z);
        const Complex zbar = std::conj(z);
        for (auto& o : out) {
            o = term;
            term *= zbar;
        }
    });
    for (std::size_t k = 0; k <= order; ++k) row[k] = static_cast<double>(k + 1) * m[k];
    return row;
}

nlohmann::json coeffs_json(const TaylorSeries& s) {
    nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
    for (const auto& c : s.coeffs()) {
        re.push_back(c.real());
        im.push_back(c.imag());
    }
    return {{"re", std::move(re)}, {"im", std::move(im)}};
}

}  // namespace

DbrGrids default_grids(const Weight& w, int radial_order, int angular_order, int circle_nodes) {
    return {make_disk_grid_for(w, radial_order, angular_order), make_circle_grid(circle_nodes)};
}

double phi_modulus_sq(Complex w, const Weight& weight, const DiskGrid& grid) {
    if (!(std::abs(w) < 1.0)) throw DomainError("phi_modulus_sq: point must lie in the open disk");
    const double w2 = std::norm(w);
    const Complex wbar = std::conj(w);
    const double integral = integrate(grid, [&](Complex z) {
                                const double d = std::norm(1.0 - z * wbar);
                                return w2 / (d * d) * eval(weight, z);
                            }).real();
    return (1.0 - w2) * integral;
}

std::vector<double> h_identity_lhs(std::span<const Complex> points, const Weight& weight, const DiskGrid& grid) {
    for (const auto& w : points)
        if (!(std::abs(w) < 1.0)) throw DomainError("h identity: test points must lie in the open disk");
    const auto values = integrate_many(grid, points.size(), [&](Complex z, std::span<Complex> out) {
        const double wz = eval(weight, z);
        for (std::size_t i = 0; i < points.size(); ++i) {
            const double d = std::norm(1.0 - z * std::conj(points[i]));
            out[i] = (1.0 - std::norm(points[i])) / (d * d) * wz;
        }
    });
    std::vector<double> lhs(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) lhs[i] = values[i].real();
    return lhs;
}

MomentTable u_moments_from_decomposition(const GreenDecomposition& d, std::size_t order) {
    MomentTable M(order, Provenance{ProvenanceKind::Synthetic, {}});
    for (const auto* atoms : {&d.mu, &d.nu})
        for (const auto& atom : *atoms) {
            std::vector<Complex> zp(order + 1), zbp(order + 1);
            zp[0] = zbp[0] = 1.0;
            for (std::size_t i = 1; i <= order; ++i) {
                zp[i] = zp[i - 1] * atom.point;
                zbp[i] = zbp[i - 1] * std::conj(atom.point);
            }
            for (std::size_t j = 0; j <= order; ++j)
                for (std::size_t k = 0; k <= order; ++k) M(j, k) += atom.mass * zp[j] * zbp[k];
        }
    return M;
}

MomentTable u_moments_from_measure(const MomentTable& m) {
    const std::size_t order = m.order();
    MomentTable M(order, m.provenance);
    for (std::size_t j = 0; j <= order; ++j)
        for (std::size_t k = 0; k <= order; ++k) {
            M(j, k) = static_cast<double>((j + 1) * (k + 1)) * m(j, k);
            if (j > 0 && k > 0) M(j, k) -= static_cast<double>(j * k) * m(j - 1, k - 1);
        }
    return M;
}

MomentTable u_moments_from_weight(const Weight& w, const DiskGrid& grid, std::size_t order) {
    return u_moments_from_measure(measure_moments(w, grid, order));
}

MomentTable u_moments(const Weight& w, const DiskGrid& grid, std::size_t order) {
    if (const auto d = w.green_decomposition()) return u_moments_from_decomposition(*d, order);
    return u_moments_from_weight(w, grid, order);
}

RankOneFit rank_one_fit(const MomentTable& M) {
    const auto n = static_cast<Eigen::Index>(M.order() + 1);
    Eigen::MatrixXcd A(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k) A(j, k) = M(static_cast<std::size_t>(j), static_cast<std::size_t>(k));

    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    RankOneFit fit;
    fit.sigma_ratio = (n > 1 && sigma(0) > 0.0) ? sigma(1) / sigma(0) : 0.0;

    // M ~ s v v*, so conj(h_j) h_k = M[j][k] with h = sqrt(s) conj(v).
    const Eigen::VectorXcd v = svd.matrixV().col(0);
    std::vector<Complex> h(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) h[static_cast<std::size_t>(k)] = std::sqrt(sigma(0)) * std::conj(v(k));
    if (std::abs(h[0]) > 0.0) {
        const Complex phase = std::abs(h[0]) / h[0];
        for (auto& x : h) x *= phase;
    }
    fit.h = TaylorSeries(h);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k) {
            const auto uj = static_cast<std::size_t>(j), uk = static_cast<std::size_t>(k);
            fit.residual = std::max(fit.residual, std::abs(M(uj, uk) - std::conj(h[uj]) * h[uk]));
        }
    return fit;
}

TaylorSeries h_from_moments(const MomentTable& M) {
    if (std::abs(M(0, 0) - 1.0) > 1e-6)
        throw DomainError("h_from_moments: M[0][0] must equal 1 (normalized weight)");
    const RankOneFit fit = rank_one_fit(M);
    if (fit.sigma_ratio > 1e-6)
        throw NotDbrWeightError("moment table of u is not rank one (sigma2/sigma1 = " + format_number(fit.sigma_ratio) + ")");

    std::vector<Complex> h(M.order() + 1);
    for (std::size_t k = 0; k <= M.order(); ++k) h[k] = M(0, k);
    double scale = 1.0, residual = 0.0;
    for (std::size_t j = 0; j <= M.order(); ++j)
        for (std::size_t k = 0; k <= M.order(); ++k) {
            scale = std::max(scale, std::abs(M(j, k)));
            residual = std::max(residual, std::abs(M(j, k) - std::conj(h[j]) * h[k]));
        }
    if (residual > 1e-6 * scale)
        throw NotDbrWeightError("moment table of u does not factor as conj(h_j) h_k (residual " + format_number(residual) + ")");
    return TaylorSeries(std::move(h));
}

HIdentityReport verify_h_identity(const Weight& weight, const TaylorSeries& h, std::span<const Complex> points,
                                  const DiskGrid& grid, double tol) {
    HIdentityReport report;
    report.lhs = h_identity_lhs(points, weight, grid);
    report.worst_residual = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        report.rhs.push_back(std::norm(h.evaluate(points[i])));
        const double res = std::abs(report.lhs[i] - report.rhs[i]);
        if (res > report.worst_residual || std::isnan(res)) {
            report.worst_residual = res;
            report.worst_point = points[i];
        }
    }
    report.passes = report.worst_residual <= tol;
    return report;
}

double laplacian_identity_check(Complex z0, Complex w0, double step) {
    if (!(step > 0.0)) throw DomainError("laplacian_identity_check: step must be positive");
    if (!(std::abs(w0) < 1.0)) throw DomainError("laplacian_identity_check: w0 must lie in the open disk");
    const Complex i(0.0, 1.0);
    const std::array<Complex, 4> stencil{z0 + step, z0 - step, z0 + i * step, z0 - i * step};
    for (const auto& p : stencil)
        if (!(std::abs(p) < 1.0)) throw DomainError("laplacian_identity_check: stencil leaves the open disk");

    const Complex wbar = std::conj(w0);
    auto g = [&](Complex z) { return (1.0 - std::norm(z)) / std::norm(1.0 - z * wbar); };
    const double fd = (g(stencil[0]) + g(stencil[1]) + g(stencil[2]) + g(stencil[3]) - 4.0 * g(z0)) / (step * step);
    const double d = std::norm(1.0 - z0 * wbar);
    const double exact = -4.0 * (1.0 - std::norm(w0)) / (d * d);
    return std::abs(fd - exact) / std::abs(exact);
}

TaylorSeries outer_function(std::span<const double> target, const CircleGrid& circle, std::size_t order) {
    const std::size_t m = circle.size();
    if (target.size() != m) throw DomainError("outer_function: one target sample per circle node is required");
    for (std::size_t j = 0; j < m; ++j)
        if (!std::isfinite(target[j]))
            throw SingularBoundaryDataError("outer_function: non-finite boundary log-modulus at circle node #" + std::to_string(j));

    const auto nodes = circle.nodes();
    const auto weights = circle.weights();
    std::vector<Complex> log_a(order + 1);
    for (std::size_t k = 0; k <= order; ++k) {
        // c_k = sum_j w_j target_j conj(node_j)^k, with node_j^k = node_{jk mod m}.
        ExactComplexSum c;
        for (std::size_t j = 0; j < m; ++j) c.add(weights[j] * target[j] * std::conj(nodes[(j * k) % m]));
        log_a[k] = k == 0 ? Complex(c.value().real()) : 2.0 * c.value();
    }
    return TaylorSeries(std::move(log_a)).exp();
}

DbrModel DbrModel::with_symbol(TaylorSeries other) const {
    DbrModel copy = *this;
    copy.b = std::move(other);
    return copy;
}

DbrModel build_model(const Weight& weight, const DbrGrids& grids, std::size_t order, std::size_t moment_order) {
    DbrModel model{weight.label(), weight, order, {}, {}, {}, {}, {}, {}};
    model.diagnostics.raw_l1_norm = l1_norm(weight, grids.disk);
    model.weight = normalize(weight, grids.disk);

    // Rank-one test on the moment table of u, then h from its first row.
    const MomentTable M = u_moments(model.weight, grids.disk, moment_order);
    const RankOneFit fit = rank_one_fit(M);
    model.diagnostics.rank_one_sigma_ratio = fit.sigma_ratio;
    model.diagnostics.rank_one_residual = fit.residual;
    h_from_moments(M);

    model.h = TaylorSeries(u_first_row(model.weight, grids.disk, order));
    model.diagnostics.h0_deviation = std::abs(model.h[0] - 1.0);
    if (model.diagnostics.h0_deviation > 1e-6)
        throw ModelInvariantError("h_0 deviates from 1 by " + format_number(model.diagnostics.h0_deviation));

    // On the circle |a|^2 = 1/(1 + |h|^2). h is outer (u is a point mass), so
    // a = (1/h) * O with O outer and |O|^2 = 1/(1 + |1/h|^2); 1/h stays bounded
    // where h has a boundary pole.
    const TaylorSeries inv_h = model.h.reciprocal();
    const auto nodes = grids.circle.nodes();
    std::vector<double> target(nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j) target[j] = -0.5 * std::log1p(std::norm(inv_h.evaluate(nodes[j])));
    const TaylorSeries outer = outer_function(target, grids.circle, order);

    model.a = inv_h * outer;
    model.b = model.h.shift() * model.a;

    for (const auto& u : nodes) model.boundary_modulus.push_back(std::abs(model.a.evaluate(u)));

    const std::size_t m = nodes.size();
    for (std::size_t j = 0; j < m; ++j) {
        const Complex mid = std::polar(1.0, 2.0 * std::numbers::pi * (static_cast<double>(j) + 0.5) / static_cast<double>(m));
        const double expected = -0.5 * std::log1p(std::norm(inv_h.evaluate(mid)));
        model.diagnostics.outer_modulus_error =
            std::max(model.diagnostics.outer_modulus_error, std::abs(std::log(std::abs(outer.evaluate(mid))) - expected));
    }

    for (const auto& w : interior_samples()) {
        model.phi_samples.emplace_back(w, w * model.h.evaluate(w));
        model.diagnostics.max_b_modulus = std::max(model.diagnostics.max_b_modulus, std::abs(model.b.evaluate(w)));
    }
    if (model.diagnostics.max_b_modulus > 1.0 + 1e-9)
        throw ModelInvariantError("|b| exceeds 1 on the interior sample set (" + format_number(model.diagnostics.max_b_modulus) + ")");
    if (!(model.a[0].real() > 0.0) || std::abs(model.a[0].imag()) > 1e-12)
        throw ModelInvariantError("a(0) is not real and positive");
    return model;
}

Complex kernel(const DbrModel& model, Complex z, Complex w) {
    if (!(std::abs(z) < 1.0) || !(std::abs(w) < 1.0)) throw DomainError("kernel: points must lie in the open disk");
    return (1.0 - model.b.evaluate(z) * std::conj(model.b.evaluate(w))) / (1.0 - z * std::conj(w));
}

TaylorSeries kernel_series(const DbrModel& model, Complex w) {
    if (!(std::abs(w) < 1.0)) throw DomainError("kernel_series: point must lie in the open disk");
    // k_w(z) = sum_n conj(w)^n z^n - conj(b(w)) * b(z) * sum_n conj(w)^n z^n
    const TaylorSeries szego = TaylorSeries::geometric(std::conj(w), model.order);
    const TaylorSeries correction = std::conj(model.b.evaluate(w)) * (model.b * szego);
    return szego - correction;
}

IsometryReport verify_isometry(const DbrModel& model, const std::vector<Complex>& nodes,
                               const std::vector<Complex>& coefficients, const DiskGrid& grid, double tol) {
    if (nodes.empty() || nodes.size() != coefficients.size())
        throw DomainError("verify_isometry: need one coefficient per node");
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (nodes[i] == nodes[j]) throw DegenerateNodeSetError("verify_isometry: repeated node");

    const auto n = static_cast<Eigen::Index>(nodes.size());
    Eigen::MatrixXcd G(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            G(i, j) = kernel(model, nodes[static_cast<std::size_t>(i)], nodes[static_cast<std::size_t>(j)]);
    const Eigen::MatrixXcd hermitian = (G + G.adjoint()) / 2.0;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(hermitian, Eigen::EigenvaluesOnly);

    IsometryReport report;
    report.min_gram_eigenvalue = eig.eigenvalues().minCoeff();
    if (!(report.min_gram_eigenvalue > 1e-10))
        throw DegenerateNodeSetError("verify_isometry: Gram matrix is numerically singular (min eigenvalue " +
                                     format_number(report.min_gram_eigenvalue) + ")");

    Eigen::VectorXcd c(n);
    for (Eigen::Index i = 0; i < n; ++i) c(i) = coefficients[static_cast<std::size_t>(i)];
    // <k_{w_j}, k_{w_i}> = kernel(w_i, w_j)
    report.hb_norm_sq = (c.adjoint() * G * c)(0, 0).real();

    TaylorSeries f = TaylorSeries::zero(model.order);
    for (std::size_t i = 0; i < nodes.size(); ++i) f = f + coefficients[i] * kernel_series(model, nodes[i]);
    report.h2_norm_sq = f.h2_norm_sq();
    report.energy = energy(f, model.weight, grid);

    const double rhs = report.h2_norm_sq + report.energy;
    const double diff = std::abs(report.hb_norm_sq - rhs);
    report.relative_gap = report.hb_norm_sq > 0.0 ? diff / report.hb_norm_sq : (diff == 0.0 ? 0.0 : INFINITY);
    report.passes = report.relative_gap <= tol;
    return report;
}

nlohmann::json to_json(const DbrModel& model) {
    const auto& d = model.diagnostics;
    return {
        {"weight", model.source},
        {"order", model.order},
        {"h", coeffs_json(model.h)},
        {"a", coeffs_json(model.a)},
        {"b", coeffs_json(model.b)},
        {"diagnostics",
         {{"raw_l1_norm", d.raw_l1_norm},
          {"rank_one_sigma_ratio", d.rank_one_sigma_ratio},
          {"rank_one_residual", d.rank_one_residual},
          {"h0_deviation", d.h0_deviation},
          {"max_b_modulus", d.max_b_modulus},
          {"outer_modulus_error", d.outer_modulus_error}}},
    };
}

}  // namespace dbrlab
