#include <cmath>
#include <numbers>

#include "doctest.h"

#include "dbrlab/dbr.hpp"
#include "dbrlab/errors.hpp"
#include "dbrlab/samplers.hpp"

using namespace dbrlab;

namespace {

struct Fixture {
    Weight weight;
    DbrGrids grids;
    DbrModel model;
};

const Fixture& harm1() {
    static const Fixture f = [] {
        const auto w = Weight::harmonic_boundary(1.0);
        auto g = default_grids(w);
        auto m = build_model(w, g);
        return Fixture{w, std::move(g), std::move(m)};
    }();
    return f;
}

// Golden-ratio constant of the Harm(1) symbol: b(z) = (1 - t) z / (1 - t z).
const double kTau = (3.0 - std::sqrt(5.0)) / 2.0;

}  // namespace

TEST_CASE("phi modulus") {
    const auto& f = harm1();
    CHECK(phi_modulus_sq(0.0, f.weight, f.grids.disk) == 0.0);
    const Complex w = 0.3;
    CHECK(std::abs(phi_modulus_sq(w, f.weight, f.grids.disk) - std::norm(w) / std::norm(1.0 - w)) < 1e-5);
    samplers::Rng rng(17);
    for (int i = 0; i < 5; ++i) CHECK(phi_modulus_sq(samplers::disk_point(rng, 0.0, 0.8), f.weight, f.grids.disk) >= 0.0);
}

TEST_CASE("u moments of the catalog") {
    const Complex zeta = std::polar(1.0, 1.1);
    const auto h = Weight::harmonic_boundary(zeta);
    const auto M = u_moments(h, make_disk_grid_for(h, 60, 64), 5);
    for (std::size_t j = 0; j <= 5; ++j)
        for (std::size_t k = 0; k <= 5; ++k)
            CHECK(std::abs(M(j, k) - std::pow(zeta, static_cast<int>(j)) * std::pow(std::conj(zeta), static_cast<int>(k))) <
                  1e-14);

    // The quadrature route agrees with the atom.
    const auto g = Weight::log_green({0.3, 0.2});
    const auto grid = make_disk_grid_for(g, 120, 256);
    const auto n = normalize(g, grid);
    const auto Q = u_moments_from_weight(n, grid, 6);
    const auto D = u_moments_from_decomposition(*n.green_decomposition(), 6);
    for (std::size_t j = 0; j <= 6; ++j)
        for (std::size_t k = 0; k <= 6; ++k) CHECK(std::abs(Q(j, k) - D(j, k)) < 1e-9);

    // Uniform weight: u = (1/pi) dA, the identity table.
    const auto I = u_moments(Weight::uniform(), make_disk_grid(120, 256), 4);
    for (std::size_t j = 0; j <= 4; ++j)
        for (std::size_t k = 0; k <= 4; ++k) CHECK(std::abs(I(j, k) - (j == k ? 1.0 : 0.0)) < 1e-12);
}

TEST_CASE("h from moments") {
    const Complex zeta = std::polar(1.0, -0.4);
    MomentTable M(6, {});
    for (std::size_t j = 0; j <= 6; ++j)
        for (std::size_t k = 0; k <= 6; ++k)
            M(j, k) = std::pow(zeta, static_cast<int>(j)) * std::pow(std::conj(zeta), static_cast<int>(k));
    const auto h = h_from_moments(M);
    for (std::size_t k = 0; k <= 6; ++k) CHECK(std::abs(h[k] - std::pow(std::conj(zeta), static_cast<int>(k))) < 1e-15);

    MomentTable origin(4, {});
    origin(0, 0) = 1.0;
    const auto h0 = h_from_moments(origin);
    CHECK(h0[0] == Complex(1.0));
    for (std::size_t k = 1; k <= 4; ++k) CHECK(h0[k] == Complex(0.0));

    MomentTable two(2, {});
    two(0, 0) = 1.0;
    two(1, 1) = 1.0;
    CHECK_THROWS_AS(h_from_moments(two), NotDbrWeightError);

    MomentTable unnormalized(2, {});
    unnormalized(0, 0) = 2.0;
    CHECK_THROWS_AS(h_from_moments(unnormalized), DomainError);
}

TEST_CASE("rank-one fit recovers h up to its phase") {
    samplers::Rng rng(18);
    std::vector<Complex> h(7);
    h[0] = 1.0;
    for (std::size_t k = 1; k <= 6; ++k) h[k] = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    MomentTable M(6, {});
    for (std::size_t j = 0; j <= 6; ++j)
        for (std::size_t k = 0; k <= 6; ++k) M(j, k) = std::conj(h[j]) * h[k];
    const auto fit = rank_one_fit(M);
    CHECK(fit.sigma_ratio < 1e-14);
    CHECK(fit.residual < 1e-13);
    for (std::size_t k = 0; k <= 6; ++k) CHECK(std::abs(fit.h[k] - h[k]) < 1e-13);
}

TEST_CASE("h identity") {
    const auto& f = harm1();
    std::vector<Complex> pts;
    for (int i = 1; i <= 5; ++i)
        for (int k = 0; k < 5; ++k) pts.push_back(std::polar(0.16 * i, 2.0 * std::numbers::pi * k / 5.0 + 0.1 * i));
    const auto r = verify_h_identity(f.weight, TaylorSeries::geometric(1.0, 64), pts, f.grids.disk, 1e-4);
    CHECK(r.passes);
    CHECK(r.lhs.size() == pts.size());

    const auto g = Weight::log_green(0.4);
    const auto gg = default_grids(g);
    const auto n = normalize(g, gg.disk);
    const auto h = h_from_moments(u_moments_from_decomposition(*n.green_decomposition(), 64));
    CHECK(verify_h_identity(n, h, pts, gg.disk, 1e-4).passes);

    const auto u = Weight::uniform();
    const auto ug = make_disk_grid(120, 256);
    const auto fit = rank_one_fit(u_moments(u, ug, 8));
    const auto bad = verify_h_identity(u, fit.h, pts, ug, 1e-4);
    CHECK_FALSE(bad.passes);
    CHECK(bad.worst_residual > 1e-2);
}

TEST_CASE("laplacian identity") {
    CHECK(laplacian_identity_check(0.0, 0.0, 1e-3) <= 1e-6);
    CHECK(laplacian_identity_check({0.3, 0.1}, 0.5, 1e-3) <= 1e-5);
    const double e1 = laplacian_identity_check({0.3, 0.1}, 0.5, 1e-2);
    const double e2 = laplacian_identity_check({0.3, 0.1}, 0.5, 5e-3);
    CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.05));
    CHECK_THROWS_AS(laplacian_identity_check(0.999, 0.0, 1e-2), DomainError);
    CHECK_THROWS_AS(laplacian_identity_check(0.0, 0.0, 0.0), DomainError);
}

TEST_CASE("outer function") {
    const auto circle = make_circle_grid(1024);
    std::vector<double> target(circle.size(), std::log(2.5));
    const auto c = outer_function(target, circle, 16);
    CHECK(std::abs(c[0] - 2.5) < 1e-14);
    for (std::size_t k = 1; k <= 16; ++k) CHECK(std::abs(c[k]) < 1e-14);

    for (std::size_t j = 0; j < circle.size(); ++j) target[j] = std::log(std::abs(1.0 - circle.nodes()[j] / 2.0));
    const auto a = outer_function(target, circle, 40);
    CHECK(std::abs(a[0] - 1.0) < 1e-8);
    CHECK(std::abs(a[1] + 0.5) < 1e-8);
    for (std::size_t k = 2; k <= 40; ++k) CHECK(std::abs(a[k]) < 1e-8);

    // Held-out nodes of a finer circle.
    samplers::Rng rng(19);
    std::vector<double> smooth(circle.size());
    auto fn = [](Complex u) { return 0.3 * std::cos(std::arg(u)) - 0.1 * std::sin(2.0 * std::arg(u)); };
    for (std::size_t j = 0; j < circle.size(); ++j) smooth[j] = fn(circle.nodes()[j]);
    const auto o = outer_function(smooth, circle, 64);
    for (int i = 0; i < 50; ++i) {
        const Complex u = std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi));
        CHECK(std::abs(std::abs(o.evaluate(u)) - std::exp(fn(u))) < 1e-6);
    }
    CHECK(o[0].real() > 0.0);

    target[3] = NAN;
    CHECK_THROWS_AS(outer_function(target, circle, 8), SingularBoundaryDataError);
    CHECK_THROWS_AS(outer_function(std::vector<double>(5, 0.0), circle, 8), DomainError);
}

TEST_CASE("model for the boundary weight at 1") {
    const auto& m = harm1().model;
    CHECK(std::abs(m.h[0] - 1.0) < 1e-6);
    for (std::size_t k = 0; k <= 64; ++k) CHECK(std::abs(m.h[k] - 1.0) < 1e-9);
    // Closed forms: a(z) = (1 - t)(1 - z)/(1 - t z), b(z) = (1 - t) z / (1 - t z).
    CHECK(std::abs(m.a[0] - (1.0 - kTau)) < 1e-10);
    for (std::size_t k = 1; k <= 30; ++k) {
        const double bk = (1.0 - kTau) * std::pow(kTau, static_cast<double>(k - 1));
        CHECK(std::abs(m.b[k] - bk) < 1e-10);
    }
    CHECK(m.b[0] == Complex(0.0));
    CHECK(m.diagnostics.max_b_modulus <= 1.0);
    CHECK(m.a[0].imag() == 0.0);
    // h is truncated at order 64, so compare away from the outer ring.
    for (const auto& [w, phi] : m.phi_samples)
        if (std::abs(w) < 0.7) CHECK(std::abs(phi - w / (1.0 - w)) < 1e-8);
}

TEST_CASE("model for the log weight at the origin") {
    const auto w = Weight::log_green(0.0);
    const auto m = build_model(w, default_grids(w));
    CHECK(std::abs(m.h[0] - 1.0) < 1e-6);
    // u = delta_0, h = 1, |a|^2 = 1/2 on the circle, b = z / sqrt 2.
    CHECK(std::abs(m.b[1] - std::sqrt(0.5)) < 1e-6);
    for (std::size_t k = 2; k <= 10; ++k) CHECK(std::abs(m.b[k]) < 1e-6);
}

TEST_CASE("uniform weight has no model") {
    const auto u = Weight::uniform();
    CHECK_THROWS_AS(build_model(u, default_grids(u)), NotDbrWeightError);
}

TEST_CASE("kernel") {
    const auto& m = harm1().model;
    const auto zero = m.with_symbol(TaylorSeries::zero(m.order));
    const Complex z(0.2, 0.3), w(-0.4, 0.1);
    CHECK(std::abs(kernel(zero, z, w) - 1.0 / (1.0 - z * std::conj(w))) < 1e-15);
    CHECK(std::abs(kernel(m, z, w) - std::conj(kernel(m, w, z))) < 1e-15);
    CHECK(kernel(m, z, z).real() >= 0.0);
    CHECK(std::abs(kernel(m, z, z).imag()) < 1e-15);

    const auto ks = kernel_series(m, w);
    CHECK(std::abs(ks.evaluate(z) - kernel(m, z, w)) < 1e-12);
    CHECK_THROWS_AS(kernel(m, 1.0, 0.0), DomainError);
}

TEST_CASE("Gram matrices are positive semidefinite") {
    const auto& m = harm1().model;
    samplers::Rng rng(20);
    for (int t = 0; t < 10; ++t) {
        const auto nodes = samplers::separated_points(rng, 4, 0.0, 0.8, 0.1);
        const auto r = verify_isometry(m, nodes, samplers::coefficients(rng, 4), harm1().grids.disk);
        CHECK(r.min_gram_eigenvalue >= -1e-10);
    }
}

TEST_CASE("isometry") {
    const auto& f = harm1();
    const auto single = verify_isometry(f.model, {0.0}, {1.0}, f.grids.disk);
    CHECK(single.hb_norm_sq == doctest::Approx(1.0 - std::norm(f.model.b[0])));
    CHECK(single.passes);

    const auto r = verify_isometry(f.model, {0.0, 0.4, {-0.3, 0.2}}, {1.0, {0.5, -0.25}, {0.0, 1.5}}, f.grids.disk);
    CHECK(r.relative_gap <= 1e-2);

    const auto z = verify_isometry(f.model, {0.1, 0.5}, {0.0, 0.0}, f.grids.disk);
    CHECK(z.hb_norm_sq == 0.0);
    CHECK(z.relative_gap == 0.0);

    CHECK_THROWS_AS(verify_isometry(f.model, {0.2, 0.2}, {1.0, 1.0}, f.grids.disk), DegenerateNodeSetError);
    CHECK_THROWS_AS(verify_isometry(f.model, {0.2, 0.2 + 1e-13}, {1.0, 1.0}, f.grids.disk), DegenerateNodeSetError);

    // H(b) norm with b = 0 is the H^2 norm, so the gap is D(f)/||f||^2 > 0.
    const auto wrong = f.model.with_symbol(TaylorSeries::zero(f.model.order));
    CHECK(verify_isometry(wrong, {-0.5}, {1.0}, f.grids.disk).relative_gap > 0.1);
}

TEST_CASE("model JSON") {
    const auto j = to_json(harm1().model);
    CHECK(j.at("weight") == "harm:1,0");
    CHECK(j.at("h").at("re").size() == 65);
    CHECK(j.at("diagnostics").contains("rank_one_residual"));
    CHECK(j.at("diagnostics").contains("h0_deviation"));
}
