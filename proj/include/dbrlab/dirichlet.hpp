#pragma once

#include <utility>
#include <vector>

#include "dbrlab/quadrature.hpp"
#include "dbrlab/series.hpp"
#include "dbrlab/weights.hpp"

namespace dbrlab {

/// Weighted Dirichlet energy D_w(f) = integral of |f'|^2 w dA.
double energy(const TaylorSeries& f, const Weight& w, const DiskGrid& grid);

struct DilationReport {
    /// (r, D_w(f_r)) in the order of the requested radii.
    std::vector<std::pair<double, double>> energies;
    /// Largest drop D(f_{r_i}) - D(f_{r_{i+1}}); <= 0 for a nondecreasing sequence.
    double worst_decrease = 0.0;
    /// Nondecreasing up to `tol`.
    bool nondecreasing = true;
};

/// Energies of the dilations f_r. Radii must be strictly increasing in (0,1].
DilationReport dilation_report(const TaylorSeries& f, const Weight& w, const std::vector<double>& radii,
                               const DiskGrid& grid, double tol = 1e-8);

}  // namespace dbrlab
