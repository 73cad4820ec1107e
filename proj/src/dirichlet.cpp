#include "dbrlab/dirichlet.hpp"

#include <algorithm>

#include "dbrlab/errors.hpp"

namespace dbrlab {

double energy(const TaylorSeries& f, const Weight& w, const DiskGrid& grid) {
    const TaylorSeries df = f.derivative();
    return integrate(grid, [&](Complex z) { return std::norm(df.evaluate(z)) * eval(w, z); }).real();
}

DilationReport dilation_report(const TaylorSeries& f, const Weight& w, const std::vector<double>& radii,
                               const DiskGrid& grid, double tol) {
    if (radii.empty()) throw DomainError("dilation_report needs at least one radius");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0 && radii[i] <= 1.0)) throw DomainError("dilation radii must lie in (0,1]");
        if (i > 0 && !(radii[i] > radii[i - 1])) throw DomainError("dilation radii must be strictly increasing");
    }

    DilationReport report;
    for (double r : radii) report.energies.emplace_back(r, energy(f.dilate(r), w, grid));

    report.worst_decrease = 0.0;
    for (std::size_t i = 1; i < report.energies.size(); ++i)
        report.worst_decrease = std::max(report.worst_decrease, report.energies[i - 1].second - report.energies[i].second);
    report.nondecreasing = report.worst_decrease <= tol;
    return report;
}

}  // namespace dbrlab
