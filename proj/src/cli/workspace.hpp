#pragma once

#include <exception>
#include <optional>

#include "dbrlab/cli.hpp"
#include "dbrlab/dbr.hpp"
#include "dbrlab/weight_spec.hpp"

namespace dbrlab::cli {

// Per-run cache: the weight, its grids, the normalized weight and the model
// are built once and shared by every suite of a run.
class Workspace {
public:
    explicit Workspace(const RunConfig& c) : cfg_(c), weight_(parse_weight_spec(c.weight_spec)) {}

    const RunConfig& config() const { return cfg_; }
    const Weight& weight() const { return weight_; }

    const DbrGrids& grids() {
        if (!grids_) grids_ = default_grids(weight_, cfg_.radial_order, cfg_.angular_order, kCircleNodes);
        return *grids_;
    }

    /// Both orders halved, for trends and Richardson estimates.
    const DiskGrid& coarse_grid() {
        if (!coarse_)
            coarse_ = make_disk_grid_for(weight_, std::max(1, cfg_.radial_order / 2), std::max(4, cfg_.angular_order / 2));
        return *coarse_;
    }

    const Weight& normalized() {
        if (!normalized_) normalized_ = normalize(weight_, grids().disk);
        return *normalized_;
    }

    /// Measure moments of the normalized weight on the default (or coarse) grid.
    const MomentTable& measure_table(bool coarse = false) {
        auto& slot = coarse ? coarse_measure_ : measure_;
        if (!slot)
            slot = measure_moments(normalized(), coarse ? coarse_grid() : grids().disk, static_cast<std::size_t>(cfg_.order));
        return *slot;
    }

    /// Moments of u from the measure moments (quadrature route).
    MomentTable u_table(bool coarse = false) { return u_moments_from_measure(measure_table(coarse)); }

    /// Rethrows the original error on every call when the build failed.
    const DbrModel& model() {
        if (model_error_) std::rethrow_exception(model_error_);
        if (!model_) {
            try {
                model_ = build_model(weight_, grids(), static_cast<std::size_t>(cfg_.series_order),
                                     static_cast<std::size_t>(cfg_.order));
            } catch (...) {
                model_error_ = std::current_exception();
                throw;
            }
        }
        return *model_;
    }

    nlohmann::json inputs(nlohmann::json extra) {
        nlohmann::json j{{"weight", cfg_.weight_spec}, {"grid", grids().disk.id()}};
        for (auto& [k, v] : extra.items()) j[k] = v;
        return j;
    }

    static constexpr int kCircleNodes = 4096;

private:
    RunConfig cfg_;
    Weight weight_;
    std::optional<DbrGrids> grids_;
    std::optional<DiskGrid> coarse_;
    std::optional<Weight> normalized_;
    std::optional<MomentTable> measure_, coarse_measure_;
    std::optional<DbrModel> model_;
    std::exception_ptr model_error_;
};

SuiteReport run_suite_in(Suite s, Workspace& ws);

}  // namespace dbrlab::cli
