#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pampa/bench/norms.hpp"
#include "pampa/bench/output.hpp"
#include "pampa/bench/presets.hpp"

namespace pampa::bench {

struct OutputOptions {
    std::filesystem::path directory;  ///< empty: nothing is written
    bool svg = true;
};

/// Norms of one run against the reference, stored per field.
struct FieldErrors {
    std::vector<FieldNorms> points;
    std::vector<FieldNorms> averages;
};

struct RunSummary {
    std::string name;
    std::size_t cells = 0;
    double time = 0.0;
    std::size_t steps = 0;
    std::size_t rejected_steps = 0;
    bool reached_steady = false;
    double min_stage_h = 0.0;  ///< smallest height over all RK stages, before clipping
    std::size_t clipped = 0;
    double mass_initial = 0.0;
    double mass_final = 0.0;
    double g_spread = 0.0;
    double g2_left = 0.0;  ///< momentum component of G at the first node
    std::optional<FieldErrors> errors;
    std::vector<Diagnostics> series;
    std::vector<std::string> files;
    double wall_seconds = 0.0;
    AnyState initial_state;
    AnyState final_state;
};

template <std::size_t N>
FieldErrors to_field_errors(const ErrorNorms<N>& e) {
    return {std::vector<FieldNorms>(e.points.begin(), e.points.end()),
            std::vector<FieldNorms>(e.averages.begin(), e.averages.end())};
}

namespace detail {

template <ShallowWaterModel M>
RunSummary run_typed(const Experiment& e, const M& model, const Grid& grid, SolutionState<M::kVars> init,
                     const BoundaryCondition& bc, const OutputOptions& out) {
    constexpr std::size_t N = M::kVars;
    const auto start = std::chrono::steady_clock::now();
    RunSummary sum;
    sum.name = e.name;
    sum.cells = grid.n_cells;
    sum.mass_initial = total_integral(init, grid)[0];
    sum.initial_state = init;

    const bool write = !out.directory.empty();
    std::vector<Curve> curves;
    if (write && out.svg && !e.settings.snapshot_times.empty()) {
        Curve b{"B", {}, {}};
        for (std::size_t j = 0; j <= grid.n_cells; ++j) {
            b.x.push_back(grid.node(j));
            b.y.push_back(init.bathy_points[j]);
        }
        curves.push_back(std::move(b));
    }
    auto observer = [&](double t, const SolutionState<N>& s, const Diagnostics&) {
        if (!write) return;
        const std::string stem = e.name + "_t" + format_double(t);
        write_nodes_csv(out.directory / (stem + "_nodes.csv"), model, grid, s, e.controls.quadrature);
        write_cells_csv(out.directory / (stem + "_cells.csv"), grid, s);
        sum.files.push_back(stem + "_nodes.csv");
        sum.files.push_back(stem + "_cells.csv");
        if (out.svg) {
            Curve c{"t = " + format_double(t), {}, {}};
            for (std::size_t j = 0; j <= grid.n_cells; ++j) {
                c.x.push_back(grid.node(j));
                c.y.push_back(s.points[j][0] + s.bathy_points[j]);
            }
            curves.push_back(std::move(c));
        }
    };

    auto res = run(model, grid, init, bc, e.controls, e.settings, Observer<N>(observer));
    sum.time = res.time;
    sum.steps = res.steps;
    sum.rejected_steps = res.rejected_steps;
    sum.reached_steady = res.reached_steady;
    sum.min_stage_h = res.stage_stats.min_h;
    sum.clipped = res.stage_stats.clipped;
    sum.mass_final = total_integral(res.state, grid)[0];
    const auto G = assemble_global_flux(model, grid, res.state, e.controls.quadrature);
    sum.g_spread = global_flux_spread(G, 1);
    sum.g2_left = G.G_nodes.front()[1];
    sum.series = std::move(res.series);
    if (e.reference) {
        const auto ref = std::get<SolutionState<N>>(e.reference(grid, res.time));
        sum.errors = to_field_errors(error_norms(res.state, ref, grid));
    }
    sum.final_state = res.state;

    if (write) {
        if (!sum.series.empty()) {
            write_diagnostics_csv(out.directory / (e.name + "_diagnostics.csv"), sum.series);
            sum.files.push_back(e.name + "_diagnostics.csv");
        }
        if (out.svg && curves.size() > 1) {
            write_svg(out.directory / (e.name + "_surface.svg"), e.name + ": surface h + B", curves);
            sum.files.push_back(e.name + "_surface.svg");
        }
    }
    sum.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return sum;
}

}  // namespace detail

inline RunSummary run_experiment(const Experiment& e, const OutputOptions& out = {}) {
    if (!e.initial) throw std::invalid_argument("run_experiment: '" + e.name + "' has no initial data");
    const Grid grid = e.grid();
    const AnyState init = e.initial(grid);
    const BoundaryCondition bc = e.boundary_from_initial ? e.boundary_from_initial(init) : e.bc;
    return std::visit(
        [&](const auto& model) -> RunSummary {
            using M = std::decay_t<decltype(model)>;
            const auto* s = std::get_if<SolutionState<M::kVars>>(&init);
            if (!s) throw std::invalid_argument("run_experiment: initial data do not match the model");
            return detail::run_typed(e, model, grid, *s, bc, out);
        },
        e.model);
}

/// Errors and rates over a mesh sequence; Runge estimates when the experiment
/// has no exact reference.
struct ErrorReport {
    std::vector<std::size_t> cells;
    bool runge = false;
    std::vector<FieldErrors> errors;  ///< one per mesh (all but the last one for Runge)
    std::vector<RunSummary> runs;

    /// log2 ratios of the selected norm for field k.
    std::vector<double> rates(std::size_t k, bool points, double FieldNorms::*norm = &FieldNorms::l1) const {
        std::vector<double> e;
        for (const auto& f : errors) e.push_back((points ? f.points : f.averages)[k].*norm);
        return convergence_rates(e);
    }
};

inline ErrorReport convergence_study(const Experiment& base, const std::vector<std::size_t>& meshes,
                                     const OutputOptions& out = {}) {
    if (meshes.size() < 3) throw std::invalid_argument("convergence_study: need at least three meshes");
    for (std::size_t k = 0; k + 1 < meshes.size(); ++k)
        if (meshes[k + 1] != 2 * meshes[k])
            throw std::invalid_argument("convergence_study: meshes must be successive 2x refinements");

    ErrorReport rep;
    rep.cells = meshes;
    rep.runge = !base.reference;
    for (std::size_t n : meshes) {
        Experiment e = base;
        e.cells = n;
        e.name = base.name + "_n" + std::to_string(n);
        rep.runs.push_back(run_experiment(e, out));
        if (!rep.runge) rep.errors.push_back(*rep.runs.back().errors);
    }
    if (rep.runge) {
        for (std::size_t k = 0; k + 1 < meshes.size(); ++k) {
            Experiment e = base;
            e.cells = meshes[k];
            const Grid g = e.grid();
            std::visit(
                [&](const auto& coarse) {
                    using S = std::decay_t<decltype(coarse)>;
                    const auto& fine = std::get<S>(rep.runs[k + 1].final_state);
                    rep.errors.push_back(to_field_errors(runge_error(coarse, fine, g)));
                },
                rep.runs[k].final_state);
        }
    }
    return rep;
}

}  // namespace pampa::bench
