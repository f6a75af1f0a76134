#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pampa/spatial_operator.hpp"

namespace pampa {

/// Raised when a stage produces NaN or a clearly negative height.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, std::size_t index, int stage, double time)
        : std::runtime_error(what + " (dof " + std::to_string(index) + ", stage " + std::to_string(stage) +
                             ", t = " + std::to_string(time) + ")"),
          index_(index),
          stage_(stage) {}
    std::size_t index() const noexcept { return index_; }
    int stage() const noexcept { return stage_; }

private:
    std::size_t index_;
    int stage_;
};

struct StepControls {
    double cfl = 0.2;
    double t_final = 0.0;
    std::size_t max_steps = 50'000'000;
    Quadrature quadrature = Quadrature::sc_lobatto3;
    SchemeOrder order = SchemeOrder::high_blended;

    void validate() const {
        if (!(cfl > 0.0)) throw std::invalid_argument("StepControls: cfl must be positive");
        if (order != SchemeOrder::high_unlimited && cfl > 0.25)
            throw std::invalid_argument("StepControls: cfl above 1/4 breaks the positivity bound");
        if (!(t_final >= 0.0)) throw std::invalid_argument("StepControls: t_final must be >= 0");
    }
    OperatorOptions operator_options() const noexcept { return {quadrature, order}; }
};

template <ShallowWaterModel M>
double max_wave_speed_all(const M& model, const SolutionState<M::kVars>& s) noexcept {
    double a = 0.0;
    for (const auto& u : s.points) a = std::max(a, model.max_wave_speed(u));
    for (const auto& u : s.averages) a = std::max(a, model.max_wave_speed(u));
    return a;
}

/// dt = cfl dx / alpha_max, clipped so that t + dt does not pass t_final.
template <ShallowWaterModel M>
double compute_dt(const M& model, const Grid& grid, const SolutionState<M::kVars>& s, const StepControls& ctl,
                  double t_now = 0.0) {
    const double alpha = max_wave_speed_all(model, s);
    double dt = alpha > 0.0 ? ctl.cfl * grid.dx / alpha : ctl.cfl * grid.dx;
    const double remaining = ctl.t_final - t_now;
    if (remaining < dt) dt = std::max(remaining, 0.0);
    return dt;
}

/// Heights seen at RK stages before round-off clipping.
struct StageStats {
    double min_h = std::numeric_limits<double>::infinity();
    std::size_t clipped = 0;  ///< tiny negative heights set to zero
    std::size_t stages = 0;
};

namespace detail {

template <std::size_t N>
void check_stage(SolutionState<N>& s, int stage, double time, StageStats* stats = nullptr) {
    double h_scale = 0.0;
    for (const auto& u : s.averages) h_scale = std::max(h_scale, std::abs(u[0]));
    const double tol = 1e-12 * std::max(1.0, h_scale);
    auto fix = [&](StateVector<N>& u, std::size_t idx, const char* kind) {
        if (!all_finite(u)) throw SolverError(std::string("non-finite ") + kind, idx, stage, time);
        if (stats) stats->min_h = std::min(stats->min_h, u[0]);
        if (u[0] < 0.0) {
            if (u[0] < -tol) throw SolverError(std::string("negative height in ") + kind, idx, stage, time);
            u[0] = 0.0;
            if (stats) ++stats->clipped;
        }
    };
    for (std::size_t c = 0; c < s.averages.size(); ++c) fix(s.averages[c], c, "cell average");
    for (std::size_t j = 0; j < s.points.size(); ++j) fix(s.points[j], j, "point value");
    if (stats) ++stats->stages;
}

template <std::size_t N>
SolutionState<N> combine(double a, const SolutionState<N>& x, double b, const SolutionState<N>& y) {
    SolutionState<N> r = x;
    for (std::size_t c = 0; c < r.averages.size(); ++c) r.averages[c] = a * x.averages[c] + b * y.averages[c];
    for (std::size_t j = 0; j < r.points.size(); ++j) r.points[j] = a * x.points[j] + b * y.points[j];
    return r;
}

}  // namespace detail

/// One forward-Euler step of the full scheme. `stage` and `time` only label
/// diagnostics.
template <ShallowWaterModel M>
SolutionState<M::kVars> euler_stage(const M& model, const Grid& grid, const SolutionState<M::kVars>& s,
                                    const BoundaryCondition& bc, const StepControls& ctl, double dt, int stage = 1,
                                    double time = 0.0, StageStats* stats = nullptr) {
    const auto rates = compute_rates(model, grid, s, bc, ctl.operator_options(), dt);
    SolutionState<M::kVars> next = s;
    for (std::size_t c = 0; c < next.averages.size(); ++c) next.averages[c] += dt * rates.d_avg[c];
    for (std::size_t j = 0; j < next.points.size(); ++j) next.points[j] += dt * rates.d_points[j];
    if (bc.is_periodic()) next.points.back() = next.points.front();
    impose_dirichlet_nodes(next, bc);
    detail::check_stage(next, stage, time, stats);
    return next;
}

/// Thrown when a stage would run above the positivity CFL bound; the driver
/// retries with a smaller step.
class StepRejected : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <ShallowWaterModel M>
SolutionState<M::kVars> ssp_rk3_step(const M& model, const Grid& grid, const SolutionState<M::kVars>& s,
                                     const BoundaryCondition& bc, const StepControls& ctl, double dt,
                                     double time = 0.0, StageStats* stats = nullptr) {
    auto guard = [&](const SolutionState<M::kVars>& u) {
        if (ctl.order == SchemeOrder::high_unlimited) return;
        if (dt * max_wave_speed_all(model, u) > 0.25 * grid.dx * (1.0 + 1e-12))
            throw StepRejected("stage exceeds the positivity CFL bound");
    };
    guard(s);
    const auto u1 = euler_stage(model, grid, s, bc, ctl, dt, 1, time, stats);
    guard(u1);
    auto u2 = detail::combine(0.75, s, 0.25, euler_stage(model, grid, u1, bc, ctl, dt, 2, time, stats));
    impose_dirichlet_nodes(u2, bc);
    guard(u2);
    auto u3 = detail::combine(1.0 / 3.0, s, 2.0 / 3.0, euler_stage(model, grid, u2, bc, ctl, dt, 3, time, stats));
    impose_dirichlet_nodes(u3, bc);
    detail::check_stage(u3, 3, time, stats);
    return u3;
}

struct Diagnostics {
    double time = 0.0;
    std::size_t step = 0;
    double min_h = 0.0;
    double mass = 0.0;
    double g_spread = 0.0;  ///< max - min of the momentum component of G
};

template <ShallowWaterModel M>
Diagnostics diagnose(const M& model, const Grid& grid, const SolutionState<M::kVars>& s, Quadrature quad, double t,
                     std::size_t step) {
    Diagnostics d;
    d.time = t;
    d.step = step;
    d.min_h = std::numeric_limits<double>::infinity();
    for (const auto& u : s.points) d.min_h = std::min(d.min_h, u[0]);
    for (const auto& u : s.averages) d.min_h = std::min(d.min_h, u[0]);
    d.mass = total_integral(s, grid)[0];
    d.g_spread = global_flux_spread(assemble_global_flux(model, grid, s, quad), 1);
    return d;
}

template <std::size_t N>
using Observer = std::function<void(double, const SolutionState<N>&, const Diagnostics&)>;

struct RunSettings {
    std::vector<double> snapshot_times;  ///< observers fire exactly at these
    std::size_t record_every = 0;        ///< also record diagnostics every k steps (0 = never)
    /// Stop early once max |u^{n+1} - u^n| / dt falls below this (0 = off).
    double steady_tolerance = 0.0;
    int max_retries = 8;
};

template <std::size_t N>
struct RunResult {
    SolutionState<N> state;
    double time = 0.0;
    std::size_t steps = 0;
    bool reached_steady = false;
    std::vector<Diagnostics> series;
    StageStats stage_stats;
    std::size_t rejected_steps = 0;
};

template <ShallowWaterModel M>
RunResult<M::kVars> run(const M& model, const Grid& grid, SolutionState<M::kVars> state, const BoundaryCondition& bc,
                        const StepControls& ctl, const RunSettings& settings = {},
                        const Observer<M::kVars>& observer = {}) {
    model.validate();
    ctl.validate();
    bc.validate<M::kVars>();
    impose_dirichlet_nodes(state, bc);

    RunResult<M::kVars> res;
    std::vector<double> marks = settings.snapshot_times;
    std::sort(marks.begin(), marks.end());
    std::size_t next_mark = 0;
    auto fire = [&](double t) {
        const auto d = diagnose(model, grid, state, ctl.quadrature, t, res.steps);
        if (observer) observer(t, state, d);
        return d;
    };
    while (next_mark < marks.size() && marks[next_mark] <= 0.0) {
        fire(0.0);
        ++next_mark;
    }
    if (settings.record_every > 0) res.series.push_back(diagnose(model, grid, state, ctl.quadrature, 0.0, 0));

    double t = 0.0;
    while (t < ctl.t_final) {
        if (res.steps >= ctl.max_steps) throw std::runtime_error("run: max_steps exceeded at t = " + std::to_string(t));
        double dt = compute_dt(model, grid, state, ctl, t);
        if (next_mark < marks.size() && t + dt > marks[next_mark]) dt = marks[next_mark] - t;
        if (!(dt > 0.0)) break;

        std::optional<SolutionState<M::kVars>> next;
        for (int attempt = 0; !next; ++attempt) {
            StageStats stats;
            try {
                next = ssp_rk3_step(model, grid, state, bc, ctl, dt, t, &stats);
                res.stage_stats.min_h = std::min(res.stage_stats.min_h, stats.min_h);
                res.stage_stats.clipped += stats.clipped;
                res.stage_stats.stages += stats.stages;
            } catch (const StepRejected&) {
                if (attempt >= settings.max_retries) throw;
                dt *= 0.5;
                ++res.rejected_steps;
            } catch (const SolverError&) {
                if (attempt >= settings.max_retries) throw;
                dt *= 0.5;
                ++res.rejected_steps;
            }
        }
        double change = 0.0;
        if (settings.steady_tolerance > 0.0) {
            for (std::size_t c = 0; c < state.averages.size(); ++c)
                change = std::max(change, max_abs(next->averages[c] - state.averages[c]));
            for (std::size_t j = 0; j < state.points.size(); ++j)
                change = std::max(change, max_abs(next->points[j] - state.points[j]));
        }
        state = std::move(*next);
        const bool at_mark = next_mark < marks.size() && t + dt >= marks[next_mark];
        t = at_mark ? marks[next_mark] : t + dt;
        if (t > ctl.t_final) t = ctl.t_final;
        ++res.steps;

        if (settings.record_every > 0 && res.steps % settings.record_every == 0)
            res.series.push_back(diagnose(model, grid, state, ctl.quadrature, t, res.steps));
        while (next_mark < marks.size() && marks[next_mark] <= t) {
            fire(t);
            ++next_mark;
        }
        if (settings.steady_tolerance > 0.0 && change / dt < settings.steady_tolerance) {
            res.reached_steady = true;
            break;
        }
    }
    res.state = std::move(state);
    res.time = t;
    return res;
}

}  // namespace pampa
