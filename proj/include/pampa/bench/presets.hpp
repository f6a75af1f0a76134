#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "pampa/equilibria.hpp"
#include "pampa/time_integration.hpp"

namespace pampa::bench {

using AnyModel = std::variant<SaintVenant, RotatingShallowWater>;
using AnyState = std::variant<SolutionState<2>, SolutionState<3>>;

using ScalarFn = std::function<double(double)>;

/// Everything needed to run one experiment. `initial` and `reference` take the
/// grid so the cell count can be changed after the preset is built.
struct Experiment {
    std::string name;
    std::string description;
    AnyModel model = SaintVenant{};
    double x_min = 0.0;
    double x_max = 1.0;
    std::size_t cells = 100;
    BoundaryCondition bc;
    StepControls controls;
    RunSettings settings;
    ScalarFn bathymetry = [](double) { return 0.0; };
    std::function<AnyState(const Grid&)> initial;
    /// Exact solution at time t, when one is known.
    std::function<AnyState(const Grid&, double)> reference;
    /// Boundary data that depend on the prepared initial state.
    std::function<BoundaryCondition(const AnyState&)> boundary_from_initial;

    Grid grid() const { return make_grid(x_min, x_max, cells); }
};

namespace shapes {

inline constexpr double pi = std::numbers::pi;

/// Two cosine bumps on [-1, 1].
inline double twin_bumps(double x) {
    if (x >= -0.4 && x <= -0.2) return 2.0 * (std::cos(10.0 * pi * (x + 0.3)) + 1.0);
    if (x >= 0.2 && x <= 0.4) return 0.5 * (std::cos(10.0 * pi * (x - 0.3)) + 1.0);
    return 0.0;
}

/// Parabolic bump 0.2 - 0.05 (x - 10)^2 on [8, 12].
inline double parabolic_bump(double x) {
    if (x >= 8.0 && x <= 12.0) return 0.2 - 0.05 * (x - 10.0) * (x - 10.0);
    return 0.0;
}

inline double cosine_bump(double x) {
    if (x >= 0.7 && x <= 0.9) return 0.25 * (std::cos(10.0 * pi * (x - 0.8)) + 1.0);
    return 0.0;
}

inline double jet_profile(double x) {
    const double d = 1.0 + std::tanh(2.0);
    return (1.0 + std::tanh(2.0 * x + 2.0)) * (1.0 - std::tanh(2.0 * x - 2.0)) / (d * d);
}

}  // namespace shapes

/// Point values sampled, averages by Simpson's rule.
template <std::size_t N>
AnyState project(const Grid& grid, const std::array<ScalarFn, N>& fields, const ScalarFn& bathymetry) {
    return project_initial_data<N>(grid, fields, bathymetry);
}

/// Composite Gauss average of f over cell c, accurate for kinks inside the cell.
inline double cell_mean(const ScalarFn& f, double a, double b, int pieces = 16) {
    static constexpr double xg[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
    static constexpr double wg[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    const double h = (b - a) / pieces;
    double s = 0.0;
    for (int p = 0; p < pieces; ++p) {
        const double m = a + (p + 0.5) * h;
        for (int k = 0; k < 3; ++k) s += wg[k] * f(m + 0.5 * h * xg[k]);
    }
    return 0.5 * s / pieces;
}

/// Exact reference from pointwise fields with exact cell means.
template <std::size_t N>
SolutionState<N> exact_state(const Grid& grid, const std::array<ScalarFn, N>& fields, const ScalarFn& bathymetry) {
    SolutionState<N> s = project_initial_data<N>(grid, fields, bathymetry);
    for (std::size_t c = 0; c < grid.n_cells; ++c)
        for (std::size_t k = 0; k < N; ++k) s.averages[c][k] = cell_mean(fields[k], grid.node(c), grid.node(c + 1));
    return s;
}

namespace detail {

inline BoundaryCondition ex3_boundary(int case_id) {
    if (case_id == 1) return {BoundarySide::fixed({{0, 2.0}, {1, 24.0}}), BoundarySide::extrapolation()};
    return {BoundarySide::fixed({{1, 4.42}}), BoundarySide::fixed({{0, 2.0}})};
}

inline EquilibriumSpec ex4_spec(int case_id) {
    EquilibriumSpec sp;
    sp.bathymetry = shapes::parabolic_bump;
    if (case_id == 1) {
        sp.G2 = 307.624;
        sp.discharge = 24.0;
        sp.branch = Branch::supercritical;
    } else {
        sp.G2 = 31.7008;
        sp.discharge = 4.42;
        sp.branch = Branch::subcritical;
    }
    return sp;
}

/// Boundary data read off a prepared equilibrium so that it stays a fixed point.
template <std::size_t N>
BoundaryCondition ex4_hold_boundary(int case_id, const SolutionState<N>& s) {
    if (case_id == 1)
        return {BoundarySide::fixed({{0, s.points.front()[0]}, {1, s.points.front()[1]}}),
                BoundarySide::extrapolation()};
    return {BoundarySide::fixed({{1, s.points.front()[1]}}), BoundarySide::fixed({{0, s.points.back()[0]}})};
}

template <std::size_t N>
void add_height_perturbation(SolutionState<N>& s, const Grid& grid, const ScalarFn& dh) {
    for (std::size_t j = 0; j <= grid.n_cells; ++j) s.points[j][0] += dh(grid.node(j));
    for (std::size_t c = 0; c < grid.n_cells; ++c)
        s.averages[c][0] += (dh(grid.node(c)) + 4.0 * dh(grid.center(c)) + dh(grid.node(c + 1))) / 6.0;
}

inline std::vector<double> evenly(double t_final, int count) {
    std::vector<double> v;
    for (int k = 1; k <= count; ++k) v.push_back(t_final * k / count);
    return v;
}

}  // namespace detail

inline Experiment example1() {
    Experiment e;
    e.name = "example1";
    e.description = "smooth periodic flow with Manning friction (accuracy test)";
    e.model = SaintVenant{9.812, 0.05};
    e.x_min = 0.0;
    e.x_max = 1.0;
    e.cells = 256;
    e.bc = BoundaryCondition::periodic();
    e.controls.t_final = 0.03;
    e.bathymetry = [](double x) { return 0.2 * (1.0 + std::cos(6.0 * shapes::pi * x)); };
    e.initial = [b = e.bathymetry](const Grid& g) {
        const ScalarFn h = [](double x) {
            const double z = (x - 0.5) / 0.05;
            return 0.3 * (1.0 + std::exp(-z * z)) - 0.2 * std::cos(6.0 * shapes::pi * x);
        };
        return project<2>(g, {h, [](double) { return 0.0; }}, b);
    };
    return e;
}

/// Lake at rest over two bumps; averages are built as w - Bbar so the
/// discrete surface is flat.
inline Experiment example2(bool perturbed = false) {
    Experiment e;
    e.name = perturbed ? "example2-perturbed" : "example2";
    e.description = perturbed ? "small perturbation of still water" : "still water over two bumps";
    e.model = SaintVenant{};
    e.x_min = -1.0;
    e.x_max = 1.0;
    e.cells = perturbed ? 100 : 50;
    e.bc = BoundaryCondition::extrapolation();
    e.controls.t_final = perturbed ? 0.06 : 10.0;
    if (perturbed) e.settings.snapshot_times = {0.02, 0.04, 0.06};
    e.bathymetry = shapes::twin_bumps;
    e.initial = [perturbed](const Grid& g) {
        const double w = 4.000001;
        auto s = project_initial_data<2>(g, {[w](double x) { return w - shapes::twin_bumps(x); },
                                             [](double) { return 0.0; }},
                                         shapes::twin_bumps);
        for (std::size_t c = 0; c < g.n_cells; ++c) s.averages[c][0] = w - s.bathy_averages[c];
        if (perturbed) detail::add_height_perturbation(s, g, [](double x) { return 1e-6 * std::exp(-200.0 * x * x); });
        return AnyState{s};
    };
    if (!perturbed) e.reference = [init = e.initial](const Grid& g, double) { return init(g); };
    return e;
}

inline Experiment example3(int case_id) {
    Experiment e;
    e.name = "example3-case" + std::to_string(case_id);
    e.description = case_id == 1 ? "supercritical flow over a bump" : "subcritical flow over a bump";
    e.model = SaintVenant{};
    e.x_min = 0.0;
    e.x_max = 25.0;
    e.cells = 100;
    e.bc = detail::ex3_boundary(case_id);
    e.controls.t_final = 500.0;
    e.settings.record_every = 200;
    e.bathymetry = shapes::parabolic_bump;
    e.initial = [](const Grid& g) {
        return project<2>(g, {[](double x) { return 2.0 - shapes::parabolic_bump(x); }, [](double) { return 0.0; }},
                          shapes::parabolic_bump);
    };
    e.reference = [case_id](const Grid& g, double) {
        const auto steady = analytic_moving_steady(case_id);
        const ScalarFn h = [steady](double x) { return steady.depth(shapes::parabolic_bump(x)); };
        const ScalarFn q = [steady](double) { return steady.q; };
        return AnyState{exact_state<2>(g, {h, q}, shapes::parabolic_bump)};
    };
    return e;
}

/// Example 4 variants: "converge" runs Example 3 with friction, "hold" starts
/// from the prepared equilibrium, "perturbed" adds a bump to it.
inline Experiment example4(int case_id, const std::string& variant = "converge") {
    Experiment e = example3(case_id);
    e.name = "example4-case" + std::to_string(case_id) + (variant == "converge" ? "" : "-" + variant);
    e.model = SaintVenant{9.812, 0.05};
    e.reference = {};
    if (variant == "converge") {
        e.description = "moving water with Manning friction";
        return e;
    }
    if (variant != "hold" && variant != "perturbed")
        throw std::invalid_argument("example4: unknown variant '" + variant + "'");
    const SaintVenant model{9.812, 0.05};
    auto prepare = [case_id, model](const Grid& g) {
        return newton_recover_h(model, g, detail::ex4_spec(case_id)).state;
    };
    e.boundary_from_initial = [case_id](const AnyState& s) {
        return detail::ex4_hold_boundary(case_id, std::get<SolutionState<2>>(s));
    };
    if (variant == "hold") {
        e.description = "prepared discrete frictional equilibrium";
        e.controls.t_final = 1000.0;
        e.initial = [prepare](const Grid& g) { return AnyState{prepare(g)}; };
        e.reference = [prepare](const Grid& g, double) { return AnyState{prepare(g)}; };
    } else {
        e.description = "small perturbation of a frictional equilibrium";
        e.controls.t_final = case_id == 1 ? 1.0 : 1.5;
        e.settings.snapshot_times = {e.controls.t_final};
        e.initial = [prepare](const Grid& g) {
            auto s = prepare(g);
            detail::add_height_perturbation(s, g, [](double x) { return 1e-3 * std::exp(-80.0 * (x - 6.0) * (x - 6.0)); });
            return AnyState{s};
        };
        e.reference = [prepare](const Grid& g, double) { return AnyState{prepare(g)}; };
    }
    return e;
}

inline Experiment example5(int test) {
    Experiment e;
    e.name = "example5-test" + std::to_string(test);
    e.model = SaintVenant{};
    e.cells = 250;
    e.bc = BoundaryCondition::extrapolation();
    e.controls.t_final = 12.0;
    e.settings.snapshot_times = {4.0, 8.0, 12.0};
    if (test == 1) {
        e.description = "dam break onto a dry bed";
        e.x_min = -300.0;
        e.x_max = 300.0;
        e.initial = [](const Grid& g) {
            return project<2>(g, {[](double x) { return x <= 0.0 ? 10.0 : 0.0; }, [](double) { return 0.0; }},
                              [](double) { return 0.0; });
        };
    } else if (test == 2) {
        e.description = "Riemann problem with a strong right-moving state";
        e.x_min = -200.0;
        e.x_max = 400.0;
        e.initial = [](const Grid& g) {
            return project<2>(g, {[](double x) { return x <= 0.0 ? 5.0 : 10.0; },
                                  [](double x) { return x <= 0.0 ? 0.0 : 400.0; }},
                              [](double) { return 0.0; });
        };
    } else {
        throw std::invalid_argument("example5: test must be 1 or 2");
    }
    return e;
}

inline Experiment example6() {
    Experiment e;
    e.name = "example6";
    e.description = "dam break over two bumps";
    e.model = SaintVenant{1.0, 0.0};
    e.x_min = -1.0;
    e.x_max = 1.0;
    e.cells = 300;
    e.bc = BoundaryCondition::extrapolation();
    e.controls.t_final = 0.3;
    e.settings.snapshot_times = {0.3};
    e.bathymetry = shapes::twin_bumps;
    e.initial = [](const Grid& g) {
        return project<2>(g, {[](double x) { return x < 0.0 ? 5.0 - shapes::twin_bumps(x) : 1.0; },
                              [](double) { return 0.0; }},
                          shapes::twin_bumps);
    };
    return e;
}

inline Experiment example7() {
    Experiment e;
    e.name = "example7";
    e.description = "oscillation in a parabolic bowl";
    const ParabolicBowl bowl{};
    e.model = SaintVenant{bowl.g, 0.0};
    e.x_min = -5000.0;
    e.x_max = 5000.0;
    e.cells = 250;
    e.bc = BoundaryCondition::extrapolation();
    e.controls.t_final = 6000.0;
    e.settings.snapshot_times = {1500.0, 3000.0, 4500.0, 6000.0};
    e.bathymetry = [bowl](double x) { return bowl.bathymetry(x); };
    e.initial = [bowl](const Grid& g) {
        return project<2>(g, {[bowl](double x) { return bowl.height(x, 0.0); }, [](double) { return 0.0; }},
                          [bowl](double x) { return bowl.bathymetry(x); });
    };
    e.reference = [bowl](const Grid& g, double t) {
        const ScalarFn h = [bowl, t](double x) { return bowl.height(x, t); };
        const ScalarFn hu = [bowl, t](double x) { return bowl.height(x, t) * bowl.velocity(t); };
        return AnyState{exact_state<2>(g, {h, hu}, [bowl](double x) { return bowl.bathymetry(x); })};
    };
    return e;
}

inline Experiment example8() {
    Experiment e;
    e.name = "example8";
    e.description = "moving water with Coriolis forcing";
    e.model = RotatingShallowWater{9.812, 2.0 * shapes::pi / 50.0, 0.01};
    e.x_min = 0.0;
    e.x_max = 25.0;
    e.cells = 100;
    e.bc = {BoundarySide::fixed({{1, 0.18}, {2, 0.0}}), BoundarySide::fixed({{0, 0.33}})};
    e.controls.t_final = 1000.0;
    e.settings.record_every = 200;
    e.bathymetry = shapes::parabolic_bump;
    e.initial = [](const Grid& g) {
        return project<3>(g, {[](double) { return 0.33; }, [](double) { return 0.0; }, [](double) { return 0.0; }},
                          shapes::parabolic_bump);
    };
    return e;
}

inline EquilibriumSpec geostrophic_spec(int example) {
    EquilibriumSpec sp;
    sp.G2 = 2.0;
    if (example == 9) {
        sp.transverse_velocity = [](double x) { return 2.0 * 1.0 / 10.0 * x * std::exp(-x * x); };
    } else {
        sp.transverse_velocity = [](double x) { return 0.05 * std::sin(2.0 * shapes::pi * x); };
        sp.bathymetry = shapes::cosine_bump;
    }
    return sp;
}

inline Experiment geostrophic(int example, bool perturbed = false) {
    Experiment e;
    e.name = "example" + std::to_string(example) + (perturbed ? "-perturbed" : "");
    e.description = example == 9 ? "geostrophic equilibrium over a flat bottom"
                                  : "geostrophic equilibrium over a bump";
    const RotatingShallowWater model{1.0, 10.0, 0.0};
    e.model = model;
    if (example == 9) {
        e.x_min = -10.0;
        e.x_max = 10.0;
        e.cells = 50;
        e.controls.t_final = 100.0;
    } else {
        e.x_min = 0.0;
        e.x_max = 1.0;
        e.cells = 20;
        e.controls.t_final = 20.0;
        e.bathymetry = shapes::cosine_bump;
    }
    e.bc = BoundaryCondition::extrapolation();
    auto prepare = [model, example](const Grid& g) { return newton_recover_h(model, g, geostrophic_spec(example)).state; };
    e.reference = [prepare](const Grid& g, double) { return AnyState{prepare(g)}; };
    if (!perturbed) {
        e.initial = [prepare](const Grid& g) { return AnyState{prepare(g)}; };
        return e;
    }
    const double center = example == 9 ? 0.0 : 0.55;
    e.controls.t_final = 0.2;
    e.settings.snapshot_times = {0.0, 0.1, 0.2};
    e.initial = [prepare, center](const Grid& g) {
        auto s = prepare(g);
        detail::add_height_perturbation(s, g, [center](double x) {
            return 1e-3 * std::exp(-200.0 * (x - center) * (x - center));
        });
        return AnyState{s};
    };
    return e;
}

/// Rossby adjustment of a jet; 4000 cells by default, 20000 with `full`.
inline Experiment example11(bool full = false) {
    Experiment e;
    e.name = "example11";
    e.description = "Rossby adjustment in an open domain";
    e.model = RotatingShallowWater{1.0, 1.0, 0.0};
    e.x_min = -10.0;
    e.x_max = 10.0;
    e.cells = full ? 20000 : 4000;
    e.bc = BoundaryCondition::extrapolation();
    e.controls.t_final = 2.0 * shapes::pi;
    e.settings.snapshot_times = detail::evenly(e.controls.t_final, 4);
    e.initial = [](const Grid& g) {
        return project<3>(g, {[](double) { return 1.0; }, [](double) { return 0.0; },
                              [](double x) { return 2.0 * shapes::jet_profile(x); }},
                          [](double) { return 0.0; });
    };
    return e;
}

inline const std::vector<std::string>& example_names() {
    static const std::vector<std::string> names = {
        "example1",          "example2",          "example2-perturbed", "example3-case1",
        "example3-case2",    "example4-case1",    "example4-case2",     "example4-case1-hold",
        "example4-case2-hold", "example4-case1-perturbed", "example4-case2-perturbed", "example5-test1",
        "example5-test2",    "example6",          "example7",           "example8",
        "example9",          "example10",         "example10-perturbed", "example11"};
    return names;
}

inline Experiment make_example(const std::string& name) {
    if (name == "example1") return example1();
    if (name == "example2") return example2(false);
    if (name == "example2-perturbed") return example2(true);
    if (name == "example3-case1") return example3(1);
    if (name == "example3-case2") return example3(2);
    for (int c : {1, 2}) {
        const std::string base = "example4-case" + std::to_string(c);
        if (name == base) return example4(c);
        if (name == base + "-hold") return example4(c, "hold");
        if (name == base + "-perturbed") return example4(c, "perturbed");
    }
    if (name == "example5-test1") return example5(1);
    if (name == "example5-test2") return example5(2);
    if (name == "example6") return example6();
    if (name == "example7") return example7();
    if (name == "example8") return example8();
    if (name == "example9") return geostrophic(9);
    if (name == "example10") return geostrophic(10);
    if (name == "example10-perturbed") return geostrophic(10, true);
    if (name == "example11") return example11();
    throw std::invalid_argument("unknown example '" + name + "' (see list-examples)");
}

}  // namespace pampa::bench
