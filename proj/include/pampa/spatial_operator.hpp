#pragma once

#include <algorithm>
#include <string_view>
#include <vector>

#include "pampa/global_flux.hpp"
#include "pampa/grid.hpp"
#include "pampa/high_order.hpp"
#include "pampa/limiting.hpp"
#include "pampa/low_order.hpp"

namespace pampa {

enum class SchemeOrder { high_blended, low_only, high_unlimited };

inline std::string_view to_string(SchemeOrder o) noexcept {
    switch (o) {
        case SchemeOrder::high_blended: return "high";
        case SchemeOrder::low_only: return "low";
        case SchemeOrder::high_unlimited: return "high_unlimited";
    }
    return "?";
}

inline SchemeOrder parse_order(std::string_view s) {
    if (s == "high" || s == "high_blended") return SchemeOrder::high_blended;
    if (s == "low" || s == "low_only") return SchemeOrder::low_only;
    if (s == "high_unlimited") return SchemeOrder::high_unlimited;
    throw std::invalid_argument("unknown scheme order '" + std::string(s) + "'");
}

struct OperatorOptions {
    Quadrature quadrature = Quadrature::sc_lobatto3;
    SchemeOrder order = SchemeOrder::high_blended;
};

/// Time derivatives of all degrees of freedom plus the blending used.
template <std::size_t N>
struct StageRates {
    std::vector<StateVector<N>> d_avg;
    std::vector<StateVector<N>> d_points;
    BlendFactors blend;
    std::vector<double> steady_indicator;
};

namespace detail {

template <std::size_t N>
struct CellWork {
    CellRepresentation<N> u;
    ScalarCell B;
    double x_left = 0.0;
    CellQuadrature<N> q;
    StateVector<N> G_left, G_mid, G_right;  ///< offset so that R = 0 at the left node
    InterfaceStates<N> quarter_left;        ///< at x_left + dx/4
    InterfaceStates<N> quarter_right;       ///< at x_left + 3dx/4
    StateVector<N> low_to_left, low_to_right;
    StateVector<N> high_to_left, high_to_right;
    double theta_pp = 1.0;
};

template <ShallowWaterModel M>
void fill_cell(CellWork<M::kVars>& w, const M& model, double dx, Quadrature quad, bool zero_source) {
    w.q = cell_quadrature(model, w.u, w.B, w.x_left, dx, quad);
    if (zero_source) w.q.inc = {};
    w.G_left = model.flux(w.u.left);
    w.G_mid = model.flux(w.q.mid) - w.q.inc.half;
    w.G_right = model.flux(w.u.right) - w.q.inc.full;

    const double x_right = w.x_left + dx;
    w.quarter_left = quarter_states_right_of_node(model, w.u.left, w.B.left, w.u.avg, w.B.avg);
    w.quarter_right = quarter_states_left_of_node(model, w.u.right, w.B.right, w.u.avg, w.B.avg);
    w.low_to_left = low_order_residual_to_left_node(model, w.u.left, w.B.left, w.x_left, w.quarter_left, dx);
    w.low_to_right = low_order_residual_to_right_node(model, w.u.right, w.B.right, x_right, w.quarter_right, dx);

    const auto s_left = sign_matrices(w.u.left, model);
    w.high_to_left = s_left ? s_left->minus * right_biased_derivative(w.G_left, w.G_mid, w.G_right, dx) : w.low_to_left;
    const auto s_right = sign_matrices(w.u.right, model);
    w.high_to_right =
        s_right ? s_right->plus * left_biased_derivative(w.G_left, w.G_mid, w.G_right, dx) : w.low_to_right;
}

template <std::size_t N>
void residual_theta(CellWork<N>& w, double dx) {
    const double u_cell = dry_velocity(w.u.avg[0], w.u.avg[1]);
    const double t_left = theta_residual_to_left_node(w.high_to_left[0] - w.low_to_left[0], w.high_to_left[0],
                                                      w.quarter_left.plus[0], u_cell, w.quarter_left.alpha, dx);
    const double t_right = theta_residual_to_right_node(w.high_to_right[0] - w.low_to_right[0], w.high_to_right[0],
                                                        w.quarter_right.minus[0], u_cell, w.quarter_right.alpha, dx);
    w.theta_pp = std::min(t_left, t_right);
}

template <std::size_t N>
StateVector<N> blend(double theta, const StateVector<N>& high, const StateVector<N>& low) noexcept {
    return theta * high + (1.0 - theta) * low;
}

}  // namespace detail

/**
 * @brief Semi-discrete right-hand side for averages and point values.
 *
 * @param dt  step used by the oscillation-elimination factor; ignored unless
 *            the blended scheme is selected.
 */
template <ShallowWaterModel M>
StageRates<M::kVars> compute_rates(const M& model, const Grid& grid, const SolutionState<M::kVars>& state,
                                   const BoundaryCondition& bc, const OperatorOptions& opt, double dt) {
    constexpr std::size_t N = M::kVars;
    const std::size_t n = grid.n_cells;
    const double dx = grid.dx;
    if (!state.consistent_with(grid)) throw std::invalid_argument("compute_rates: state does not match grid");
    const auto ext = apply_boundary(state, bc);
    const bool periodic = ext.periodic;

    // extended cell k covers extended nodes k and k + 1; k = c + 1 for physical cell c
    std::vector<detail::CellWork<N>> cells(n + 2);
    auto load = [&](std::size_t k) {
        auto& w = cells[k];
        w.u = {ext.points[k], ext.averages[k], ext.points[k + 1]};
        w.B = {ext.bathy_points[k], ext.bathy_averages[k], ext.bathy_points[k + 1]};
        w.x_left = grid.at(static_cast<double>(k) - 1.0);
    };
    for (std::size_t k = 1; k <= n; ++k) {
        load(k);
        detail::fill_cell(cells[k], model, dx, opt.quadrature, false);
    }
    if (periodic) {
        cells[0] = cells[n];
        cells[n + 1] = cells[1];
    } else {
        for (std::size_t k : {std::size_t{0}, n + 1}) {
            load(k);
            detail::fill_cell(cells[k], model, dx, opt.quadrature, true);
        }
        // no information enters from outside the domain
        cells[0].high_to_right = StateVector<N>{};
        cells[n + 1].high_to_left = StateVector<N>{};
    }

    StageRates<N> out;
    out.d_avg.resize(n);
    out.d_points.resize(n + 1);

    // node interfaces between extended cells j and j + 1 (physical node j)
    std::vector<InterfaceStates<N>> iface(n + 1);
    std::vector<double> theta_pp_node(n + 1, 1.0);
    for (std::size_t j = 0; j <= n; ++j) {
        const auto& l = cells[j];
        const auto& r = cells[j + 1];
        iface[j] = hydrostatic_interface(model, l.u.avg, r.u.avg, l.B.avg, r.B.avg);
        const auto llf = llf_flux(model, iface[j].plus, iface[j].minus, iface[j].alpha);
        const double G1 = r.G_left[0];
        theta_pp_node[j] = theta_flux(G1 - llf[0], G1, iface[j].plus[0], dry_velocity(r.u.avg[0], r.u.avg[1]),
                                      iface[j].minus[0], dry_velocity(l.u.avg[0], l.u.avg[1]), iface[j].alpha);
    }
    for (auto& w : cells) detail::residual_theta(w, dx);

    // oscillation elimination and steady-state cutoff
    std::vector<double> oe(n, 1.0);
    std::vector<bool> steady(n, true);
    out.steady_indicator.assign(n, 0.0);
    if (opt.order == SchemeOrder::high_blended) {
        std::vector<double> hp(n + 1), ha(n);
        for (std::size_t j = 0; j <= n; ++j) hp[j] = state.points[j][0];
        for (std::size_t c = 0; c < n; ++c) ha[c] = state.averages[c][0];
        const auto sigma = oscillation_sigma(hp, ha, periodic);
        double R = 0.0;  // momentum component of R with R_0 = 0
        for (std::size_t c = 0; c < n; ++c) {
            const auto& w = cells[c + 1];
            const double gl = w.G_left[1] - R;
            const double gm = w.G_mid[1] - R;
            const double gr = w.G_right[1] - R;
            R += w.q.inc.full[1];
            const double H = steady_indicator(gl, gm, gr, dx, grid.length());
            out.steady_indicator[c] = H;
            steady[c] = H <= kSteadyThreshold;
            const double alpha = std::max({model.max_wave_speed(w.u.left), model.max_wave_speed(w.u.avg),
                                           model.max_wave_speed(w.u.right)});
            oe[c] = theta_oscillation(alpha, dt, dx, sigma[c]);
        }
    }

    std::vector<double> pp_cell(n);
    for (std::size_t c = 0; c < n; ++c) pp_cell[c] = cells[c + 1].theta_pp;
    out.blend = combine_thetas(theta_pp_node, pp_cell, oe, steady, periodic);
    auto& tn = out.blend.theta_node;
    auto& tc = out.blend.theta_cell;
    double theta_ghost_left = std::min(cells[0].theta_pp, out.blend.theta_oe[periodic ? n - 1 : 0]);
    double theta_ghost_right = std::min(cells[n + 1].theta_pp, out.blend.theta_oe[periodic ? 0 : n - 1]);
    if (opt.order == SchemeOrder::low_only) {
        std::fill(tn.begin(), tn.end(), 0.0);
        std::fill(tc.begin(), tc.end(), 0.0);
        theta_ghost_left = theta_ghost_right = 0.0;
    } else if (opt.order == SchemeOrder::high_unlimited) {
        std::fill(tn.begin(), tn.end(), 1.0);
        std::fill(tc.begin(), tc.end(), 1.0);
        theta_ghost_left = theta_ghost_right = 1.0;
    }
    if (periodic) {
        theta_ghost_left = tc[n - 1];
        theta_ghost_right = tc[0];
    }

    for (std::size_t c = 0; c < n; ++c) {
        const auto& w = cells[c + 1];
        const auto low = low_order_cell_fluxes(model, iface[c], iface[c + 1], w.u.avg, w.B.avg, w.x_left, dx,
                                               w.q.inc.half);
        const auto g_left = detail::blend(tn[c], w.G_left, low.left);
        const auto g_right = detail::blend(tn[c + 1], w.G_right, low.right);
        out.d_avg[c] = (-1.0 / dx) * (g_right - g_left);
    }

    auto cell_theta = [&](std::size_t k) {
        if (k == 0) return theta_ghost_left;
        if (k == n + 1) return theta_ghost_right;
        return tc[k - 1];
    };
    for (std::size_t j = 0; j <= n; ++j) {
        const auto& l = cells[j];
        const auto& r = cells[j + 1];
        const auto from_left = detail::blend(cell_theta(j), l.high_to_right, l.low_to_right);
        const auto from_right = detail::blend(cell_theta(j + 1), r.high_to_left, r.low_to_left);
        out.d_points[j] = -(from_left + from_right);
    }
    if (periodic) out.d_points[n] = out.d_points[0];
    return out;
}

}  // namespace pampa
