#pragma once

#include <algorithm>
#include <utility>

#include "pampa/models.hpp"

namespace pampa {

/// State with height h carrying the (dry-filtered) velocities of `source`.
template <std::size_t N>
StateVector<N> with_height(double h, const StateVector<N>& source) noexcept {
    StateVector<N> s;
    s[0] = h;
    for (std::size_t k = 1; k < N; ++k) s[k] = h * dry_velocity(source[0], source[k]);
    return s;
}

/// Hydrostatically reconstructed pair at an interface. `plus` lives on the
/// right of the interface, `minus` on the left.
template <std::size_t N>
struct InterfaceStates {
    StateVector<N> plus;
    StateVector<N> minus;
    double B_plus = 0.0;
    double B_minus = 0.0;
    double alpha = 0.0;
};

/// Generic reconstruction between a right state (bottom B_right) and a left
/// state (bottom B_left); used at nodes with the two cell averages and at
/// quarter points with a node value and an average.
template <ShallowWaterModel M>
InterfaceStates<M::kVars> hydrostatic_pair(const M& model, const typename M::State& right, double B_right,
                                           const typename M::State& left, double B_left) noexcept {
    InterfaceStates<M::kVars> r;
    const double b_max = std::max(B_right, B_left);
    const double w_right = right[0] + B_right;
    const double w_left = left[0] + B_left;
    r.B_plus = std::min(w_right, b_max);
    r.B_minus = std::min(w_left, b_max);
    r.plus = with_height(w_right - r.B_plus, right);
    r.minus = with_height(w_left - r.B_minus, left);
    r.alpha = std::max({model.max_wave_speed(r.plus), model.max_wave_speed(r.minus), model.max_wave_speed(right),
                        model.max_wave_speed(left)});
    return r;
}

/// Node j between the cell averages on its left and right.
template <ShallowWaterModel M>
InterfaceStates<M::kVars> hydrostatic_interface(const M& model, const typename M::State& avg_left,
                                                const typename M::State& avg_right, double Bbar_left,
                                                double Bbar_right) noexcept {
    return hydrostatic_pair(model, avg_right, Bbar_right, avg_left, Bbar_left);
}

/// x_j + dx/4: node value on the left, average of the cell on the right.
template <ShallowWaterModel M>
InterfaceStates<M::kVars> quarter_states_right_of_node(const M& model, const typename M::State& node, double B_node,
                                                       const typename M::State& avg, double Bbar) noexcept {
    return hydrostatic_pair(model, avg, Bbar, node, B_node);
}

/// x_j - dx/4: average of the cell on the left, node value on the right.
template <ShallowWaterModel M>
InterfaceStates<M::kVars> quarter_states_left_of_node(const M& model, const typename M::State& node, double B_node,
                                                      const typename M::State& avg, double Bbar) noexcept {
    return hydrostatic_pair(model, node, B_node, avg, Bbar);
}

template <ShallowWaterModel M>
typename M::State llf_flux(const M& model, const typename M::State& u_plus, const typename M::State& u_minus,
                           double alpha) noexcept {
    return 0.5 * (model.flux(u_plus) + model.flux(u_minus)) - (0.5 * alpha) * (u_plus - u_minus);
}

/// Two-point approximation of the source integral from state a to state b:
/// -g <h> [B] for the topography plus a trapezoidal rule for the rest.
template <ShallowWaterModel M>
typename M::State segment_source(const M& model, const typename M::State& a, double xa, double Ba,
                                 const typename M::State& b, double xb, double Bb) noexcept {
    auto s = (0.5 * (xb - xa)) * (model.source_without_slope(a, xa) + model.source_without_slope(b, xb));
    s[1] -= model.g * 0.5 * (a[0] + b[0]) * (Bb - Ba);
    return s;
}

template <std::size_t N>
struct CellFluxPair {
    StateVector<N> left;   ///< G~ at the left node, as seen by this cell
    StateVector<N> right;  ///< G~ at the right node
};

/// Low-order global fluxes of cell [x_left, x_left + dx]. `R_half` is
/// R_{j+1/2} in whatever offset the caller uses for its high-order values.
template <ShallowWaterModel M>
CellFluxPair<M::kVars> low_order_cell_fluxes(const M& model, const InterfaceStates<M::kVars>& at_left,
                                             const InterfaceStates<M::kVars>& at_right,
                                             const typename M::State& avg, double Bbar, double x_left, double dx,
                                             const typename M::State& R_half) noexcept {
    const double x_c = x_left + 0.5 * dx;
    CellFluxPair<M::kVars> g;
    g.left = llf_flux(model, at_left.plus, at_left.minus, at_left.alpha) - R_half +
             segment_source(model, at_left.plus, x_left, at_left.B_plus, avg, x_c, Bbar);
    g.right = llf_flux(model, at_right.plus, at_right.minus, at_right.alpha) - R_half -
              segment_source(model, avg, x_c, Bbar, at_right.minus, x_left + dx, at_right.B_minus);
    return g;
}

/// Residual sent by the cell on the right of node j back to node j, as a
/// rate (already divided by dx/2).
template <ShallowWaterModel M>
typename M::State low_order_residual_to_left_node(const M& model, const typename M::State& node, double B_node,
                                                  double x_node, const InterfaceStates<M::kVars>& quarter,
                                                  double dx) noexcept {
    const auto r = llf_flux(model, quarter.plus, quarter.minus, quarter.alpha) - model.flux(node) -
                   segment_source(model, node, x_node, B_node, quarter.minus, x_node + 0.25 * dx, quarter.B_minus);
    return (2.0 / dx) * r;
}

/// Residual sent by the cell on the left of node j to node j.
template <ShallowWaterModel M>
typename M::State low_order_residual_to_right_node(const M& model, const typename M::State& node, double B_node,
                                                   double x_node, const InterfaceStates<M::kVars>& quarter,
                                                   double dx) noexcept {
    const auto r = model.flux(node) - llf_flux(model, quarter.plus, quarter.minus, quarter.alpha) -
                   segment_source(model, quarter.plus, x_node - 0.25 * dx, quarter.B_plus, node, x_node, B_node);
    return (2.0 / dx) * r;
}

template <std::size_t N>
struct PointResidualPair {
    StateVector<N> from_left;   ///< sent by cell j-1/2
    StateVector<N> from_right;  ///< sent by cell j+1/2
};

/// Both low-order residuals at node j; du_j/dt = -(from_left + from_right).
template <ShallowWaterModel M>
PointResidualPair<M::kVars> low_order_point_residuals(const M& model, const typename M::State& node, double B_node,
                                                      double x_node, const typename M::State& avg_left,
                                                      double Bbar_left, const typename M::State& avg_right,
                                                      double Bbar_right, double dx) noexcept {
    const auto ql = quarter_states_left_of_node(model, node, B_node, avg_left, Bbar_left);
    const auto qr = quarter_states_right_of_node(model, node, B_node, avg_right, Bbar_right);
    return {low_order_residual_to_right_node(model, node, B_node, x_node, ql, dx),
            low_order_residual_to_left_node(model, node, B_node, x_node, qr, dx)};
}

}  // namespace pampa
