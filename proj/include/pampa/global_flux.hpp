#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pampa/grid.hpp"
#include "pampa/models.hpp"
#include "pampa/reconstruction.hpp"

namespace pampa {

enum class Quadrature { sc_lobatto3, lobatto3a };

inline std::string_view to_string(Quadrature q) noexcept {
    return q == Quadrature::sc_lobatto3 ? "scIII" : "IIIA";
}

inline Quadrature parse_quadrature(std::string_view s) {
    if (s == "scIII" || s == "sc_lobatto3" || s == "sc-LobattoIII") return Quadrature::sc_lobatto3;
    if (s == "IIIA" || s == "lobatto3a" || s == "LobattoIIIA") return Quadrature::lobatto3a;
    throw std::invalid_argument("unknown quadrature '" + std::string(s) + "'");
}

/// R_{j+1/2} - R_j and R_{j+1} - R_j of one cell.
template <std::size_t N>
struct SourceIncrements {
    StateVector<N> half;
    StateVector<N> full;
};

/// Everything the scheme needs from the in-cell representation.
template <std::size_t N>
struct CellQuadrature {
    StateVector<N> mid;      ///< PP-limited midpoint
    StateVector<N> quarter;  ///< PP-limited value at x_j + dx/4
    SourceIncrements<N> inc;
};

template <ShallowWaterModel M>
SourceIncrements<M::kVars> increments_lobatto3a(const M& model, const CellRepresentation<M::kVars>& u,
                                                const typename M::State& mid, const ScalarCell& bathy,
                                                double x_left, double dx) {
    const auto s0 = model.source(u.left, x_left, bathy.slope(0.0, dx));
    const auto sm = model.source(mid, x_left + 0.5 * dx, bathy.slope(0.5, dx));
    const auto s1 = model.source(u.right, x_left + dx, bathy.slope(1.0, dx));
    return {dx * ((5.0 / 24.0) * s0 + (1.0 / 3.0) * sm - (1.0 / 24.0) * s1),
            dx * ((1.0 / 6.0) * s0 + (2.0 / 3.0) * sm + (1.0 / 6.0) * s1)};
}

template <ShallowWaterModel M>
SourceIncrements<M::kVars> increments_sc_lobatto3(const M& model, const CellRepresentation<M::kVars>& u,
                                                  const typename M::State& mid, const typename M::State& quarter,
                                                  const ScalarCell& bathy, double x_left, double dx) {
    const auto s0 = model.source(u.left, x_left, bathy.slope(0.0, dx));
    const auto sq = model.source(quarter, x_left + 0.25 * dx, bathy.slope(0.25, dx));
    const auto sm = model.source(mid, x_left + 0.5 * dx, bathy.slope(0.5, dx));
    const auto s1 = model.source(u.right, x_left + dx, bathy.slope(1.0, dx));
    return {dx * ((1.0 / 12.0) * s0 + (1.0 / 3.0) * sq + (1.0 / 12.0) * sm),
            dx * ((1.0 / 6.0) * s0 + (2.0 / 3.0) * sm + (1.0 / 6.0) * s1)};
}

template <ShallowWaterModel M>
CellQuadrature<M::kVars> cell_quadrature(const M& model, const CellRepresentation<M::kVars>& u,
                                         const ScalarCell& bathy, double x_left, double dx, Quadrature quad) {
    CellQuadrature<M::kVars> q;
    q.mid = pp_scale_midpoint(u).state;
    q.quarter = quarter_point(u);
    q.inc = quad == Quadrature::sc_lobatto3 ? increments_sc_lobatto3(model, u, q.mid, q.quarter, bathy, x_left, dx)
                                            : increments_lobatto3a(model, u, q.mid, bathy, x_left, dx);
    return q;
}

template <std::size_t N>
CellRepresentation<N> cell_of(const SolutionState<N>& s, std::size_t c) noexcept {
    return {s.points[c], s.averages[c], s.points[c + 1]};
}

inline ScalarCell bathy_cell_of(const std::vector<double>& points, const std::vector<double>& averages,
                                std::size_t c) noexcept {
    return {points[c], averages[c], points[c + 1]};
}

/// R and G = f(u) - R at nodes and midpoints, with R_0 = 0.
template <std::size_t N>
struct GlobalFluxField {
    std::vector<StateVector<N>> G_nodes;
    std::vector<StateVector<N>> G_mid;
    std::vector<StateVector<N>> R_nodes;
    std::vector<StateVector<N>> R_mid;
};

template <ShallowWaterModel M>
GlobalFluxField<M::kVars> assemble_global_flux(const M& model, const Grid& grid, const SolutionState<M::kVars>& s,
                                               Quadrature quad) {
    const std::size_t n = grid.n_cells;
    GlobalFluxField<M::kVars> out;
    out.G_nodes.resize(n + 1);
    out.G_mid.resize(n);
    out.R_nodes.resize(n + 1);
    out.R_mid.resize(n);
    out.G_nodes[0] = model.flux(s.points[0]);
    for (std::size_t c = 0; c < n; ++c) {
        const auto q = cell_quadrature(model, cell_of(s, c), bathy_cell_of(s.bathy_points, s.bathy_averages, c),
                                       grid.node(c), grid.dx, quad);
        out.R_mid[c] = out.R_nodes[c] + q.inc.half;
        out.R_nodes[c + 1] = out.R_nodes[c] + q.inc.full;
        out.G_mid[c] = model.flux(q.mid) - out.R_mid[c];
        out.G_nodes[c + 1] = model.flux(s.points[c + 1]) - out.R_nodes[c + 1];
    }
    return out;
}

/// max - min of component k of G over all nodes and midpoints.
template <std::size_t N>
double global_flux_spread(const GlobalFluxField<N>& f, std::size_t k) noexcept {
    double lo = f.G_nodes[0][k], hi = lo;
    for (const auto& g : f.G_nodes) {
        lo = std::min(lo, g[k]);
        hi = std::max(hi, g[k]);
    }
    for (const auto& g : f.G_mid) {
        lo = std::min(lo, g[k]);
        hi = std::max(hi, g[k]);
    }
    return hi - lo;
}

}  // namespace pampa
