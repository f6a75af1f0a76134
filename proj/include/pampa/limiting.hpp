#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "pampa/reconstruction.hpp"

namespace pampa {

inline constexpr double kSteadyCutoffC = 10.0;
inline constexpr int kSteadyCutoffPower = 20;
inline constexpr double kSteadyThreshold = 1e-3;

namespace detail {
inline bool negligible(double delta, double scale) noexcept {
    return std::abs(delta) <= 1e-14 * (1.0 + std::abs(scale));
}
inline double bounded_ratio(double budget, double delta) noexcept {
    return std::clamp(std::max(budget, 0.0) / std::abs(delta), 0.0, 1.0);
}
}  // namespace detail

/**
 * @brief Flux blending coefficient at node j.
 *
 * @param dG1      mass component of G_j - G~_j
 * @param G1       mass component of G_j, only used to scale the zero test
 * @param h_plus   reconstructed height on the right of the node
 * @param u_right  velocity of the right cell average
 * @param h_minus  reconstructed height on the left
 * @param u_left   velocity of the left cell average
 */
inline double theta_flux(double dG1, double G1, double h_plus, double u_right, double h_minus, double u_left,
                         double alpha) noexcept {
    if (detail::negligible(dG1, G1)) return 1.0;
    const double a = 0.5 * h_plus * (alpha - u_right);
    const double b = 0.5 * h_minus * (alpha + u_left);
    return std::min(detail::bounded_ratio(a, dG1), detail::bounded_ratio(b, dG1));
}

/// Residual blending bound for the residual a cell sends to its right node.
/// `h_cell` is the cell-side quarter height, `u_cell` the cell average
/// velocity, `d_phi1` the mass component of the residual difference as a
/// rate, so it is scaled back by dx/2.
inline double theta_residual_to_right_node(double d_phi1, double phi1, double h_cell, double u_cell, double alpha,
                                           double dx) noexcept {
    const double scaled = 0.5 * dx * d_phi1;
    if (detail::negligible(scaled, 0.5 * dx * phi1)) return 1.0;
    return detail::bounded_ratio(0.5 * h_cell * (alpha + u_cell), scaled);
}

/// Same for the residual a cell sends to its left node.
inline double theta_residual_to_left_node(double d_phi1, double phi1, double h_cell, double u_cell, double alpha,
                                          double dx) noexcept {
    const double scaled = 0.5 * dx * d_phi1;
    if (detail::negligible(scaled, 0.5 * dx * phi1)) return 1.0;
    return detail::bounded_ratio(0.5 * h_cell * (alpha - u_cell), scaled);
}

/// H(phi) = (C phi)^k / (1 + (C phi)^k).
inline double cutoff_function(double phi) noexcept {
    const double x = std::pow(kSteadyCutoffC * std::abs(phi), kSteadyCutoffPower);
    if (!std::isfinite(x)) return 1.0;
    return x / (1.0 + x);
}

/// Steady-state indicator of one cell from the momentum component of G at
/// its two nodes and midpoint (any common offset in G is the caller's).
inline double steady_indicator(double G_left, double G_mid, double G_right, double dx, double domain_length) noexcept {
    const double scale = std::max({std::abs(G_left), std::abs(G_mid), std::abs(G_right)});
    if (scale <= 1e-14) return 0.0;
    const double phi = (G_right - G_left) / dx * domain_length / scale;
    return cutoff_function(phi);
}

/// sigma_{j+1/2} for every cell from the unlimited quadratic height. The
/// dx^m factors cancel against the derivatives, so jumps are taken in xi.
inline std::vector<double> oscillation_sigma(const std::vector<double>& h_points, const std::vector<double>& h_avgs,
                                             bool periodic) {
    const std::size_t n = h_avgs.size();
    std::vector<double> sigma(n, 0.0);
    if (n == 0) return sigma;

    double mean = 0.0;
    for (double a : h_avgs) mean += a;
    mean /= static_cast<double>(n);
    double norm = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        const ScalarCell cell{h_points[c], h_avgs[c], h_points[c + 1]};
        norm = std::max({norm, std::abs(cell.left - mean), std::abs(cell.right - mean)});
        // interior extremum of the quadratic
        const double a2 = 3.0 * (cell.left - 2.0 * cell.avg + cell.right);
        if (a2 != 0.0) {
            const double xi = (4.0 * cell.left - 6.0 * cell.avg + 2.0 * cell.right) / (2.0 * a2);
            if (xi > 0.0 && xi < 1.0) norm = std::max(norm, std::abs(cell.evaluate(xi) - mean));
        }
    }
    if (norm <= 1e-14 * (1.0 + std::abs(mean))) return sigma;

    // scaled jumps dx^m [d^m h] at node j, m = 1, 2 (m = 0 vanishes by continuity)
    std::vector<double> jump(n + 1, 0.0);
    auto node_jump = [&](std::size_t cl, std::size_t cr) {
        const ScalarCell l{h_points[cl], h_avgs[cl], h_points[cl + 1]};
        const ScalarCell r{h_points[cr], h_avgs[cr], h_points[cr + 1]};
        const double j0 = std::abs(l.right - r.left);
        const double j1 = std::abs((2.0 * l.left - 6.0 * l.avg + 4.0 * l.right) -
                                   (-4.0 * r.left + 6.0 * r.avg - 2.0 * r.right));
        const double j2 = std::abs((6.0 * l.left - 12.0 * l.avg + 6.0 * l.right) -
                                   (6.0 * r.left - 12.0 * r.avg + 6.0 * r.right));
        return j0 + j1 + j2;
    };
    for (std::size_t j = 1; j < n; ++j) jump[j] = node_jump(j - 1, j);
    if (periodic) {
        jump[0] = node_jump(n - 1, 0);
        jump[n] = jump[0];
    }
    for (std::size_t c = 0; c < n; ++c) sigma[c] = (jump[c] + jump[c + 1]) / (2.0 * norm);
    return sigma;
}

inline double theta_oscillation(double alpha, double dt, double dx, double sigma) noexcept {
    return std::exp(-alpha * dt * sigma / dx);
}

/// Per-node and per-cell blending coefficients after combination.
struct BlendFactors {
    std::vector<double> theta_node;
    std::vector<double> theta_cell;
    std::vector<double> theta_oe;
};

/// Node j takes the min with the OE value of both neighbouring cells, a cell
/// with its own. Cells flagged steady keep theta_oe = 1.
inline BlendFactors combine_thetas(const std::vector<double>& pp_node, const std::vector<double>& pp_cell,
                                   const std::vector<double>& oe_cell, const std::vector<bool>& steady,
                                   bool periodic) {
    const std::size_t n = pp_cell.size();
    BlendFactors b;
    b.theta_oe.resize(n);
    for (std::size_t c = 0; c < n; ++c) b.theta_oe[c] = steady[c] ? 1.0 : oe_cell[c];
    b.theta_cell.resize(n);
    for (std::size_t c = 0; c < n; ++c) b.theta_cell[c] = std::min(pp_cell[c], b.theta_oe[c]);
    b.theta_node = pp_node;
    for (std::size_t j = 0; j <= n; ++j) {
        double t = pp_node[j];
        if (j > 0) t = std::min(t, b.theta_oe[j - 1]);
        if (j < n) t = std::min(t, b.theta_oe[j]);
        if (periodic && (j == 0 || j == n)) t = std::min({t, b.theta_oe[0], b.theta_oe[n - 1]});
        b.theta_node[j] = t;
    }
    return b;
}

}  // namespace pampa
