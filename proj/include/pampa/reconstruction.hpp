#pragma once

#include <algorithm>
#include <array>
#include <stdexcept>

#include "pampa/state.hpp"

namespace pampa {

/// Values of (phi_left, phi_bar, phi_right) at local coordinate xi in [0, 1].
inline std::array<double, 3> basis_eval(double xi) {
    if (!(xi >= 0.0 && xi <= 1.0)) throw std::invalid_argument("basis_eval: xi outside [0, 1]");
    return {(1.0 - xi) * (1.0 - 3.0 * xi), 6.0 * xi * (1.0 - xi), xi * (3.0 * xi - 2.0)};
}

/// d/dxi of the basis; divide by dx for the physical derivative.
inline std::array<double, 3> basis_derivative(double xi) noexcept {
    return {-4.0 + 6.0 * xi, 6.0 - 12.0 * xi, 6.0 * xi - 2.0};
}

/// Second derivative in xi, constant over the cell.
inline constexpr std::array<double, 3> basis_second_derivative() noexcept { return {6.0, -12.0, 6.0}; }

/// Quadratic representation of one cell from its two point values and its average.
template <std::size_t N>
struct CellRepresentation {
    StateVector<N> left;
    StateVector<N> avg;
    StateVector<N> right;

    StateVector<N> evaluate(double xi) const {
        const auto p = basis_eval(xi);
        return p[0] * left + p[1] * avg + p[2] * right;
    }
};

/// Same layout for a scalar field such as the bathymetry.
struct ScalarCell {
    double left = 0.0;
    double avg = 0.0;
    double right = 0.0;

    double evaluate(double xi) const {
        const auto p = basis_eval(xi);
        return p[0] * left + p[1] * avg + p[2] * right;
    }
    /// Physical slope at xi.
    double slope(double xi, double dx) const noexcept {
        const auto d = basis_derivative(xi);
        return (d[0] * left + d[1] * avg + d[2] * right) / dx;
    }
    double curvature(double dx) const noexcept {
        const auto d = basis_second_derivative();
        return (d[0] * left + d[1] * avg + d[2] * right) / (dx * dx);
    }
};

template <std::size_t N>
StateVector<N> midpoint_unlimited(const CellRepresentation<N>& c) noexcept {
    return 1.5 * c.avg - 0.25 * (c.left + c.right);
}

template <std::size_t N>
StateVector<N> quarter_unlimited(const CellRepresentation<N>& c) noexcept {
    return (3.0 / 16.0) * c.left + (9.0 / 8.0) * c.avg - (5.0 / 16.0) * c.right;
}

inline constexpr double kPositivityFloor = 1e-13;

template <std::size_t N>
struct LimitedState {
    StateVector<N> state;
    double eta = 1.0;
};

/// Pulls `target` toward the cell average until its height is at least
/// eps = min(1e-13, h_avg). Only the height decides eta.
template <std::size_t N>
LimitedState<N> scale_toward_average(const StateVector<N>& avg, const StateVector<N>& target) noexcept {
    const double h_avg = avg[0];
    const double eps = std::min(kPositivityFloor, std::max(h_avg, 0.0));
    if (target[0] >= eps) return {target, 1.0};
    const double denom = h_avg - target[0];
    if (!(denom > 0.0)) return {target, 1.0};
    const double eta = std::clamp((h_avg - eps) / denom, 0.0, 1.0);
    return {(1.0 - eta) * avg + eta * target, eta};
}

template <std::size_t N>
LimitedState<N> pp_scale_midpoint(const CellRepresentation<N>& c) noexcept {
    return scale_toward_average(c.avg, midpoint_unlimited(c));
}

template <std::size_t N>
StateVector<N> quarter_point(const CellRepresentation<N>& c) noexcept {
    return scale_toward_average(c.avg, quarter_unlimited(c)).state;
}

}  // namespace pampa
