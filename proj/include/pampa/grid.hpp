#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pampa/state.hpp"

namespace pampa {

/// Uniform 1-D mesh; cell c spans [x_c, x_{c+1}].
struct Grid {
    double x_min = 0.0;
    double x_max = 1.0;
    std::size_t n_cells = 0;
    double dx = 0.0;

    double node(std::size_t j) const noexcept { return x_min + static_cast<double>(j) * dx; }
    /// Coordinate at fractional node index, e.g. 0.25 for the first quarter point.
    double at(double index) const noexcept { return x_min + index * dx; }
    double center(std::size_t c) const noexcept { return x_min + (static_cast<double>(c) + 0.5) * dx; }
    double length() const noexcept { return x_max - x_min; }
    std::size_t n_nodes() const noexcept { return n_cells + 1; }
};

inline Grid make_grid(double x_min, double x_max, std::size_t n_cells) {
    if (n_cells < 2) throw std::invalid_argument("make_grid: need at least two cells");
    if (!(x_max > x_min)) throw std::invalid_argument("make_grid: x_max must exceed x_min");
    return Grid{x_min, x_max, n_cells, (x_max - x_min) / static_cast<double>(n_cells)};
}

/// Point values at nodes, cell averages, and the bathymetry degrees of freedom.
template <std::size_t N>
struct SolutionState {
    std::vector<StateVector<N>> points;
    std::vector<StateVector<N>> averages;
    std::vector<double> bathy_points;
    std::vector<double> bathy_averages;

    std::size_t n_cells() const noexcept { return averages.size(); }

    bool consistent_with(const Grid& grid) const noexcept {
        return averages.size() == grid.n_cells && points.size() == grid.n_cells + 1 &&
               bathy_averages.size() == grid.n_cells && bathy_points.size() == grid.n_cells + 1;
    }
};

enum class BoundaryKind { periodic, extrapolation, dirichlet };

/// Boundary prescription at one end. Dirichlet entries are (field index, value);
/// fields not listed are extrapolated.
struct BoundarySide {
    BoundaryKind kind = BoundaryKind::extrapolation;
    std::vector<std::pair<std::size_t, double>> dirichlet;

    static BoundarySide periodic() { return {BoundaryKind::periodic, {}}; }
    static BoundarySide extrapolation() { return {BoundaryKind::extrapolation, {}}; }
    static BoundarySide fixed(std::vector<std::pair<std::size_t, double>> values) {
        return {BoundaryKind::dirichlet, std::move(values)};
    }
};

struct BoundaryCondition {
    BoundarySide left;
    BoundarySide right;

    static BoundaryCondition periodic() { return {BoundarySide::periodic(), BoundarySide::periodic()}; }
    static BoundaryCondition extrapolation() {
        return {BoundarySide::extrapolation(), BoundarySide::extrapolation()};
    }

    bool is_periodic() const noexcept { return left.kind == BoundaryKind::periodic; }

    template <std::size_t N>
    void validate() const {
        if ((left.kind == BoundaryKind::periodic) != (right.kind == BoundaryKind::periodic))
            throw std::invalid_argument("boundary: periodic must be set on both ends or neither");
        for (const auto* side : {&left, &right}) {
            for (const auto& [field, value] : side->dirichlet) {
                if (field >= N)
                    throw std::invalid_argument("boundary: dirichlet field " + std::to_string(field) +
                                                " is not part of the model");
            }
        }
    }
};

/// Solution with one ghost cell and one ghost node on each side.
///
/// Extended node k corresponds to physical node k - 1 and extended cell k to
/// physical cell k - 1, so physical cell c is bounded by extended nodes c + 1
/// and c + 2.
template <std::size_t N>
struct ExtendedState {
    std::vector<StateVector<N>> points;    ///< n_cells + 3
    std::vector<StateVector<N>> averages;  ///< n_cells + 2
    std::vector<double> bathy_points;
    std::vector<double> bathy_averages;
    bool periodic = false;

    std::size_t n_cells() const noexcept { return averages.size() - 2; }
};

namespace detail {
template <std::size_t N>
void apply_dirichlet(StateVector<N>& s, const BoundarySide& side) {
    for (const auto& [field, value] : side.dirichlet) s[field] = value;
}
}  // namespace detail

/// Overrides the Dirichlet fields of the boundary nodes in place.
template <std::size_t N>
void impose_dirichlet_nodes(SolutionState<N>& state, const BoundaryCondition& bc) {
    if (bc.left.kind == BoundaryKind::dirichlet) detail::apply_dirichlet(state.points.front(), bc.left);
    if (bc.right.kind == BoundaryKind::dirichlet) detail::apply_dirichlet(state.points.back(), bc.right);
}

template <std::size_t N>
ExtendedState<N> apply_boundary(const SolutionState<N>& state, const BoundaryCondition& bc) {
    bc.validate<N>();
    const std::size_t n = state.n_cells();
    if (n < 2 || state.points.size() != n + 1) throw std::invalid_argument("apply_boundary: inconsistent state");

    ExtendedState<N> ext;
    ext.periodic = bc.is_periodic();
    ext.points.resize(n + 3);
    ext.averages.resize(n + 2);
    ext.bathy_points.resize(n + 3);
    ext.bathy_averages.resize(n + 2);
    for (std::size_t j = 0; j <= n; ++j) {
        ext.points[j + 1] = state.points[j];
        ext.bathy_points[j + 1] = state.bathy_points[j];
    }
    for (std::size_t c = 0; c < n; ++c) {
        ext.averages[c + 1] = state.averages[c];
        ext.bathy_averages[c + 1] = state.bathy_averages[c];
    }

    if (ext.periodic) {
        // node n coincides with node 0
        ext.points[n + 1] = ext.points[1];
        ext.points[0] = state.points[n - 1];
        ext.points[n + 2] = state.points[1];
        ext.averages[0] = state.averages[n - 1];
        ext.averages[n + 1] = state.averages[0];
        ext.bathy_points[n + 1] = ext.bathy_points[1];
        ext.bathy_points[0] = state.bathy_points[n - 1];
        ext.bathy_points[n + 2] = state.bathy_points[1];
        ext.bathy_averages[0] = state.bathy_averages[n - 1];
        ext.bathy_averages[n + 1] = state.bathy_averages[0];
        return ext;
    }

    ext.points[0] = state.points[0];
    ext.averages[0] = state.averages[0];
    ext.bathy_points[0] = state.bathy_points[0];
    ext.bathy_averages[0] = state.bathy_averages[0];
    ext.points[n + 2] = state.points[n];
    ext.averages[n + 1] = state.averages[n - 1];
    ext.bathy_points[n + 2] = state.bathy_points[n];
    ext.bathy_averages[n + 1] = state.bathy_averages[n - 1];

    if (bc.left.kind == BoundaryKind::dirichlet) {
        detail::apply_dirichlet(ext.points[0], bc.left);
        detail::apply_dirichlet(ext.points[1], bc.left);
        detail::apply_dirichlet(ext.averages[0], bc.left);
    }
    if (bc.right.kind == BoundaryKind::dirichlet) {
        detail::apply_dirichlet(ext.points[n + 1], bc.right);
        detail::apply_dirichlet(ext.points[n + 2], bc.right);
        detail::apply_dirichlet(ext.averages[n + 1], bc.right);
    }
    return ext;
}

/// Samples nodes exactly and forms cell averages with Simpson's rule, which is
/// exact on the quadratic in-cell representation.
template <std::size_t N>
SolutionState<N> project_initial_data(const Grid& grid, const std::array<std::function<double(double)>, N>& fields,
                                      const std::function<double(double)>& bathymetry) {
    SolutionState<N> s;
    const std::size_t n = grid.n_cells;
    s.points.resize(n + 1);
    s.averages.resize(n);
    s.bathy_points.resize(n + 1);
    s.bathy_averages.resize(n);

    auto sample = [&](double x) {
        StateVector<N> u;
        for (std::size_t k = 0; k < N; ++k) u[k] = fields[k](x);
        return u;
    };
    for (std::size_t j = 0; j <= n; ++j) {
        const double x = grid.node(j);
        s.points[j] = sample(x);
        s.bathy_points[j] = bathymetry(x);
    }
    for (std::size_t c = 0; c < n; ++c) {
        const double xm = grid.center(c);
        s.averages[c] = (1.0 / 6.0) * (s.points[c] + 4.0 * sample(xm) + s.points[c + 1]);
        s.bathy_averages[c] = (s.bathy_points[c] + 4.0 * bathymetry(xm) + s.bathy_points[c + 1]) / 6.0;
    }
    return s;
}

/// Total of each conserved field, sum of dx * average.
template <std::size_t N>
StateVector<N> total_integral(const SolutionState<N>& s, const Grid& grid) {
    StateVector<N> total;
    for (const auto& a : s.averages) total += a;
    return grid.dx * total;
}

}  // namespace pampa
