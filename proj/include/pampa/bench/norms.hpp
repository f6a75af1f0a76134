#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "pampa/grid.hpp"

namespace pampa::bench {

struct FieldNorms {
    double l1 = 0.0;
    double l2 = 0.0;
    double linf = 0.0;
};

template <std::size_t N>
struct ErrorNorms {
    std::array<FieldNorms, N> points{};
    std::array<FieldNorms, N> averages{};
};

/// L1 = dx sum |e| over cells and dx sum' |e| over nodes with half weights at
/// the two ends; L2 likewise; Linf the max.
template <std::size_t N>
ErrorNorms<N> error_norms(const SolutionState<N>& numeric, const SolutionState<N>& reference, const Grid& grid) {
    if (numeric.points.size() != reference.points.size() || numeric.averages.size() != reference.averages.size() ||
        numeric.averages.size() != grid.n_cells)
        throw std::invalid_argument("error_norms: layouts differ");
    ErrorNorms<N> out;
    const double dx = grid.dx;
    const std::size_t n = grid.n_cells;
    for (std::size_t k = 0; k < N; ++k) {
        FieldNorms p, a;
        double s2 = 0.0;
        for (std::size_t j = 0; j <= n; ++j) {
            const double e = std::abs(numeric.points[j][k] - reference.points[j][k]);
            const double w = (j == 0 || j == n) ? 0.5 : 1.0;
            p.l1 += w * dx * e;
            s2 += w * dx * e * e;
            p.linf = std::max(p.linf, e);
        }
        p.l2 = std::sqrt(s2);
        s2 = 0.0;
        for (std::size_t c = 0; c < n; ++c) {
            const double e = std::abs(numeric.averages[c][k] - reference.averages[c][k]);
            a.l1 += dx * e;
            s2 += dx * e * e;
            a.linf = std::max(a.linf, e);
        }
        a.l2 = std::sqrt(s2);
        out.points[k] = p;
        out.averages[k] = a;
    }
    return out;
}

/// Fine solution seen on the coarse mesh: coincident nodes and the mean of the
/// two nested fine averages.
template <std::size_t N>
SolutionState<N> restrict_to_coarse(const SolutionState<N>& fine) {
    const std::size_t nf = fine.averages.size();
    if (nf % 2 != 0) throw std::invalid_argument("restrict_to_coarse: fine mesh has an odd cell count");
    const std::size_t nc = nf / 2;
    SolutionState<N> c;
    c.points.resize(nc + 1);
    c.averages.resize(nc);
    c.bathy_points.resize(nc + 1);
    c.bathy_averages.resize(nc);
    for (std::size_t j = 0; j <= nc; ++j) {
        c.points[j] = fine.points[2 * j];
        c.bathy_points[j] = fine.bathy_points[2 * j];
    }
    for (std::size_t k = 0; k < nc; ++k) {
        c.averages[k] = 0.5 * (fine.averages[2 * k] + fine.averages[2 * k + 1]);
        c.bathy_averages[k] = 0.5 * (fine.bathy_averages[2 * k] + fine.bathy_averages[2 * k + 1]);
    }
    return c;
}

/// Runge estimate E(dx) = |u_dx - u_{dx/2}| on the coarse mesh.
template <std::size_t N>
ErrorNorms<N> runge_error(const SolutionState<N>& coarse, const SolutionState<N>& fine, const Grid& coarse_grid) {
    if (fine.averages.size() != 2 * coarse.averages.size())
        throw std::invalid_argument("runge_error: meshes are not nested by a factor two");
    return error_norms(coarse, restrict_to_coarse(fine), coarse_grid);
}

/// log2(E_k / E_{k+1}) for consecutive refinements.
inline std::vector<double> convergence_rates(const std::vector<double>& errors) {
    std::vector<double> r;
    for (std::size_t k = 0; k + 1 < errors.size(); ++k) r.push_back(std::log2(errors[k] / errors[k + 1]));
    return r;
}

}  // namespace pampa::bench
