#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include "pampa/models.hpp"

namespace pampa {

template <std::size_t N>
struct SignMatrices {
    Matrix<N> plus{};
    Matrix<N> minus{};
};

/// Threshold under which an eigenvalue counts as sonic.
inline double sonic_tolerance(double wave_speed) noexcept { return 1e-8 * std::max(1.0, wave_speed); }

/// J~(+-) = R diag(lambda(+-)/lambda) R^-1; a sonic eigenvalue gets ratio 1/2
/// on both sides. Empty for dry states.
template <ShallowWaterModel M>
std::optional<SignMatrices<M::kVars>> sign_matrices(const typename M::State& u, const M& model) noexcept {
    constexpr std::size_t N = M::kVars;
    const auto eig = model.eigensystem(u);
    if (!eig) return std::nullopt;
    const double tol = sonic_tolerance(model.max_wave_speed(u));
    std::array<double, N> ratio{};
    for (std::size_t i = 0; i < N; ++i) {
        const double l = eig->lambda[i];
        ratio[i] = l > tol ? 1.0 : (l < -tol ? 0.0 : 0.5);
    }
    SignMatrices<N> s;
    for (std::size_t r = 0; r < N; ++r) {
        for (std::size_t c = 0; c < N; ++c) {
            double p = 0.0, m = 0.0;
            for (std::size_t k = 0; k < N; ++k) {
                const double rk = eig->right[r][k] * eig->left[k][c];
                p += rk * ratio[k];
                m += rk * (1.0 - ratio[k]);
            }
            s.plus[r][c] = p;
            s.minus[r][c] = m;
        }
    }
    return s;
}

template <std::size_t N>
struct BiasedDerivatives {
    StateVector<N> plus;   ///< from the cell on the left of the node
    StateVector<N> minus;  ///< from the cell on the right
};

/// Left-biased derivative at x_j from G_{j-1}, G_{j-1/2}, G_j.
template <std::size_t N>
StateVector<N> left_biased_derivative(const StateVector<N>& g_far, const StateVector<N>& g_mid,
                                      const StateVector<N>& g_node, double dx) noexcept {
    return (1.0 / dx) * (g_far - 4.0 * g_mid + 3.0 * g_node);
}

/// Right-biased derivative at x_j from G_j, G_{j+1/2}, G_{j+1}.
template <std::size_t N>
StateVector<N> right_biased_derivative(const StateVector<N>& g_node, const StateVector<N>& g_mid,
                                       const StateVector<N>& g_far, double dx) noexcept {
    return (1.0 / dx) * (-3.0 * g_node + 4.0 * g_mid - g_far);
}

template <std::size_t N>
BiasedDerivatives<N> biased_derivatives(const StateVector<N>& g_left, const StateVector<N>& g_left_mid,
                                        const StateVector<N>& g_node, const StateVector<N>& g_right_mid,
                                        const StateVector<N>& g_right, double dx) noexcept {
    return {left_biased_derivative(g_left, g_left_mid, g_node, dx),
            right_biased_derivative(g_node, g_right_mid, g_right, dx)};
}

template <std::size_t N>
struct HighOrderResiduals {
    StateVector<N> from_left;   ///< J~+ d+G
    StateVector<N> from_right;  ///< J~- d-G
};

template <ShallowWaterModel M>
std::optional<HighOrderResiduals<M::kVars>> high_order_point_residuals(const typename M::State& node,
                                                                       const BiasedDerivatives<M::kVars>& d,
                                                                       const M& model) noexcept {
    const auto s = sign_matrices(node, model);
    if (!s) return std::nullopt;
    return HighOrderResiduals<M::kVars>{s->plus * d.plus, s->minus * d.minus};
}

/// High-order flux at a node: G_j = f(u_j) - R_j.
template <ShallowWaterModel M>
typename M::State high_order_node_flux(const typename M::State& node, const typename M::State& R_node,
                                       const M& model) noexcept {
    return model.flux(node) - R_node;
}

}  // namespace pampa
