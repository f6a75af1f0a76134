#pragma once

#include <cmath>
#include <concepts>
#include <optional>
#include <stdexcept>

#include "pampa/dry.hpp"
#include "pampa/state.hpp"

namespace pampa {

/// Heights below this have no usable eigenstructure; callers fall back to
/// the first-order path.
inline constexpr double kEigenDryHeight = 1e-10;

inline constexpr double kCriticalKappa = 8.0 / 27.0;

template <std::size_t N>
struct Eigensystem {
    std::array<double, N> lambda{};
    Matrix<N> right{};  ///< columns are right eigenvectors
    Matrix<N> left{};   ///< inverse of `right`
};

/**
 * @brief Saint-Venant system with Manning friction.
 *
 *   h_t + (hu)_x = 0
 *   (hu)_t + (hu^2 + g h^2 / 2)_x = -g h B_x - g n^2 |hu| hu / h^(7/3)
 */
struct SaintVenant {
    static constexpr std::size_t kVars = 2;
    using State = StateVector<kVars>;

    double g = 9.812;
    double manning = 0.0;

    void validate() const {
        if (!(g > 0.0)) throw std::invalid_argument("SaintVenant: g must be positive");
        if (!(manning >= 0.0)) throw std::invalid_argument("SaintVenant: Manning coefficient must be >= 0");
    }

    State flux(const State& u) const noexcept {
        const double vel = dry_velocity(u[0], u[1]);
        return State{{u[1], u[1] * vel + 0.5 * g * u[0] * u[0]}};
    }

    /// Friction contribution g n^2 |hu| hu / h^(7/3), dry-filtered.
    double friction(const State& u) const noexcept {
        const double h = u[0];
        if (manning == 0.0 || h <= kDryHeight) return 0.0;
        const double coeff = g * manning * manning;
        if (h >= kFilterHeight) return coeff * std::abs(u[1]) * u[1] * std::exp(-(7.0 / 3.0) * std::log(h));
        // |hu| hu / h^(7/3) = |u| u h^(-1/3) with the filtered velocity
        const double vel = dry_velocity(h, u[1]);
        return coeff * std::abs(vel) * vel * std::exp(-(1.0 / 3.0) * std::log(h));
    }

    /// Every source term except the topography slope.
    State source_without_slope(const State& u, double /*x*/) const noexcept {
        return State{{0.0, -friction(u)}};
    }

    State source(const State& u, double x, double slope) const noexcept {
        State s = source_without_slope(u, x);
        s[1] -= g * u[0] * slope;
        return s;
    }

    double max_wave_speed(const State& u) const noexcept {
        const double h = std::max(u[0], 0.0);
        if (h <= kDryHeight) return 0.0;
        return std::abs(dry_velocity(h, u[1])) + std::sqrt(g * h);
    }

    std::optional<Eigensystem<kVars>> eigensystem(const State& u) const noexcept {
        if (!(u[0] > kEigenDryHeight)) return std::nullopt;
        const double vel = dry_velocity(u[0], u[1]);
        const double c = std::sqrt(g * u[0]);
        Eigensystem<kVars> e;
        e.lambda = {vel - c, vel + c};
        e.right = {{{1.0, 1.0}, {vel - c, vel + c}}};
        const double inv = 1.0 / (2.0 * c);
        e.left = {{{(vel + c) * inv, -inv}, {-(vel - c) * inv, inv}}};
        return e;
    }

    Matrix<kVars> jacobian(const State& u) const noexcept {
        const double vel = dry_velocity(u[0], u[1]);
        return {{{0.0, 1.0}, {g * u[0] - vel * vel, 2.0 * vel}}};
    }
};

/**
 * @brief Shallow water equations with Coriolis forcing f(x) = f0 + beta x.
 *
 *   h_t + (hu)_x = 0
 *   (hu)_t + (hu^2 + g h^2 / 2)_x = -g h B_x + f h v
 *   (hv)_t + (huv)_x = -f h u
 */
struct RotatingShallowWater {
    static constexpr std::size_t kVars = 3;
    using State = StateVector<kVars>;

    double g = 9.812;
    double f0 = 0.0;
    double beta = 0.0;

    void validate() const {
        if (!(g > 0.0)) throw std::invalid_argument("RotatingShallowWater: g must be positive");
    }

    double coriolis(double x) const noexcept { return f0 + beta * x; }

    State flux(const State& u) const noexcept {
        const double vel = dry_velocity(u[0], u[1]);
        return State{{u[1], u[1] * vel + 0.5 * g * u[0] * u[0], u[1] * dry_velocity(u[0], u[2])}};
    }

    State source_without_slope(const State& u, double x) const noexcept {
        const double f = coriolis(x);
        return State{{0.0, f * u[2], -f * u[1]}};
    }

    State source(const State& u, double x, double slope) const noexcept {
        State s = source_without_slope(u, x);
        s[1] -= g * u[0] * slope;
        return s;
    }

    double max_wave_speed(const State& u) const noexcept {
        const double h = std::max(u[0], 0.0);
        if (h <= kDryHeight) return 0.0;
        return std::abs(dry_velocity(h, u[1])) + std::sqrt(g * h);
    }

    std::optional<Eigensystem<kVars>> eigensystem(const State& u) const noexcept {
        if (!(u[0] > kEigenDryHeight)) return std::nullopt;
        const double vel = dry_velocity(u[0], u[1]);
        const double tv = dry_velocity(u[0], u[2]);
        const double c = std::sqrt(g * u[0]);
        const double inv = 1.0 / (2.0 * c);
        Eigensystem<kVars> e;
        e.lambda = {vel - c, vel, vel + c};
        // r1 = (1, u-c, v), r2 = (0, 0, 1), r3 = (1, u+c, v) as columns
        e.right = {{{1.0, 0.0, 1.0}, {vel - c, 0.0, vel + c}, {tv, 1.0, tv}}};
        e.left = {{{(vel + c) * inv, -inv, 0.0}, {-tv, 0.0, 1.0}, {-(vel - c) * inv, inv, 0.0}}};
        return e;
    }

    Matrix<kVars> jacobian(const State& u) const noexcept {
        const double vel = dry_velocity(u[0], u[1]);
        const double tv = dry_velocity(u[0], u[2]);
        return {{{0.0, 1.0, 0.0}, {g * u[0] - vel * vel, 2.0 * vel, 0.0}, {-vel * tv, tv, vel}}};
    }
};

template <class M>
concept ShallowWaterModel = requires(const M& m, const typename M::State& u, double x) {
    { M::kVars } -> std::convertible_to<std::size_t>;
    { m.g } -> std::convertible_to<double>;
    { m.flux(u) } -> std::same_as<typename M::State>;
    { m.source(u, x, x) } -> std::same_as<typename M::State>;
    { m.source_without_slope(u, x) } -> std::same_as<typename M::State>;
    { m.max_wave_speed(u) } -> std::convertible_to<double>;
    m.eigensystem(u);
    m.validate();
};

template <ShallowWaterModel M>
typename M::State physical_flux(const typename M::State& u, const M& model) noexcept {
    return model.flux(u);
}

template <ShallowWaterModel M>
typename M::State pointwise_source(const typename M::State& u, double x, double slope, const M& model) noexcept {
    return model.source(u, x, slope);
}

/// Eigen-decomposition of the flux Jacobian; empty for dry states.
template <ShallowWaterModel M>
std::optional<Eigensystem<M::kVars>> eigenstructure(const typename M::State& u, const M& model) noexcept {
    return model.eigensystem(u);
}

template <ShallowWaterModel M>
double max_wave_speed(const typename M::State& u, const M& model) noexcept {
    return model.max_wave_speed(u);
}

enum class FlowRegime { subcritical, critical, supercritical };

struct CriticalRatio {
    double kappa = 0.0;
    bool critical = false;
};

/// kappa = g f1^4 / f2^3; equals 8/27 exactly at Froude number one.
inline CriticalRatio critical_ratio(double flux_mass, double flux_momentum, double g, double tol = 1e-12) {
    if (!(flux_momentum > 0.0)) throw std::invalid_argument("critical_ratio: momentum flux must be positive");
    const double f1sq = flux_mass * flux_mass;
    const double kappa = g * f1sq * f1sq / (flux_momentum * flux_momentum * flux_momentum);
    return {kappa, std::abs(kappa - kCriticalKappa) <= tol};
}

inline double froude_number(double h, double hu, double g) noexcept {
    if (h <= kDryHeight) return 0.0;
    return std::abs(hu / h) / std::sqrt(g * h);
}

/// Classifies a wet state by the sign of Fr - 1.
inline FlowRegime flow_regime(double h, double hu, double g, double tol = 1e-12) noexcept {
    const double fr = froude_number(h, hu, g);
    if (std::abs(fr - 1.0) <= tol) return FlowRegime::critical;
    return fr < 1.0 ? FlowRegime::subcritical : FlowRegime::supercritical;
}

}  // namespace pampa
