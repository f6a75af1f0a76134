#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/math/tools/roots.hpp>

#include "pampa/global_flux.hpp"
#include "pampa/grid.hpp"
#include "pampa/models.hpp"

namespace pampa {

enum class Branch { subcritical, supercritical };

class EquilibriumError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Steady data given through the momentum component of the global flux.
struct EquilibriumSpec {
    double G2 = 0.0;
    double discharge = 0.0;                           ///< constant hu
    std::function<double(double)> transverse_velocity;  ///< v(x), rotating model only
    std::function<double(double)> bathymetry = [](double) { return 0.0; };
    Branch branch = Branch::subcritical;
};

namespace detail {

/// Root of a monotone function on [lo, hi] to full double precision.
template <class F>
double bracketed_root(F&& f, double lo, double hi) {
    std::uintmax_t iters = 200;
    const auto tol = boost::math::tools::eps_tolerance<double>(52);
    const auto r = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
    return 0.5 * (r.first + r.second);
}

/// Critical depth (q^2 / g)^(1/3).
inline double critical_depth(double q, double g) noexcept { return std::cbrt(q * q / g); }

/// Bracket of one height branch of a function shaped like q^2/h + c h: it
/// decreases below the critical depth and increases above it.
template <class F>
std::pair<double, double> branch_bracket(F&& f, double q, double g, Branch branch) {
    const double hc = critical_depth(q, g);
    if (branch == Branch::subcritical) {
        double lo = hc > 0.0 ? hc : 1e-300;
        if (f(lo) > 0.0) throw EquilibriumError("no subcritical root: flow is choked");
        double hi = std::max(2.0 * lo, 1.0);
        for (int k = 0; f(hi) < 0.0; ++k) {
            if (k > 200) throw EquilibriumError("no subcritical root found");
            hi *= 2.0;
        }
        return {lo, hi};
    }
    if (!(hc > 0.0)) throw EquilibriumError("supercritical branch needs a nonzero discharge");
    if (f(hc) > 0.0) throw EquilibriumError("no supercritical root: flow is choked");
    double lo = 0.5 * hc;
    for (int k = 0; f(lo) < 0.0; ++k) {
        if (k > 200) throw EquilibriumError("no supercritical root found");
        lo *= 0.5;
    }
    return {lo, hc};
}

}  // namespace detail

/// State with height h built from the spec at position x.
template <ShallowWaterModel M>
typename M::State equilibrium_state(const M&, const EquilibriumSpec& spec, double h, double x) {
    typename M::State u;
    u[0] = h;
    u[1] = spec.discharge;
    if constexpr (M::kVars == 3) u[2] = spec.transverse_velocity ? h * spec.transverse_velocity(x) : 0.0;
    return u;
}

template <std::size_t N>
struct EquilibriumResult {
    SolutionState<N> state;
    double max_residual = 0.0;  ///< worst |G2_k - G2| over all nodes and midpoints
    int max_iterations = 0;
};

/**
 * @brief Discrete moving equilibrium with G2 constant at every node and
 * midpoint, using the solver's own cell quadrature for R.
 *
 * Cells are swept left to right: the first node solves f2(u_0) = G2, then each
 * cell solves for its midpoint and right node given the upstream R.
 */
template <ShallowWaterModel M>
EquilibriumResult<M::kVars> newton_recover_h(const M& model, const Grid& grid, const EquilibriumSpec& spec,
                                             Quadrature quad = Quadrature::sc_lobatto3) {
    constexpr std::size_t N = M::kVars;
    model.validate();
    const std::size_t n = grid.n_cells;
    const double dx = grid.dx;
    const double q = spec.discharge;
    if (N == 2 && spec.transverse_velocity) throw std::invalid_argument("newton_recover_h: v(x) needs the rotating model");

    EquilibriumResult<N> res;
    auto& s = res.state;
    s.points.resize(n + 1);
    s.averages.resize(n);
    s.bathy_points.resize(n + 1);
    s.bathy_averages.resize(n);
    for (std::size_t j = 0; j <= n; ++j) s.bathy_points[j] = spec.bathymetry(grid.node(j));
    for (std::size_t c = 0; c < n; ++c)
        s.bathy_averages[c] =
            (s.bathy_points[c] + 4.0 * spec.bathymetry(grid.center(c)) + s.bathy_points[c + 1]) / 6.0;

    auto state_at = [&](double h, double x) { return equilibrium_state(model, spec, h, x); };
    auto check_regime = [&](double h, double x) {
        if (q == 0.0) return;
        const auto regime = flow_regime(h, q, model.g);
        const bool ok = spec.branch == Branch::subcritical ? regime == FlowRegime::subcritical
                                                           : regime == FlowRegime::supercritical;
        if (!ok) throw EquilibriumError("equilibrium leaves its branch near x = " + std::to_string(x));
    };

    // first node, R_0 = 0
    const double x0 = grid.node(0);
    auto f0 = [&](double h) { return model.flux(state_at(h, x0))[1] - spec.G2; };
    const auto [lo, hi] = detail::branch_bracket(f0, q, model.g, spec.branch);
    s.points[0] = state_at(detail::bracketed_root(f0, lo, hi), x0);
    check_regime(s.points[0][0], x0);

    const double scale = std::max(1.0, std::abs(spec.G2));
    double R = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        const double xl = grid.node(c), xm = grid.center(c), xr = grid.node(c + 1);
        const ScalarCell bathy{s.bathy_points[c], s.bathy_averages[c], s.bathy_points[c + 1]};
        const auto uL = s.points[c];

        struct Eval {
            std::array<double, 2> r;
            typename M::State avg, right;
        };
        auto eval = [&](double hM, double hR) {
            Eval e;
            const auto uM = state_at(hM, xm);
            e.right = state_at(hR, xr);
            e.avg = (1.0 / 6.0) * (uL + 4.0 * uM + e.right);
            const CellRepresentation<N> rep{uL, e.avg, e.right};
            const auto cq = cell_quadrature(model, rep, bathy, xl, dx, quad);
            e.r = {model.flux(cq.mid)[1] - (R + cq.inc.half[1]) - spec.G2,
                   model.flux(e.right)[1] - (R + cq.inc.full[1]) - spec.G2};
            return e;
        };
        auto norm = [](const std::array<double, 2>& r) { return std::max(std::abs(r[0]), std::abs(r[1])); };

        double hM = uL[0], hR = uL[0];
        Eval cur = eval(hM, hR);
        int it = 0;
        for (; it < 50 && norm(cur.r) > 1e-15 * scale; ++it) {
            // central-difference Jacobian
            double J[2][2];
            const double dM = 1e-6 * hM, dR = 1e-6 * hR;
            const auto pM = eval(hM + dM, hR).r, mM = eval(hM - dM, hR).r;
            const auto pR = eval(hM, hR + dR).r, mR = eval(hM, hR - dR).r;
            for (int k = 0; k < 2; ++k) {
                J[k][0] = (pM[k] - mM[k]) / (2.0 * dM);
                J[k][1] = (pR[k] - mR[k]) / (2.0 * dR);
            }
            const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
            if (!(std::abs(det) > 0.0)) throw EquilibriumError("singular Newton system (sonic point?)");
            const double sM = (cur.r[0] * J[1][1] - cur.r[1] * J[0][1]) / det;
            const double sR = (J[0][0] * cur.r[1] - J[1][0] * cur.r[0]) / det;
            double step = 1.0;
            bool improved = false;
            for (int k = 0; k < 40; ++k, step *= 0.5) {
                const double nM = hM - step * sM, nR = hR - step * sR;
                if (!(nM > 0.0 && nR > 0.0)) continue;
                const auto trial = eval(nM, nR);
                if (norm(trial.r) < norm(cur.r)) {
                    hM = nM;
                    hR = nR;
                    cur = trial;
                    improved = true;
                    break;
                }
            }
            if (!improved) break;  // stagnated at round-off
        }
        if (norm(cur.r) > 1e-13 * scale)
            throw EquilibriumError("Newton did not converge in cell " + std::to_string(c) + " (residual " +
                                   std::to_string(norm(cur.r)) + ")");
        check_regime(hM, xm);
        check_regime(hR, xr);
        res.max_residual = std::max(res.max_residual, norm(cur.r));
        res.max_iterations = std::max(res.max_iterations, it);

        s.points[c + 1] = cur.right;
        s.averages[c] = cur.avg;
        // R advanced with the converged cell
        const CellRepresentation<N> rep{uL, cur.avg, cur.right};
        R += cell_quadrature(model, rep, bathy, xl, dx, quad).inc.full[1];
    }
    return res;
}

/// Frictionless Saint-Venant steady state from Bernoulli's law
/// q^2 / (2 h^2) + g (h + B) = E.
struct BernoulliSteady {
    double g = 9.812;
    double q = 0.0;
    double E = 0.0;
    Branch branch = Branch::subcritical;

    /// Energy fixed by a known depth h_ref over bottom B_ref.
    static BernoulliSteady through(double g, double q, double h_ref, double B_ref, Branch branch) {
        if (!(h_ref > 0.0)) throw std::invalid_argument("BernoulliSteady: reference depth must be positive");
        return {g, q, q * q / (2.0 * h_ref * h_ref) + g * (h_ref + B_ref), branch};
    }

    /// g h^3 + (g B - E) h^2 + q^2 / 2, zero at the steady depth.
    double cubic(double h, double B) const noexcept { return g * h * h * h + (g * B - E) * h * h + 0.5 * q * q; }

    double depth(double B) const {
        // phi = q^2/(2h^2) + g(h+B) - E decreases below h_c and increases above
        auto phi = [&](double h) { return q * q / (2.0 * h * h) + g * (h + B) - E; };
        if (q == 0.0) {
            const double h = E / g - B;
            if (!(h > 0.0)) throw EquilibriumError("lake at rest is dry here");
            return h;
        }
        const auto [lo, hi] = detail::branch_bracket(phi, q, g, branch);
        double h = detail::bracketed_root(phi, lo, hi);
        // one Newton polish on the cubic
        const double d = 3.0 * g * h * h + 2.0 * (g * B - E) * h;
        if (d != 0.0) {
            const double hn = h - cubic(h, B) / d;
            if (std::abs(cubic(hn, B)) < std::abs(cubic(h, B))) h = hn;
        }
        return h;
    }
};

/// The two frictionless moving-water cases over the parabolic bump.
inline BernoulliSteady analytic_moving_steady(int case_id, double g = 9.812) {
    if (case_id == 1) return BernoulliSteady::through(g, 24.0, 2.0, 0.0, Branch::supercritical);
    if (case_id == 2) return BernoulliSteady::through(g, 4.42, 2.0, 0.0, Branch::subcritical);
    throw std::invalid_argument("analytic_moving_steady: case must be 1 or 2");
}

/// Planar oscillation in a parabolic bowl B = h0 (x/a)^2.
struct ParabolicBowl {
    double g = 9.812;
    double h0 = 10.0;
    double a = 3000.0;
    double b = 5.0;

    double omega() const noexcept { return std::sqrt(2.0 * g * h0) / a; }
    double bathymetry(double x) const noexcept { return h0 * (x / a) * (x / a); }

    double surface(double x, double t) const noexcept {
        const double w = omega();
        return h0 - b * b / (4.0 * g) * std::cos(2.0 * w * t) - b * b / (4.0 * g) -
               b * x / (2.0 * a) * std::sqrt(8.0 * h0 / g) * std::cos(w * t);
    }

    /// Left and right shoreline positions.
    std::pair<double, double> fronts(double t) const noexcept {
        const double w = omega();
        const double shift = -b * w * a * a / (2.0 * g * h0) * std::cos(w * t);
        return {shift - a, shift + a};
    }

    double height(double x, double t) const noexcept { return std::max(0.0, surface(x, t) - bathymetry(x)); }

    /// Exact velocity in the wet region.
    double velocity(double t) const noexcept {
        const double w = omega();
        return b * a * w / std::sqrt(2.0 * g * h0) * std::sin(w * t);
    }
};

struct BowlSample {
    bool wet = false;
    double surface = 0.0;  ///< h + B, equal to B on dry ground
};

inline BowlSample parabolic_bowl_exact(const ParabolicBowl& bowl, double t, double x) {
    const double h = bowl.height(x, t);
    return {h > 0.0, h + bowl.bathymetry(x)};
}

}  // namespace pampa
