#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "test_support.hpp"

using namespace pampa;

TEST(Newton, FlatLakeAtRest) {
    const SaintVenant m{1.0, 0.0};
    const auto g = make_grid(0.0, 1.0, 10);
    EquilibriumSpec sp;
    sp.G2 = 2.0;
    const auto r = newton_recover_h(m, g, sp);
    for (const auto& u : r.state.points) EXPECT_NEAR(u[0], 2.0, 1e-14);
    for (const auto& u : r.state.averages) EXPECT_NEAR(u[0], 2.0, 1e-14);
    EXPECT_LE(r.max_residual, 1e-13);
}

TEST(Newton, GeostrophicFarFieldAndCentre) {
    // g h_x = f v with v = 2 x e^{-x^2} gives h = 2 - e^{-x^2}
    const RotatingShallowWater m{1.0, 10.0, 0.0};
    const auto g = make_grid(-10.0, 10.0, 200);
    const auto r = newton_recover_h(m, g, bench::geostrophic_spec(9));
    EXPECT_NEAR(r.state.points.front()[0], 2.0, 1e-12);
    EXPECT_NEAR(r.state.points.back()[0], 2.0, 1e-6);
    EXPECT_NEAR(r.state.points[100][0], 1.0, 1e-6);
    for (std::size_t j = 0; j <= 200; j += 20) {
        const double x = g.node(j);
        EXPECT_NEAR(r.state.points[j][0], 2.0 - std::exp(-x * x), 1e-6);
    }
}

TEST(Newton, ConstantGlobalFluxAtEveryNodeAndMidpoint) {
    const SaintVenant m{9.812, 0.05};
    const auto g = make_grid(0.0, 25.0, 50);
    for (int c : {1, 2}) {
        const auto sp = bench::detail::ex4_spec(c);
        const auto r = newton_recover_h(m, g, sp);
        const auto G = assemble_global_flux(m, g, r.state, Quadrature::sc_lobatto3);
        EXPECT_LT(global_flux_spread(G, 1), 1e-12 * sp.G2);
        EXPECT_NEAR(G.G_nodes[0][1], sp.G2, 1e-12 * sp.G2);
        for (const auto& u : r.state.points) EXPECT_DOUBLE_EQ(u[1], sp.discharge);
    }
}

TEST(Newton, ChokedFlowIsReported) {
    const SaintVenant m{9.812, 0.0};
    EquilibriumSpec sp;
    sp.discharge = 24.0;
    sp.G2 = 10.0;  // below the minimum of f2 over h for this discharge
    EXPECT_THROW(newton_recover_h(m, make_grid(0.0, 1.0, 4), sp), EquilibriumError);
}

TEST(Bernoulli, CasesOneAndTwo) {
    const auto c1 = analytic_moving_steady(1);
    const auto c2 = analytic_moving_steady(2);
    EXPECT_NEAR(c1.depth(0.0), 2.0, 1e-14);
    EXPECT_NEAR(c2.depth(0.0), 2.0, 1e-14);
    for (double x = 0.0; x <= 25.0; x += 0.25) {
        const double B = bench::shapes::parabolic_bump(x);
        const double h1 = c1.depth(B), h2 = c2.depth(B);
        EXPECT_EQ(flow_regime(h1, c1.q, 9.812), FlowRegime::supercritical);
        EXPECT_EQ(flow_regime(h2, c2.q, 9.812), FlowRegime::subcritical);
        EXPECT_LT(std::abs(c1.cubic(h1, B)), 1e-10);
        EXPECT_NEAR(c2.q * c2.q / (2.0 * h2 * h2) + 9.812 * (h2 + B), c2.E, 1e-12);
    }
    EXPECT_THROW(analytic_moving_steady(3), std::invalid_argument);
}

TEST(Bernoulli, DiscreteGlobalFluxIsConstantToQuadratureOrder) {
    const SaintVenant m{9.812, 0.0};
    double prev = 0.0;
    for (std::size_t n : {50, 100, 200}) {
        const auto g = make_grid(0.0, 25.0, n);
        const auto s = std::get<SolutionState<2>>(bench::example3(2).reference(g, 0.0));
        const double spread = global_flux_spread(assemble_global_flux(m, g, s, Quadrature::sc_lobatto3), 1);
        if (prev > 0.0) EXPECT_GT(std::log2(prev / spread), 3.5);
        prev = spread;
    }
}

TEST(Bowl, FrontsAreDryAndMassIsConstant) {
    const ParabolicBowl bowl{};
    const double period = 2.0 * std::numbers::pi / bowl.omega();
    double mass0 = 0.0;
    for (double t : {0.0, 0.1 * period, 0.37 * period, 0.5 * period, 1000.0}) {
        const auto [xl, xr] = bowl.fronts(t);
        EXPECT_NEAR(bowl.surface(xl, t) - bowl.bathymetry(xl), 0.0, 1e-10);
        EXPECT_NEAR(bowl.surface(xr, t) - bowl.bathymetry(xr), 0.0, 1e-10);
        EXPECT_GT(bowl.height(0.5 * (xl + xr), t), 0.0);
        EXPECT_FALSE(parabolic_bowl_exact(bowl, t, xl - 10.0).wet);
        EXPECT_TRUE(parabolic_bowl_exact(bowl, t, 0.5 * (xl + xr)).wet);
        const double mass = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            [&](double x) { return bowl.height(x, t); }, xl, xr, 10, 1e-13);
        if (t == 0.0) mass0 = mass;
        EXPECT_NEAR(mass, mass0, 1e-9 * mass0);
    }
    // the exact flow satisfies h_t + (h u)_x = 0 inside the wet region
    const double t = 700.0, x = 300.0, e = 1e-3;
    const double ht = (bowl.height(x, t + e) - bowl.height(x, t - e)) / (2.0 * e);
    const double hx = (bowl.height(x + e, t) - bowl.height(x - e, t)) / (2.0 * e);
    EXPECT_NEAR(ht + bowl.velocity(t) * hx, 0.0, 1e-7);
}
