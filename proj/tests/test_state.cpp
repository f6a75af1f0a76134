#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace pampa;

TEST(StateVector, Arithmetic) {
    const auto a = make_state<2>({1.0, -2.0});
    const auto b = make_state<2>({0.5, 4.0});
    EXPECT_EQ(a + b, make_state<2>({1.5, 2.0}));
    EXPECT_EQ(a - b, make_state<2>({0.5, -6.0}));
    EXPECT_EQ(2.0 * a, make_state<2>({2.0, -4.0}));
    EXPECT_EQ(-a, make_state<2>({-1.0, 2.0}));
    EXPECT_DOUBLE_EQ(max_abs(a - b), 6.0);
    EXPECT_THROW(make_state<3>({1.0, 2.0}), std::invalid_argument);
}

TEST(StateVector, FiniteCheck) {
    auto a = StateVector<3>::constant(1.0);
    EXPECT_TRUE(all_finite(a));
    a[2] = std::nan("");
    EXPECT_FALSE(all_finite(a));
}

TEST(Matrix, ProductsMatchHandComputation) {
    const Matrix<2> m{{{1.0, 2.0}, {3.0, 4.0}}};
    const auto y = m * make_state<2>({1.0, 1.0});
    EXPECT_EQ(y, make_state<2>({3.0, 7.0}));
    const auto mm = m * identity_matrix<2>();
    EXPECT_EQ(mm, m);
    const auto sq = m * m;
    EXPECT_DOUBLE_EQ(sq[0][0], 7.0);
    EXPECT_DOUBLE_EQ(sq[1][1], 22.0);
}

TEST(DryVelocity, FilterIsContinuousAndVanishesDry) {
    EXPECT_EQ(dry_velocity(0.0, 1.0), 0.0);
    EXPECT_EQ(dry_velocity(-1.0, 1.0), 0.0);
    EXPECT_DOUBLE_EQ(dry_velocity(2.0, 3.0), 1.5);
    // filter weight is zero at h0 so both branches agree there
    const double h0 = kFilterHeight;
    EXPECT_NEAR(dry_velocity(h0 * (1.0 - 1e-12), 2.0 * h0), 2.0, 1e-9);
    // near dry the velocity stays bounded
    EXPECT_LT(std::abs(dry_velocity(1e-10, 1e-6)), 1e-6 * 1e-10 / kFilterEpsilon * 1.01);
}

TEST(Grid, Geometry) {
    const auto g = make_grid(-1.0, 1.0, 4);
    EXPECT_DOUBLE_EQ(g.dx, 0.5);
    EXPECT_DOUBLE_EQ(g.node(4), 1.0);
    EXPECT_DOUBLE_EQ(g.center(0), -0.75);
    EXPECT_DOUBLE_EQ(g.at(0.25), -0.875);
    EXPECT_EQ(g.n_nodes(), 5u);
    EXPECT_THROW(make_grid(0.0, 1.0, 1), std::invalid_argument);
    EXPECT_THROW(make_grid(1.0, 1.0, 4), std::invalid_argument);
}

TEST(Projection, QuadraticDataAreExact) {
    const auto g = make_grid(0.0, 1.0, 8);
    auto f = [](double x) { return 1.0 + 2.0 * x - 3.0 * x * x; };
    const auto s = project_initial_data<2>(g, {f, [](double) { return 0.0; }}, f);
    for (std::size_t c = 0; c < g.n_cells; ++c) {
        const double a = g.node(c), b = g.node(c + 1);
        auto F = [](double x) { return x + x * x - x * x * x; };
        EXPECT_NEAR(s.averages[c][0], (F(b) - F(a)) / (b - a), 1e-15);
        EXPECT_NEAR(s.bathy_averages[c], s.averages[c][0], 1e-15);
    }
    const auto total = total_integral(s, g);
    EXPECT_NEAR(total[0], 1.0 + 1.0 - 1.0, 1e-14);
}

TEST(Boundary, PeriodicGhostsWrap) {
    const auto g = make_grid(0.0, 1.0, 4);
    SolutionState<2> s;
    for (std::size_t j = 0; j <= 4; ++j) s.points.push_back(make_state<2>({10.0 + j, 0.0}));
    s.points[4] = s.points[0];
    for (std::size_t c = 0; c < 4; ++c) s.averages.push_back(make_state<2>({20.0 + c, 0.0}));
    s.bathy_points.assign(5, 0.0);
    s.bathy_averages.assign(4, 0.0);
    ASSERT_TRUE(s.consistent_with(g));
    const auto e = apply_boundary(s, BoundaryCondition::periodic());
    EXPECT_TRUE(e.periodic);
    EXPECT_EQ(e.averages[0][0], 23.0);
    EXPECT_EQ(e.averages[5][0], 20.0);
    EXPECT_EQ(e.points[0][0], 13.0);
    EXPECT_EQ(e.points[6][0], 11.0);
}

TEST(Boundary, DirichletOverridesOnlyListedFields) {
    const auto g = make_grid(0.0, 1.0, 3);
    auto s = project_initial_data<2>(g, {[](double) { return 1.0; }, [](double) { return 0.5; }},
                                     [](double) { return 0.0; });
    const BoundaryCondition bc{BoundarySide::fixed({{1, 2.0}}), BoundarySide::fixed({{0, 3.0}})};
    const auto e = apply_boundary(s, bc);
    EXPECT_EQ(e.points[1], make_state<2>({1.0, 2.0}));
    EXPECT_EQ(e.averages[0], make_state<2>({1.0, 2.0}));
    EXPECT_EQ(e.points[4], make_state<2>({3.0, 0.5}));
    impose_dirichlet_nodes(s, bc);
    EXPECT_EQ(s.points.front()[1], 2.0);
    EXPECT_EQ(s.points.back()[0], 3.0);
}

TEST(Boundary, Validation) {
    const BoundaryCondition mixed{BoundarySide::periodic(), BoundarySide::extrapolation()};
    EXPECT_THROW(mixed.validate<2>(), std::invalid_argument);
    const BoundaryCondition bad_field{BoundarySide::fixed({{2, 1.0}}), BoundarySide::extrapolation()};
    EXPECT_THROW(bad_field.validate<2>(), std::invalid_argument);
    EXPECT_NO_THROW(bad_field.validate<3>());
}
