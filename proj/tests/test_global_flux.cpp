#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace pampa;

namespace {

/// Trivial flux and a prescribed source S(x) in both components, for
/// exactness checks of the quadratures.
struct PolySource {
    static constexpr std::size_t kVars = 2;
    using State = StateVector<2>;
    double g = 1.0;
    std::function<double(double)> S;

    State flux(const State& u) const noexcept { return u; }
    State source_without_slope(const State&, double x) const noexcept { return State{{S(x), S(x)}}; }
    State source(const State& u, double x, double) const noexcept { return source_without_slope(u, x); }
    double max_wave_speed(const State&) const noexcept { return 1.0; }
    std::optional<Eigensystem<2>> eigensystem(const State&) const noexcept {
        return Eigensystem<2>{{1.0, 1.0}, identity_matrix<2>(), identity_matrix<2>()};
    }
    void validate() const {}
};
static_assert(ShallowWaterModel<PolySource>);

SourceIncrements<2> increments(const PolySource& m, double x_left, double dx, Quadrature q) {
    const CellRepresentation<2> u{StateVector<2>::constant(1.0), StateVector<2>::constant(1.0),
                                  StateVector<2>::constant(1.0)};
    return cell_quadrature(m, u, ScalarCell{}, x_left, dx, q).inc;
}

}  // namespace

TEST(Quadrature, ZeroAndConstantSources) {
    for (auto q : {Quadrature::sc_lobatto3, Quadrature::lobatto3a}) {
        const auto z = increments(PolySource{1.0, [](double) { return 0.0; }}, 0.0, 0.3, q);
        EXPECT_EQ(z.half[0], 0.0);
        EXPECT_EQ(z.full[0], 0.0);
        const auto one = increments(PolySource{1.0, [](double) { return 1.0; }}, 2.0, 0.3, q);
        EXPECT_NEAR(one.half[0], 0.15, 1e-16);
        EXPECT_NEAR(one.full[0], 0.3, 1e-16);
    }
}

TEST(Quadrature, ExactnessDegrees) {
    const PolySource sq{1.0, [](double x) { return x * x; }};
    const PolySource cube{1.0, [](double x) { return x * x * x; }};
    const auto a2 = increments(sq, 0.0, 1.0, Quadrature::lobatto3a);
    EXPECT_NEAR(a2.full[0], 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(a2.half[0], 1.0 / 24.0, 1e-15);
    const auto a3 = increments(cube, 0.0, 1.0, Quadrature::lobatto3a);
    EXPECT_NEAR(a3.full[0], 0.25, 1e-15);
    // half interval of IIIA is only exact to degree 2
    EXPECT_GT(std::abs(a3.half[0] - 1.0 / 64.0), 1e-4);

    const auto s3 = increments(cube, 0.0, 1.0, Quadrature::sc_lobatto3);
    EXPECT_NEAR(s3.full[0], 0.25, 1e-15);
    EXPECT_NEAR(s3.half[0], 1.0 / 64.0, 1e-15);
    // on a shifted cell as well
    const auto s3b = increments(cube, 1.0, 0.5, Quadrature::sc_lobatto3);
    EXPECT_NEAR(s3b.full[0], (std::pow(1.5, 4) - 1.0) / 4.0, 1e-14);
    EXPECT_NEAR(s3b.half[0], (std::pow(1.25, 4) - 1.0) / 4.0, 1e-14);
}

TEST(Quadrature, StillWaterOverQuadraticBottom) {
    const SaintVenant m{9.812, 0.0};
    const double w = 1.5, dx = 0.4, xl = 0.3;
    auto B = [](double x) { return 0.2 + 0.3 * x - 0.4 * x * x; };
    const ScalarCell bathy{B(xl), (B(xl) + 4.0 * B(xl + 0.5 * dx) + B(xl + dx)) / 6.0, B(xl + dx)};
    const CellRepresentation<2> u{make_state<2>({w - bathy.left, 0.0}), make_state<2>({w - bathy.avg, 0.0}),
                                  make_state<2>({w - bathy.right, 0.0})};
    for (auto q : {Quadrature::sc_lobatto3, Quadrature::lobatto3a}) {
        const auto inc = cell_quadrature(m, u, bathy, xl, dx, q).inc;
        const double hl = u.left[0], hr = u.right[0];
        EXPECT_NEAR(inc.full[1], 0.5 * m.g * (hr * hr - hl * hl), 1e-14);
        if (q == Quadrature::sc_lobatto3) {
            const double hm = w - B(xl + 0.5 * dx);
            EXPECT_NEAR(inc.half[1], 0.5 * m.g * (hm * hm - hl * hl), 1e-14);
        }
    }
}

TEST(Assembly, ZeroSourceGivesPhysicalFlux) {
    const SaintVenant m{9.812, 0.0};
    const auto g = make_grid(0.0, 1.0, 10);
    const auto s = project_initial_data<2>(g, {[](double x) { return 1.0 + 0.1 * x; }, [](double x) { return x; }},
                                           [](double) { return 0.0; });
    const auto G = assemble_global_flux(m, g, s, Quadrature::sc_lobatto3);
    for (std::size_t j = 0; j <= 10; ++j) EXPECT_LT(max_abs(G.G_nodes[j] - m.flux(s.points[j])), 1e-15);
    EXPECT_EQ(G.R_nodes[0], (StateVector<2>{}));
}

TEST(Assembly, StillWaterIsFlat) {
    const SaintVenant m{9.812, 0.0};
    const auto g = make_grid(-1.0, 1.0, 50);
    const auto s = tu::lake_at_rest(g, 4.000001, bench::shapes::twin_bumps);
    const auto G = assemble_global_flux(m, g, s, Quadrature::sc_lobatto3);
    EXPECT_LT(global_flux_spread(G, 1), 1e-13 * G.G_nodes[0][1]);
    EXPECT_LT(global_flux_spread(G, 0), 1e-15);
}

TEST(Assembly, NodeFluxIsFluxMinusPrefixSum) {
    const SaintVenant m{9.812, 0.03};
    const auto g = make_grid(0.0, 2.0, 16);
    const auto s = project_initial_data<2>(g, {[](double x) { return 1.0 + 0.2 * std::sin(3.0 * x); },
                                               [](double x) { return 0.5 + 0.1 * x; }},
                                           [](double x) { return 0.1 * std::cos(x); });
    const auto G = assemble_global_flux(m, g, s, Quadrature::sc_lobatto3);
    StateVector<2> R;
    for (std::size_t c = 0; c < g.n_cells; ++c) {
        R += cell_quadrature(m, cell_of(s, c), bathy_cell_of(s.bathy_points, s.bathy_averages, c), g.node(c), g.dx,
                             Quadrature::sc_lobatto3)
                 .inc.full;
        EXPECT_LT(max_abs(G.G_nodes[c + 1] - (m.flux(s.points[c + 1]) - R)), 1e-14);
        EXPECT_LT(max_abs(G.G_nodes[c + 1] - high_order_node_flux(s.points[c + 1], G.R_nodes[c + 1], m)), 1e-14);
    }
}

TEST(Quadrature, Names) {
    EXPECT_EQ(parse_quadrature("scIII"), Quadrature::sc_lobatto3);
    EXPECT_EQ(parse_quadrature("IIIA"), Quadrature::lobatto3a);
    EXPECT_EQ(to_string(Quadrature::lobatto3a), "IIIA");
    EXPECT_THROW(parse_quadrature("gauss"), std::invalid_argument);
}
