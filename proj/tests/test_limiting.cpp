#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace pampa;

TEST(ThetaFlux, Cases) {
    // no correction needed
    EXPECT_EQ(theta_flux(0.0, 3.0, 1.0, 0.0, 1.0, 0.0, 1.0), 1.0);
    // dry interface
    EXPECT_EQ(theta_flux(0.5, 3.0, 0.0, 0.0, 0.0, 0.0, 1.0), 0.0);
    // h+ = h- = 1, u = 0, alpha = 1, |dG| = 1
    EXPECT_DOUBLE_EQ(theta_flux(1.0, 3.0, 1.0, 0.0, 1.0, 0.0, 1.0), 0.5);
    EXPECT_DOUBLE_EQ(theta_flux(-1.0, 3.0, 1.0, 0.0, 1.0, 0.0, 1.0), 0.5);
    // smaller budget on one side wins
    EXPECT_DOUBLE_EQ(theta_flux(1.0, 3.0, 0.5, 0.0, 1.0, 0.0, 1.0), 0.25);
}

TEST(ThetaResidual, Cases) {
    const double dx = 0.1;
    EXPECT_EQ(theta_residual_to_right_node(0.0, 2.0, 1.0, 0.0, 1.0, dx), 1.0);
    EXPECT_EQ(theta_residual_to_left_node(0.0, 2.0, 1.0, 0.0, 1.0, dx), 1.0);
    EXPECT_EQ(theta_residual_to_right_node(3.0, 2.0, 0.0, 0.0, 1.0, dx), 0.0);
    // budget h (alpha + u) / 2 = 0.5 over dx |dPhi| / 2 = 0.5 * 0.1 * 20
    EXPECT_DOUBLE_EQ(theta_residual_to_right_node(20.0, 2.0, 1.0, 0.0, 1.0, dx), 0.5);
    // velocity direction matters: left bound uses alpha - u
    EXPECT_DOUBLE_EQ(theta_residual_to_left_node(20.0, 2.0, 1.0, 0.5, 1.0, dx), 0.25);
    EXPECT_DOUBLE_EQ(theta_residual_to_right_node(20.0, 2.0, 1.0, 0.5, 1.0, dx), 0.75);
}

TEST(ThetaAll, RangeOnRandomInputs) {
    std::mt19937_64 rng(tu::seed());
    std::uniform_real_distribution<double> d(-10.0, 10.0), h(0.0, 5.0), a(0.0, 20.0);
    for (int k = 0; k < 10000; ++k) {
        const double t1 = theta_flux(d(rng), d(rng), h(rng), d(rng), h(rng), d(rng), a(rng));
        const double t2 = theta_residual_to_right_node(d(rng), d(rng), h(rng), d(rng), a(rng), 0.1);
        EXPECT_GE(t1, 0.0);
        EXPECT_LE(t1, 1.0);
        EXPECT_GE(t2, 0.0);
        EXPECT_LE(t2, 1.0);
    }
}

TEST(SteadyIndicator, Cutoff) {
    EXPECT_EQ(cutoff_function(0.0), 0.0);
    EXPECT_DOUBLE_EQ(cutoff_function(0.1), 0.5);
    EXPECT_NEAR(cutoff_function(0.2), 1048576.0 / 1048577.0, 1e-15);
    EXPECT_EQ(cutoff_function(1e6), 1.0);
    EXPECT_EQ(steady_indicator(5.0, 5.0, 5.0, 0.1, 1.0), 0.0);
    EXPECT_GT(steady_indicator(5.0, 5.2, 5.4, 0.1, 1.0), 0.999);
}

TEST(Oscillation, ConstantHeightGivesNoDamping) {
    const std::vector<double> p(11, 2.0), a(10, 2.0);
    const auto s = oscillation_sigma(p, a, false);
    for (double v : s) EXPECT_EQ(v, 0.0);
    EXPECT_EQ(theta_oscillation(3.0, 0.01, 0.1, 0.0), 1.0);
}

namespace {

std::vector<double> sigma_of(const std::function<double(double)>& h, std::size_t n, bool periodic) {
    const auto g = make_grid(0.0, 1.0, n);
    const auto s = project_initial_data<2>(g, {h, [](double) { return 0.0; }}, [](double) { return 0.0; });
    std::vector<double> p, a;
    for (const auto& u : s.points) p.push_back(u[0]);
    for (const auto& u : s.averages) a.push_back(u[0]);
    return oscillation_sigma(p, a, periodic);
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

}  // namespace

TEST(Oscillation, SmoothDataDampingVanishesUnderRefinement) {
    auto h = [](double x) { return 1.0 + 0.2 * std::sin(2.0 * std::numbers::pi * x); };
    double prev = 0.0;
    for (std::size_t n : {20, 40, 80}) {
        const double s = max_of(sigma_of(h, n, true));
        if (prev > 0.0) EXPECT_LT(s, 0.3 * prev);
        prev = s;
    }
    // 1 - theta = O(dt) at fixed dx
    const double s = max_of(sigma_of(h, 40, true));
    const double t1 = theta_oscillation(1.0, 1e-3, 0.025, s), t2 = theta_oscillation(1.0, 5e-4, 0.025, s);
    EXPECT_NEAR((1.0 - t1) / (1.0 - t2), 2.0, 1e-3);
}

TEST(Oscillation, KinkOnSmoothBackgroundDampsMonotonically) {
    double prev_theta = 1.0;
    for (double slope : {0.1, 0.5, 2.0}) {
        auto h = [slope](double x) { return 1.0 + 0.2 * std::sin(2.0 * std::numbers::pi * x) + slope * std::abs(x - 0.5); };
        const auto s = sigma_of(h, 20, false);
        // node 10 at x = 0.5 carries the kink
        const double th = theta_oscillation(2.0, 0.01, 0.05, std::max(s[9], s[10]));
        EXPECT_LT(th, prev_theta);
        prev_theta = th;
    }
}

TEST(Oscillation, SigmaIsAmplitudeInvariant) {
    const auto a = sigma_of([](double x) { return 1.0 + 0.5 * std::abs(x - 0.5); }, 20, false);
    const auto b = sigma_of([](double x) { return 3.0 + 2.0 * std::abs(x - 0.5); }, 20, false);
    for (std::size_t c = 0; c < a.size(); ++c) EXPECT_NEAR(a[c], b[c], 1e-12);
}

TEST(Combine, MinSemanticsAndSteadyOverride) {
    const std::vector<double> pp_node{1.0, 1.0, 1.0}, pp_cell{0.7, 1.0}, oe{0.3, 0.9};
    const auto b = combine_thetas(pp_node, pp_cell, oe, {false, false}, false);
    EXPECT_DOUBLE_EQ(b.theta_cell[0], 0.3);
    EXPECT_DOUBLE_EQ(b.theta_cell[1], 0.9);
    EXPECT_DOUBLE_EQ(b.theta_node[0], 0.3);
    EXPECT_DOUBLE_EQ(b.theta_node[1], 0.3);
    EXPECT_DOUBLE_EQ(b.theta_node[2], 0.9);
    const auto st = combine_thetas(pp_node, {1.0, 1.0}, oe, {true, true}, false);
    for (double t : st.theta_node) EXPECT_EQ(t, 1.0);
    for (double t : st.theta_cell) EXPECT_EQ(t, 1.0);
    const auto per = combine_thetas(pp_node, pp_cell, oe, {false, false}, true);
    EXPECT_DOUBLE_EQ(per.theta_node[2], 0.3);
}
