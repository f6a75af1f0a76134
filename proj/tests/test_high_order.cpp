#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace pampa;

namespace {

template <std::size_t N>
void expect_matrix_near(const Matrix<N>& a, const Matrix<N>& b, double tol) {
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c) EXPECT_NEAR(a[r][c], b[r][c], tol) << "(" << r << "," << c << ")";
}

template <std::size_t N>
Matrix<N> sum(const Matrix<N>& a, const Matrix<N>& b) {
    Matrix<N> c{};
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t k = 0; k < N; ++k) c[r][k] = a[r][k] + b[r][k];
    return c;
}

}  // namespace

TEST(SignMatrices, PartitionOfIdentityAndProjection) {
    std::mt19937_64 rng(tu::seed());
    std::uniform_real_distribution<double> h(0.01, 5.0), v(-15.0, 15.0);
    const SaintVenant sv{};
    const RotatingShallowWater rot{9.812, 1.0, 0.0};
    for (int k = 0; k < 2000; ++k) {
        const double hh = h(rng);
        const auto s2 = sign_matrices(make_state<2>({hh, hh * v(rng)}), sv);
        ASSERT_TRUE(s2);
        expect_matrix_near(sum(s2->plus, s2->minus), identity_matrix<2>(), 1e-12);
        expect_matrix_near(s2->plus * s2->plus, s2->plus, 1e-10);
        const auto s3 = sign_matrices(make_state<3>({hh, hh * v(rng), hh * v(rng)}), rot);
        ASSERT_TRUE(s3);
        expect_matrix_near(sum(s3->plus, s3->minus), identity_matrix<3>(), 1e-12);
        if (HasFailure()) break;
    }
}

TEST(SignMatrices, SupercriticalIsFullUpwind) {
    const auto s = sign_matrices(make_state<2>({2.0, 24.0}), SaintVenant{});
    ASSERT_TRUE(s);
    expect_matrix_near(s->plus, identity_matrix<2>(), 1e-14);
    expect_matrix_near(s->minus, Matrix<2>{}, 1e-14);
}

TEST(SignMatrices, AtRestMatchesDirectAssembly) {
    const SaintVenant m{1.0, 0.0};
    const auto u = make_state<2>({1.0, 0.0});
    const auto s = sign_matrices(u, m);
    ASSERT_TRUE(s);
    // R diag(0, 1) R^-1 with R = [[1, 1], [-1, 1]]
    const Matrix<2> expected{{{0.5, 0.5}, {0.5, 0.5}}};
    expect_matrix_near(s->plus, expected, 1e-15);
}

TEST(SignMatrices, SonicModeGetsHalf) {
    const RotatingShallowWater m{1.0, 0.0, 0.0};
    const auto s = sign_matrices(make_state<3>({1.0, 0.0, 0.0}), m);
    ASSERT_TRUE(s);
    // the transverse mode (0, 0, 1) with lambda = 0 splits evenly
    EXPECT_NEAR(s->plus[2][2], 0.5, 1e-15);
    EXPECT_NEAR(s->minus[2][2], 0.5, 1e-15);
    EXPECT_FALSE(sign_matrices(make_state<3>({0.0, 0.0, 0.0}), m));
}

TEST(BiasedDerivatives, ExactOnQuadratics) {
    const double dx = 0.2, xj = 1.3;
    auto sample = [](auto f, double x) { return make_state<2>({f(x), 2.0 * f(x)}); };
    auto lin = [](double x) { return x; };
    auto quad = [](double x) { return x * x; };
    auto cst = [](double) { return 4.0; };
    const auto zero = left_biased_derivative(sample(cst, xj - dx), sample(cst, xj - 0.5 * dx), sample(cst, xj), dx);
    EXPECT_LT(max_abs(zero), 1e-13);
    for (auto [f, d] : {std::pair<std::function<double(double)>, double>{lin, 1.0}, {quad, 2.0 * xj}}) {
        const auto l = left_biased_derivative(sample(f, xj - dx), sample(f, xj - 0.5 * dx), sample(f, xj), dx);
        const auto r = right_biased_derivative(sample(f, xj), sample(f, xj + 0.5 * dx), sample(f, xj + dx), dx);
        EXPECT_NEAR(l[0], d, 1e-12);
        EXPECT_NEAR(r[0], d, 1e-12);
        EXPECT_NEAR(l[1], 2.0 * d, 1e-12);
    }
}

TEST(PointResiduals, SteadyGivesZeroAndEqualSplitSums) {
    const SaintVenant m{};
    const auto u = make_state<2>({1.0, 0.5});
    const auto D = make_state<2>({0.3, -1.1});
    const auto r = high_order_point_residuals(u, BiasedDerivatives<2>{D, D}, m);
    ASSERT_TRUE(r);
    EXPECT_LT(max_abs(r->from_left + r->from_right - D), 1e-13);
    const auto z = high_order_point_residuals(u, BiasedDerivatives<2>{}, m);
    ASSERT_TRUE(z);
    EXPECT_EQ(max_abs(z->from_left) + max_abs(z->from_right), 0.0);
    const auto sup = high_order_point_residuals(make_state<2>({2.0, 24.0}), BiasedDerivatives<2>{D, D}, m);
    ASSERT_TRUE(sup);
    EXPECT_LT(max_abs(sup->from_right), 1e-14);
}

TEST(NodeFlux, ZeroSourceIsPhysicalFlux) {
    const SaintVenant m{};
    const auto u = make_state<2>({1.3, 0.2});
    EXPECT_EQ(high_order_node_flux(u, StateVector<2>{}, m), m.flux(u));
}
