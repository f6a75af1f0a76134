#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>

namespace pampa {

/**
 * @brief Fixed-size vector of conserved variables.
 *
 * Component 0 is always the water height h, component 1 the discharge hu and,
 * for the rotating model, component 2 the transverse momentum hv.
 */
template <std::size_t N>
struct StateVector {
    std::array<double, N> v{};

    static constexpr std::size_t size() noexcept { return N; }

    constexpr double& operator[](std::size_t i) noexcept { return v[i]; }
    constexpr const double& operator[](std::size_t i) const noexcept { return v[i]; }

    constexpr auto begin() noexcept { return v.begin(); }
    constexpr auto end() noexcept { return v.end(); }
    constexpr auto begin() const noexcept { return v.begin(); }
    constexpr auto end() const noexcept { return v.end(); }

    static constexpr StateVector constant(double c) noexcept {
        StateVector s;
        s.v.fill(c);
        return s;
    }

    constexpr StateVector& operator+=(const StateVector& o) noexcept {
        for (std::size_t i = 0; i < N; ++i) v[i] += o.v[i];
        return *this;
    }
    constexpr StateVector& operator-=(const StateVector& o) noexcept {
        for (std::size_t i = 0; i < N; ++i) v[i] -= o.v[i];
        return *this;
    }
    constexpr StateVector& operator*=(double s) noexcept {
        for (auto& x : v) x *= s;
        return *this;
    }

    friend constexpr StateVector operator+(StateVector a, const StateVector& b) noexcept { return a += b; }
    friend constexpr StateVector operator-(StateVector a, const StateVector& b) noexcept { return a -= b; }
    friend constexpr StateVector operator*(double s, StateVector a) noexcept { return a *= s; }
    friend constexpr StateVector operator*(StateVector a, double s) noexcept { return a *= s; }
    friend constexpr StateVector operator-(StateVector a) noexcept { return a *= -1.0; }
    friend constexpr bool operator==(const StateVector&, const StateVector&) = default;
};

template <std::size_t N>
constexpr StateVector<N> make_state(std::initializer_list<double> values) {
    if (values.size() != N) throw std::invalid_argument("make_state: wrong number of components");
    StateVector<N> s;
    std::size_t i = 0;
    for (double x : values) s[i++] = x;
    return s;
}

template <std::size_t N>
double max_abs(const StateVector<N>& s) noexcept {
    double m = 0.0;
    for (double x : s) m = std::max(m, std::abs(x));
    return m;
}

template <std::size_t N>
bool all_finite(const StateVector<N>& s) noexcept {
    for (double x : s)
        if (!std::isfinite(x)) return false;
    return true;
}

template <std::size_t N>
using Matrix = std::array<std::array<double, N>, N>;

template <std::size_t N>
constexpr Matrix<N> identity_matrix() noexcept {
    Matrix<N> m{};
    for (std::size_t i = 0; i < N; ++i) m[i][i] = 1.0;
    return m;
}

template <std::size_t N>
constexpr StateVector<N> operator*(const Matrix<N>& m, const StateVector<N>& x) noexcept {
    StateVector<N> y;
    for (std::size_t i = 0; i < N; ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < N; ++k) acc += m[i][k] * x[k];
        y[i] = acc;
    }
    return y;
}

template <std::size_t N>
constexpr Matrix<N> operator*(const Matrix<N>& a, const Matrix<N>& b) noexcept {
    Matrix<N> c{};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t k = 0; k < N; ++k)
            for (std::size_t j = 0; j < N; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

}  // namespace pampa
