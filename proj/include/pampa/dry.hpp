#pragma once

namespace pampa {

/// Heights at or below this are treated as dry: velocities vanish.
inline constexpr double kDryHeight = 1e-14;
/// Below this height the velocity uses the filtered division.
inline constexpr double kFilterHeight = 1e-4;
inline constexpr double kFilterEpsilon = 5e-9;

/// Velocity from height and momentum with the near-dry filter
/// u = hu * h / (h^2 + f(h) eps), f(h) = 2(h/h0)^3 - 3(h/h0)^2 + 1.
inline double dry_velocity(double h, double hu) noexcept {
    if (h <= kDryHeight) return 0.0;
    if (h >= kFilterHeight) return hu / h;
    const double r = h / kFilterHeight;
    const double filter = 2.0 * r * r * r - 3.0 * r * r + 1.0;
    return hu * h / (h * h + filter * kFilterEpsilon);
}

}  // namespace pampa
