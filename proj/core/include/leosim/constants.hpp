#pragma once

#include <numbers>

namespace leosim::constants {

// Spherical Earth, two-body.
inline constexpr double earth_radius_km = 6371.0;
inline constexpr double earth_mu_km3_s2 = 398600.4418;
inline constexpr double sidereal_day_s = 86164.1;
inline constexpr double earth_rotation_rad_s = 2.0 * std::numbers::pi / sidereal_day_s;
inline constexpr double speed_of_light_km_s = 299792.458;

inline constexpr double deg_to_rad = std::numbers::pi / 180.0;
inline constexpr double rad_to_deg = 180.0 / std::numbers::pi;

}  // namespace leosim::constants
