// geo.hpp - great-circle distance on the WGS-84 sphere.
#pragma once

#include <algorithm>
#include <cmath>

namespace slotmatch {

inline constexpr double kEarthRadiusM = 6371000.0;

// Haversine distance in meters between two (lat, lon) points in degrees.
inline double haversine_m(double lat1, double lon1, double lat2, double lon2) {
    constexpr double deg = M_PI / 180.0;
    const double phi1 = lat1 * deg;
    const double phi2 = lat2 * deg;
    const double dphi = (lat2 - lat1) * deg;
    const double dlam = (lon2 - lon1) * deg;
    const double a = std::sin(dphi / 2) * std::sin(dphi / 2) +
                     std::cos(phi1) * std::cos(phi2) *
                         std::sin(dlam / 2) * std::sin(dlam / 2);
    return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(a)));
}

}  // namespace slotmatch
