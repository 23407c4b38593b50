#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include "uavem/errors.hpp"

namespace uavem {

/// Standard gravity used throughout (m/s^2). With a 1.3 kg airframe the
/// weight comes out to 12.74 N, which is what the bundled parameter set
/// carries in its external-force vector.
inline constexpr double kGravity = 9.8;

/// 3-vector in a right-handed Cartesian frame. Units depend on context:
/// meters for positions, newtons for forces.
struct Vec3 {
    double x{0.0};
    double y{0.0};
    double z{0.0};

    double norm_sq() const { return x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm_sq()); }
    bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

/// Polar/azimuthal decomposition of a direction.
struct SphericalAngles {
    double polar_rad{0.0};    ///< angle from +z, in [0, pi]
    double azimuth_rad{0.0};  ///< angle in the x-y plane, in (-pi, pi]
};

/// Direction of `v` in spherical coordinates. The azimuth uses the
/// full-quadrant arctangent, so x = 0 needs no special casing.
///
/// Throws DomainError for the zero vector, which has no direction.
inline SphericalAngles to_spherical(const Vec3& v) {
    const double r = v.norm();
    if (r == 0.0) {
        throw DomainError("to_spherical: zero-magnitude vector has no direction");
    }
    double azimuth = std::atan2(v.y, v.x);
    if (azimuth <= -std::numbers::pi) azimuth = std::numbers::pi;
    const double polar = std::acos(std::clamp(v.z / r, -1.0, 1.0));
    return {polar, azimuth};
}

}  // namespace uavem
