#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "uavem/geometry.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using uavem::Vec3;
using uavem::to_spherical;

TEST_CASE("to_spherical of the +z axis") {
    const auto s = to_spherical({0.0, 0.0, 1.0});
    CHECK(s.polar_rad == 0.0);
    CHECK(s.azimuth_rad == 0.0);
}

TEST_CASE("to_spherical of the reference displacement") {
    // Frozen from direct arithmetic: acos(50/sqrt(7000)), atan2(30, 60).
    const auto s = to_spherical({60.0, 30.0, 50.0});
    CHECK_THAT(s.polar_rad, WithinRel(0.9302740141154721, 1e-12));
    CHECK_THAT(s.azimuth_rad, WithinRel(0.4636476090008061, 1e-12));
}

TEST_CASE("to_spherical of the reference external force") {
    const auto s = to_spherical({-5.0, 3.0, -12.74});
    CHECK_THAT(s.polar_rad, WithinRel(2.712363367880742, 1e-12));
    CHECK_THAT(s.azimuth_rad, WithinRel(2.601173153319209, 1e-12));
}

TEST_CASE("to_spherical rejects the zero vector") {
    CHECK_THROWS_AS(to_spherical({0.0, 0.0, 0.0}), uavem::DomainError);
}

TEST_CASE("spherical angles stay in their principal ranges") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 2000; ++i) {
        const Vec3 v{u(rng), u(rng), u(rng)};
        if (v.norm() == 0.0) continue;
        const auto s = to_spherical(v);
        CHECK(s.polar_rad >= 0.0);
        CHECK(s.polar_rad <= std::numbers::pi);
        CHECK(s.azimuth_rad > -std::numbers::pi);
        CHECK(s.azimuth_rad <= std::numbers::pi);
    }
    // the atan2 branch cut lands on +pi
    CHECK(to_spherical({-1.0, -0.0, 0.0}).azimuth_rad == std::numbers::pi);
}

TEST_CASE("spherical round trip recovers the direction") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 500; ++i) {
        const Vec3 v{u(rng), u(rng), u(rng)};
        const double r = v.norm();
        if (r < 1e-9) continue;
        const auto s = to_spherical(v);
        CHECK_THAT(r * std::sin(s.polar_rad) * std::cos(s.azimuth_rad),
                   WithinAbs(v.x, 1e-9 * r));
        CHECK_THAT(r * std::sin(s.polar_rad) * std::sin(s.azimuth_rad),
                   WithinAbs(v.y, 1e-9 * r));
        CHECK_THAT(r * std::cos(s.polar_rad), WithinAbs(v.z, 1e-9 * r));
    }
}
