#pragma once

// Shared parameter set for tests: the bundled DJI-Phantom-2-class values,
// constructed directly so unit tests do not depend on the config layer.

#include "uavem/battery.hpp"
#include "uavem/geometry.hpp"
#include "uavem/maneuver.hpp"
#include "uavem/powertrain.hpp"
#include "uavem/wpt.hpp"

namespace testp {

inline uavem::AirframeParams airframe() {
    uavem::AirframeParams p;
    p.lift_coeff_n_s2_per_rad2 = 3.8305e-6;
    p.arm_length_m = 0.175;
    p.inertia_x_kg_m2 = 0.081;
    p.inertia_y_kg_m2 = 0.081;
    p.mass_kg = 1.3;
    p.max_rotor_velocity_rad_s = 1047.197;
    return p;
}

inline uavem::MotorParams motor() {
    return uavem::MotorParams::from_kv(920.0, 0.2, 0.04, 2.2518e-8, 2.0e-4,
                                       4.1904e-5);
}

inline uavem::BatteryParams battery(double capacity_as = 36000.0) {
    uavem::BatteryParams p;
    p.capacity_as = capacity_as;
    p.split_factor = 0.8;
    p.flow_rate_per_s = 4.5e-5 / 60.0;
    p.nominal_voltage_v = 11.1;
    p.c_rating_per_h = 1.0;
    return p;
}

inline uavem::DlcParams dlc() {
    uavem::DlcParams p;
    p.a1 = 0.445;
    p.a2 = 0.5441;
    p.b1_w = -0.75;
    p.b2_w = -0.231;
    p.sigma = 3.92;
    p.chi_m = 550e-9;
    p.visibility_m = 3000.0;
    p.wavelength_m = 810e-9;
    p.size_distribution = 0.82;
    p.source_position_m = {160.0, 80.0, 0.0};
    return p;
}

inline uavem::Vec3 external_force() { return {-5.0, 3.0, -12.74}; }

/// Displacement of the reference mission: [160,80,100] - [100,50,50].
inline uavem::Vec3 displacement() { return {60.0, 30.0, 50.0}; }

}  // namespace testp
