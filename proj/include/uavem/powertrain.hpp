#pragma once

#include <cmath>

#include "uavem/errors.hpp"

namespace uavem {

/// rad/s per rpm/V: converts a datasheet KV rating to SI motor constants.
inline constexpr double kKvToSi = 9.5493;

/// Brushless DC motor electrical parameters (steady-state model):
///
///   e = R i + kappa_E v
///   i = (T_f + kappa_0 v^2 + D_f v + J dv/dt) / kappa_T
///
/// with v the rotor angular velocity in rad/s.
struct MotorParams {
    double resistance_ohm{0.0};
    double voltage_const_vs_per_rad{0.0};   ///< kappa_E
    double torque_const_nm_per_a{0.0};      ///< kappa_T
    double friction_torque_nm{0.0};         ///< T_f
    double drag_coeff_nm_s2_per_rad2{0.0};  ///< kappa_0
    double damping_nm_s_per_rad{0.0};       ///< D_f
    double rotor_inertia_kg_m2{0.0};        ///< J
    double kv_rpm_per_volt{0.0};            ///< raw datasheet value, 0 if unknown

    /// Build from a datasheet KV rating; kappa_E = kappa_T = 9.5493 / KV.
    /// Both the raw rating and the derived SI constants are kept.
    static MotorParams from_kv(double kv_rpm_per_volt, double resistance_ohm,
                               double friction_torque_nm,
                               double drag_coeff_nm_s2_per_rad2,
                               double damping_nm_s_per_rad,
                               double rotor_inertia_kg_m2) {
        MotorParams p;
        p.kv_rpm_per_volt = kv_rpm_per_volt;
        p.resistance_ohm = resistance_ohm;
        p.voltage_const_vs_per_rad = kKvToSi / kv_rpm_per_volt;
        p.torque_const_nm_per_a = p.voltage_const_vs_per_rad;
        p.friction_torque_nm = friction_torque_nm;
        p.drag_coeff_nm_s2_per_rad2 = drag_coeff_nm_s2_per_rad2;
        p.damping_nm_s_per_rad = damping_nm_s_per_rad;
        p.rotor_inertia_kg_m2 = rotor_inertia_kg_m2;
        return p;
    }

    void validate() const {
        if (!(resistance_ohm > 0.0) || !(voltage_const_vs_per_rad > 0.0) ||
            !(torque_const_nm_per_a > 0.0) || !(friction_torque_nm > 0.0) ||
            !(drag_coeff_nm_s2_per_rad2 > 0.0) || !(damping_nm_s_per_rad > 0.0) ||
            !(rotor_inertia_kg_m2 > 0.0)) {
            throw ConfigError("motor parameters must all be strictly positive");
        }
    }
};

/// Coefficients of the per-motor power polynomial
///
///   P(v, dv/dt) = c1 + c2 v + c3 v^2 + c4 v^3 + c5 v^4
///              + dv/dt (c6 + c7 dv/dt + c8 v + c9 v^2)
///
/// obtained by substituting the motor voltage/current laws into e * i.
struct MotorEnergyConstants {
    double c1{0.0}, c2{0.0}, c3{0.0}, c4{0.0}, c5{0.0};
    double c6{0.0}, c7{0.0}, c8{0.0}, c9{0.0};
};

/// Motor current for a rotor spinning at `v` rad/s (v >= 0).
inline double motor_current(double v, double dv_dt, const MotorParams& p) {
    return (p.friction_torque_nm + p.drag_coeff_nm_s2_per_rad2 * v * v +
            p.damping_nm_s_per_rad * v + p.rotor_inertia_kg_m2 * dv_dt) /
           p.torque_const_nm_per_a;
}

/// Terminal voltage for current `i` at rotor velocity `v`.
inline double motor_voltage(double i, double v, const MotorParams& p) {
    return p.resistance_ohm * i + p.voltage_const_vs_per_rad * v;
}

/// The nine closed-form power-polynomial constants for a motor.
inline MotorEnergyConstants energy_constants(const MotorParams& p) {
    const double r = p.resistance_ohm;
    const double ke = p.voltage_const_vs_per_rad;
    const double kt = p.torque_const_nm_per_a;
    const double tf = p.friction_torque_nm;
    const double k0 = p.drag_coeff_nm_s2_per_rad2;
    const double df = p.damping_nm_s_per_rad;
    const double j = p.rotor_inertia_kg_m2;

    MotorEnergyConstants c;
    c.c1 = r * tf * tf / (kt * kt);
    c.c2 = (tf / kt) * (ke + 2.0 * r * df / kt);
    c.c3 = (df / kt) * (r * df / kt + ke) + 2.0 * r * tf * k0 / (kt * kt);
    c.c4 = (k0 / tf) * c.c2;
    c.c5 = (k0 * k0) / (tf * tf) * c.c1;
    c.c6 = (2.0 * j / tf) * c.c1;
    c.c7 = (j * j) / (tf * tf) * c.c1;
    c.c8 = (j / tf) * c.c2;
    c.c9 = (kt / tf) * c.c6;
    return c;
}

/// Per-motor electrical power at rotor velocity `v` and acceleration
/// `dv_dt`. Negative transients are reported as computed, not clamped;
/// the constant-velocity stage model never produces them.
inline double instantaneous_power(double v, double dv_dt,
                                  const MotorEnergyConstants& c) {
    const double steady =
        c.c1 + v * (c.c2 + v * (c.c3 + v * (c.c4 + v * c.c5)));
    const double transient = dv_dt * (c.c6 + c.c7 * dv_dt + c.c8 * v + c.c9 * v * v);
    return steady + transient;
}

}  // namespace uavem
