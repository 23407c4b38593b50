#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "uavem/errors.hpp"
#include "uavem/geometry.hpp"

namespace uavem {

/// Quadrotor airframe constants.
struct AirframeParams {
    double lift_coeff_n_s2_per_rad2{0.0};  ///< thrust per rotor = lift_coeff * v^2
    double arm_length_m{0.0};              ///< rotor to center distance
    double inertia_x_kg_m2{0.0};
    double inertia_y_kg_m2{0.0};
    double mass_kg{0.0};
    double max_rotor_velocity_rad_s{0.0};

    void validate() const {
        if (!(lift_coeff_n_s2_per_rad2 > 0.0) || !(arm_length_m > 0.0) ||
            !(inertia_x_kg_m2 > 0.0) || !(inertia_y_kg_m2 > 0.0) ||
            !(mass_kg > 0.0) || !(max_rotor_velocity_rad_s > 0.0)) {
            throw ConfigError("airframe parameters must all be strictly positive");
        }
    }
};

/// Magnitude of the maximum total force: four rotors at v_max.
inline double max_thrust(const AirframeParams& p) {
    return 4.0 * p.lift_coeff_n_s2_per_rad2 * p.max_rotor_velocity_rad_s *
           p.max_rotor_velocity_rad_s;
}

/// Rotor velocity that balances an external force: sqrt(|f| / (4 rho)).
/// Zero force needs no thrust, so the result is 0.
inline double hover_velocity(const Vec3& f_ext, double lift_coeff) {
    return std::sqrt(f_ext.norm() / (4.0 * lift_coeff));
}

/// Destination attitude (roll, pitch, yaw) plus the intermediates of its
/// derivation, kept for inspection:
///
///   pitch = acos((A cos(theta_D) - |F_e| cos(theta_e)) / F)
///   roll  = atan(tan(beta) * sin(pitch)),   yaw = 0
///
/// where A is the magnitude of the resultant force along the destination
/// direction when the airframe thrusts at F against external force F_e.
struct AttitudeSolution {
    double roll_rad{0.0};
    double pitch_rad{0.0};
    double yaw_rad{0.0};          ///< always 0 in this model
    double resultant_force_n{0.0};  ///< A
    double gamma{0.0};            ///< (|F_e|/F) sin(eta); |gamma| <= 1 when solvable
    double eta_rad{0.0};          ///< angle between F_e and the destination
    double beta_rad{0.0};         ///< azimuth of the required thrust direction
};

namespace detail {

inline double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

inline double wrap_principal(double angle) {
    // into (-pi, pi]
    const double two_pi = 2.0 * std::numbers::pi;
    angle = std::fmod(angle, two_pi);
    if (angle <= -std::numbers::pi) angle += two_pi;
    if (angle > std::numbers::pi) angle -= two_pi;
    return angle;
}

}  // namespace detail

/// Attitude that points the thrust-plus-external-force resultant at
/// `dest`, given maximum thrust magnitude `max_force_n`.
///
/// Throws InfeasibleError when the airframe is too weak to aim at the
/// destination (|gamma| > 1, the pitch equation leaves its domain, or
/// the signed resultant is non-positive), DomainError for a zero
/// destination vector.
inline AttitudeSolution solve_attitude(const Vec3& dest, const Vec3& f_ext,
                                       double max_force_n) {
    const double nd = dest.norm();
    if (nd == 0.0) {
        throw DomainError("solve_attitude: destination direction is undefined");
    }
    if (!(max_force_n > 0.0)) {
        throw DomainError("solve_attitude: maximum force must be positive");
    }
    constexpr double kGammaSlack = 1e-12;
    constexpr double kPitchSlack = 1e-9;
    constexpr double kTinySin = 1e-12;

    const double f = max_force_n;
    const double theta_d = std::acos(detail::clamp_unit(dest.z / nd));
    const double phi_d = std::atan2(dest.y, dest.x);
    const double nfe = f_ext.norm();

    AttitudeSolution s;
    s.yaw_rad = 0.0;

    if (nfe == 0.0) {
        // No external force: the thrust is the resultant, pitched at the
        // destination's polar angle.
        s.resultant_force_n = f;
        s.gamma = 0.0;
        s.eta_rad = 0.0;
        s.pitch_rad = theta_d;
        s.beta_rad = detail::wrap_principal(phi_d);
        const double sp = std::sin(s.pitch_rad);
        s.roll_rad = (std::abs(sp) < kTinySin)
                         ? 0.0
                         : std::atan(std::tan(s.beta_rad) * sp);
        return s;
    }

    const double theta_e = std::acos(detail::clamp_unit(f_ext.z / nfe));
    const double phi_e = std::atan2(f_ext.y, f_ext.x);
    const double eta = std::acos(detail::clamp_unit(dot(f_ext, dest) / (nfe * nd)));
    const double gamma = (nfe / f) * std::sin(eta);
    if (gamma > 1.0 + kGammaSlack) {
        throw InfeasibleError(
            "attitude infeasible: external force too strong to aim at destination",
            "infeasible-attitude");
    }
    // The closed form for A is an absolute value; the signed resultant
    // along the destination direction decides feasibility. It goes
    // non-positive exactly when the commanded thrust cannot out-pull the
    // external force component opposing the motion.
    const double disc = std::max(0.0, f * f - nfe * nfe * std::sin(eta) * std::sin(eta));
    const double a_signed = nfe * std::cos(eta) + std::sqrt(disc);
    if (!(a_signed > 0.0)) {
        throw InfeasibleError(
            "cannot translate: no net force toward destination at this rotor velocity",
            "cannot-translate");
    }
    const double arcsin_gamma = std::asin(detail::clamp_unit(gamma));
    const double a_sq = f * f + nfe * nfe +
                        2.0 * f * nfe * std::cos(eta + arcsin_gamma);
    const double a = std::sqrt(std::max(0.0, a_sq));

    const double pitch_arg = (a * std::cos(theta_d) - nfe * std::cos(theta_e)) / f;
    if (std::abs(pitch_arg) > 1.0 + kPitchSlack) {
        throw InfeasibleError(
            "attitude infeasible: required thrust direction does not exist",
            "infeasible-attitude");
    }
    const double pitch = std::acos(detail::clamp_unit(pitch_arg));

    double beta = phi_d;
    double roll = 0.0;
    const double sp = std::sin(pitch);
    if (std::abs(sp) >= kTinySin) {
        const double asin_arg = nfe * std::sin(theta_e) *
                                std::sin(phi_d - phi_e) / (f * sp);
        beta = phi_d - std::asin(detail::clamp_unit(asin_arg));
        roll = std::atan(std::tan(beta) * sp);
    }
    // roll stays 0 for pure-vertical attitudes, where it is undefined.

    s.resultant_force_n = a;
    s.gamma = gamma;
    s.eta_rad = eta;
    s.beta_rad = detail::wrap_principal(beta);
    s.pitch_rad = pitch;
    s.roll_rad = roll;
    return s;
}

/// Which form to use for the translation-stage duration.
enum class StageTwoFormula {
    PaperLiteral,  ///< sqrt(2 d A / m), the originally printed form
    Corrected,     ///< sqrt(2 d m / A), consistent with d = (A/m) t^2 / 2
};

/// Rotor-velocity command over one interval of the schedule.
struct RotorSegment {
    double t_begin_s{0.0};
    double t_end_s{0.0};
    std::array<double, 4> velocities_rad_s{};  ///< rotors 1..4
    int stage{0};                              ///< 1..5

    double duration_s() const { return t_end_s - t_begin_s; }
};

/// Six-stage bang-bang maneuver schedule: 14 switching times, the
/// velocity quadruple on each interval, and the hover command that takes
/// over once the destination is reached (stage 6).
struct ManeuverPlan {
    std::array<double, 14> switching_times_s{};  ///< tau_1..tau_14 (tau_0 = 0)
    std::vector<RotorSegment> segments;          ///< 14 segments tiling (0, tau_14]
    std::array<double, 4> hover_velocities_rad_s{};  ///< stage 6, t > tau_14
    double commanded_velocity_rad_s{0.0};  ///< the velocity driving stages 1-5
    AttitudeSolution attitude;
    double half_distance_m{0.0};  ///< d_2 = d_4, symmetric translation split
    StageTwoFormula stage2_mode{StageTwoFormula::Corrected};

    double total_time_s() const { return switching_times_s[13]; }

    /// Duration of stage s in 1..5.
    double stage_duration_s(int stage) const {
        const auto& t = switching_times_s;
        switch (stage) {
            case 1: return t[3];
            case 2: return t[4] - t[3];
            case 3: return t[8] - t[4];
            case 4: return t[9] - t[8];
            case 5: return t[13] - t[9];
            default: throw DomainError("stage_duration_s: stage must be 1..5");
        }
    }

    /// Rotor command at time t > 0 (stage-6 hover beyond tau_14).
    std::array<double, 4> velocities_at(double t) const {
        if (!(t > 0.0)) throw DomainError("velocities_at: t must be > 0");
        for (const auto& seg : segments) {
            if (t > seg.t_begin_s && t <= seg.t_end_s) return seg.velocities_rad_s;
        }
        return hover_velocities_rad_s;
    }
};

namespace detail {

/// Duration of one attitude stage: bang-bang rotation through the pitch
/// and roll deltas, each axis accelerated then braked at the torque the
/// velocity pattern produces.
inline double attitude_stage_duration(double dpsi_p, double dpsi_r,
                                      const AirframeParams& p, double v) {
    const double denom = p.arm_length_m * p.lift_coeff_n_s2_per_rad2;
    return (2.0 / v) * (std::sqrt(dpsi_p * p.inertia_y_kg_m2 / denom) +
                        std::sqrt(dpsi_r * p.inertia_x_kg_m2 / denom));
}

}  // namespace detail

/// Build the full six-stage schedule for moving `dest` away (expressed
/// relative to the current position) under constant external force.
///
/// Stage 1 rotates from hover attitude to the computed one, stage 3 to
/// its mirror for braking, stage 5 back to level; stages 2 and 4 cover
/// half the straight-line distance each under the resultant force A.
///
/// Throws InfeasibleError when the attitude is unsolvable or when no
/// positive resultant toward the destination exists at this rotor
/// velocity (commanded velocity at or below the hover threshold).
inline ManeuverPlan build_plan(const Vec3& dest, const Vec3& f_ext,
                               const AirframeParams& p, StageTwoFormula mode) {
    const double nd = dest.norm();
    if (nd == 0.0) {
        throw DomainError("build_plan: zero displacement has no direction");
    }
    const double v = p.max_rotor_velocity_rad_s;
    const double f = max_thrust(p);
    const AttitudeSolution att = solve_attitude(dest, f_ext, f);

    const double dpsi_p = std::abs(att.pitch_rad);
    const double dpsi_r = std::abs(att.roll_rad);

    // Halves of each attitude stage, per axis. Stage 3 swings through
    // twice the angle (attitude to its mirror image).
    auto half_times = [&](double scale) {
        const double denom = p.arm_length_m * p.lift_coeff_n_s2_per_rad2;
        const double tp = std::sqrt(scale * dpsi_p * p.inertia_y_kg_m2 / denom) / v;
        const double tr = std::sqrt(scale * dpsi_r * p.inertia_x_kg_m2 / denom) / v;
        return std::array<double, 2>{tp, tr};
    };
    const auto [tp1, tr1] = half_times(1.0);
    const auto [tp3, tr3] = half_times(2.0);

    const double d_half = nd / 2.0;
    const double a = att.resultant_force_n;
    const double t_trans = (mode == StageTwoFormula::Corrected)
                               ? std::sqrt(2.0 * d_half * p.mass_kg / a)
                               : std::sqrt(2.0 * d_half * a / p.mass_kg);
    if (!std::isfinite(t_trans)) {
        throw NumericalError("build_plan: translation time is not finite");
    }

    const double vd = v / std::numbers::sqrt2;
    // Sub-interval patterns: one rotor off, the opposite one at full
    // speed, the remaining pair at v/sqrt(2); reversing the off/full pair
    // brakes the rotation. Rotor order is [v1, v2, v3, v4].
    const std::array<double, 4> accel_p{vd, 0.0, vd, v};
    const std::array<double, 4> brake_p{vd, v, vd, 0.0};
    const std::array<double, 4> accel_r{0.0, vd, v, vd};
    const std::array<double, 4> brake_r{v, vd, 0.0, vd};
    const std::array<double, 4> translate{v, v, v, v};

    ManeuverPlan plan;
    plan.commanded_velocity_rad_s = v;
    plan.attitude = att;
    plan.half_distance_m = d_half;
    plan.stage2_mode = mode;
    plan.hover_velocities_rad_s.fill(hover_velocity(f_ext, p.lift_coeff_n_s2_per_rad2));

    struct Piece {
        double duration;
        const std::array<double, 4>* pattern;
        int stage;
    };
    const Piece pieces[14] = {
        {tp1, &accel_p, 1}, {tp1, &brake_p, 1}, {tr1, &accel_r, 1}, {tr1, &brake_r, 1},
        {t_trans, &translate, 2},
        {tp3, &accel_p, 3}, {tp3, &brake_p, 3}, {tr3, &accel_r, 3}, {tr3, &brake_r, 3},
        {t_trans, &translate, 4},
        {tp1, &accel_p, 5}, {tp1, &brake_p, 5}, {tr1, &accel_r, 5}, {tr1, &brake_r, 5},
    };

    double t = 0.0;
    plan.segments.reserve(14);
    for (int i = 0; i < 14; ++i) {
        const double t_next = t + pieces[i].duration;
        plan.segments.push_back(
            {t, t_next, *pieces[i].pattern, pieces[i].stage});
        plan.switching_times_s[static_cast<std::size_t>(i)] = t_next;
        t = t_next;
    }
    if (!std::isfinite(plan.total_time_s())) {
        throw NumericalError("build_plan: schedule times are not finite");
    }
    return plan;
}

}  // namespace uavem
