#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <numbers>
#include <numeric>
#include <vector>

#include "uavem/errors.hpp"
#include "uavem/geometry.hpp"
#include "uavem/integrate.hpp"
#include "uavem/maneuver.hpp"
#include "uavem/powertrain.hpp"

namespace uavem {

/// Ground nodes served during a hover window, each at constant power.
struct CommSchedule {
    std::vector<double> node_powers_w;
    double t_begin_s{0.0};
    double t_end_s{0.0};

    double total_power_w() const {
        return std::accumulate(node_powers_w.begin(), node_powers_w.end(), 0.0);
    }

    void validate() const {
        if (t_end_s < t_begin_s) {
            throw ConfigError("comm schedule: interval end precedes its start");
        }
        for (double p : node_powers_w) {
            if (!(p >= 0.0)) throw ConfigError("comm schedule: negative node power");
        }
    }
};

/// Mission energy decomposition (joules). The consumed total is the sum
/// of travel, hover and communication by construction.
struct EnergyReport {
    double e_travel_j{0.0};
    double e_hover_j{0.0};
    double e_comm_j{0.0};
    double e_harvested_j{0.0};
    double e_consumed_total_j{0.0};
    std::array<double, 5> per_stage_j{};  ///< travel energy per stage 1..5
};

inline EnergyReport make_energy_report(const std::array<double, 5>& per_stage,
                                       double e_hover, double e_comm,
                                       double e_harvested) {
    EnergyReport r;
    r.per_stage_j = per_stage;
    r.e_travel_j = std::accumulate(per_stage.begin(), per_stage.end(), 0.0);
    r.e_hover_j = e_hover;
    r.e_comm_j = e_comm;
    r.e_harvested_j = e_harvested;
    r.e_consumed_total_j = r.e_travel_j + r.e_hover_j + r.e_comm_j;
    return r;
}

/// Energy of one attitude stage. The bracket is the summed power of the
/// attitude velocity pattern {0, v/sqrt2, v/sqrt2, v} with the idle rotor
/// unpowered, which collapses to
///   3 c1 + (1+sqrt2) c2 v + 2 c3 v^2 + (1+1/sqrt2) c4 v^3 + 1.5 c5 v^4.
inline double stage_energy_attitude(double duration_s, double v,
                                    const MotorEnergyConstants& c) {
    const double bracket =
        3.0 * c.c1 + (1.0 + std::numbers::sqrt2) * c.c2 * v +
        2.0 * c.c3 * v * v +
        (1.0 + 1.0 / std::numbers::sqrt2) * c.c4 * v * v * v +
        1.5 * c.c5 * v * v * v * v;
    return duration_s * bracket;
}

/// Energy of one translation stage: four rotors at full commanded speed.
inline double stage_energy_translation(double duration_s, double v,
                                       const MotorEnergyConstants& c) {
    return duration_s * 4.0 * instantaneous_power(v, 0.0, c);
}

struct TravelEnergy {
    double total_j{0.0};
    std::array<double, 5> per_stage_j{};
};

/// Travel energy of a schedule: attitude formula on stages 1/3/5,
/// translation formula on stages 2/4 (stage-6 hover is billed separately
/// by hover_energy with a caller-chosen duration).
inline TravelEnergy travel_energy(const ManeuverPlan& plan,
                                  const MotorEnergyConstants& c) {
    TravelEnergy e;
    const double v = plan.commanded_velocity_rad_s;
    for (int s = 1; s <= 5; ++s) {
        const double dur = plan.stage_duration_s(s);
        const double es = (s % 2 == 1) ? stage_energy_attitude(dur, v, c)
                                       : stage_energy_translation(dur, v, c);
        e.per_stage_j[static_cast<std::size_t>(s - 1)] = es;
        e.total_j += es;
    }
    return e;
}

/// Energy to hold position against `f_ext` for `duration_s`: four rotors
/// at the hover velocity. Infeasible when that velocity exceeds the
/// airframe limit.
inline double hover_energy(double duration_s, const Vec3& f_ext,
                           double lift_coeff, double max_rotor_velocity_rad_s,
                           const MotorEnergyConstants& c) {
    const double vh = hover_velocity(f_ext, lift_coeff);
    if (vh > max_rotor_velocity_rad_s) {
        throw InfeasibleError("hover infeasible: required rotor velocity exceeds the maximum",
                              "infeasible-hover");
    }
    return duration_s * 4.0 * instantaneous_power(vh, 0.0, c);
}

/// Communication energy for piecewise-constant node powers.
inline double comm_energy(const CommSchedule& sched) {
    sched.validate();
    return sched.total_power_w() * (sched.t_end_s - sched.t_begin_s);
}

/// Communication energy for a time-varying total power profile,
/// trapezoid-integrated with step `dt`.
template <typename PowerFn>
    requires std::invocable<PowerFn&, double>
double comm_energy(PowerFn&& total_power_w, double t0, double tf,
                   double dt = 0.01) {
    if (tf < t0) throw DomainError("comm_energy: interval end precedes its start");
    return integrate_trapezoid(total_power_w, t0, tf, dt);
}

}  // namespace uavem
