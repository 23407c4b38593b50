#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uavem/battery.hpp"
#include "uavem/energy.hpp"
#include "uavem/errors.hpp"
#include "uavem/geometry.hpp"
#include "uavem/maneuver.hpp"
#include "uavem/powertrain.hpp"
#include "uavem/wpt.hpp"

namespace uavem {

/// How the DLC source power is chosen during the hover window.
enum class SourcePowerPolicy {
    Fixed,           ///< constant Ps from the config
    TrackChargeCap,  ///< Ps chosen so the harvested power meets the charge cap
};

struct CommConfig {
    int node_count{0};
    double power_per_node_w{0.0};
    double transceiver_voltage_v{1.0};

    double total_power_w() const { return node_count * power_per_node_w; }

    void validate() const {
        if (node_count < 0) throw ConfigError("comm: node count must be >= 0");
        if (!(power_per_node_w >= 0.0)) throw ConfigError("comm: negative node power");
        if (!(transceiver_voltage_v > 0.0)) {
            throw ConfigError("comm: transceiver voltage must be positive");
        }
    }
};

struct ChargingConfig {
    double charge_current_a{10.0};  ///< I_ch, constant-current charging limit
    SourcePowerPolicy policy{SourcePowerPolicy::TrackChargeCap};
    double source_power_w{0.0};  ///< used when policy == Fixed
    /// State of charge of battery 2 when the mission starts. In the
    /// alternating scheme the battery on the charger is the depleted one.
    double battery2_initial_soc{0.5};

    void validate() const {
        if (!(charge_current_a >= 0.0)) {
            throw ConfigError("charging: charge current must be >= 0");
        }
        if (policy == SourcePowerPolicy::Fixed && !(source_power_w >= 0.0)) {
            throw ConfigError("charging: fixed source power must be >= 0");
        }
        if (!(battery2_initial_soc >= 0.0) || !(battery2_initial_soc <= 1.0)) {
            throw ConfigError("charging: battery 2 state of charge must be in [0, 1]");
        }
    }
};

/// Everything needed to fly one mission: travel from start to
/// destination under a constant external force, then hover for the
/// configured duration while communicating and charging.
struct MissionConfig {
    Vec3 start_m;
    Vec3 destination_m;
    Vec3 external_force_n;
    double hover_duration_s{0.0};
    StageTwoFormula stage2_mode{StageTwoFormula::Corrected};
    double integration_step_s{0.01};

    AirframeParams airframe;
    MotorParams motor;
    CommConfig comm;
    DlcParams dlc;
    ChargingConfig charging;
    BatteryParams battery1;
    BatteryParams battery2;

    void validate() const {
        if (!start_m.finite() || !destination_m.finite() ||
            !external_force_n.finite()) {
            throw ConfigError("mission: vectors must be finite");
        }
        if ((destination_m - start_m).norm() == 0.0) {
            throw ConfigError("mission: destination coincides with the start");
        }
        if (!(hover_duration_s >= 0.0)) {
            throw ConfigError("mission: hover duration must be >= 0");
        }
        if (!(integration_step_s > 0.0)) {
            throw ConfigError("mission: integration step must be positive");
        }
        airframe.validate();
        motor.validate();
        comm.validate();
        dlc.validate();
        charging.validate();
        battery1.validate();
        battery2.validate();
    }
};

struct MissionResult {
    ManeuverPlan plan;
    EnergyReport energy;
    DualBatteryResult batteries;
    double hover_velocity_rad_s{0.0};
    double nu_at_destination{0.0};
    double source_power_w{0.0};     ///< Ps in effect during the hover window
    double harvested_power_w{0.0};  ///< P0 during the hover window
    double gamma_b1_travel{0.0};    ///< battery-1 charge fraction spent traveling
    double gamma_b1_hover_comm{0.0};///< battery-1 charge fraction spent hovering+comm
    double gamma_b2_gain{0.0};      ///< WPT charge into battery 2, per unit capacity
};

namespace detail {

/// Battery-1 charge consumed across the trace entries whose phase name
/// matches `name`, as a fraction of the initial total.
inline double consumed_fraction(const DualBatteryResult& r, const std::string& name) {
    double consumed = 0.0;
    double prev_total = r.b1_initial.total_as();
    for (const auto& t : r.trace) {
        const double total = t.b1_after.total_as();
        if (t.phase == name) consumed += prev_total - total;
        prev_total = total;
    }
    return consumed / r.b1_initial.total_as();
}

}  // namespace detail

/// Fly the configured mission end to end. The destination is translated
/// into the body-origin frame (w_D - w_I) before the attitude solve.
///
/// Throws InfeasibleError when the maneuver or hover cannot be flown or
/// when battery 1 empties mid-mission (with phase and time attached).
inline MissionResult run_mission(const MissionConfig& cfg) {
    cfg.validate();

    const Vec3 displacement = cfg.destination_m - cfg.start_m;
    MissionResult res;
    res.plan = build_plan(displacement, cfg.external_force_n, cfg.airframe,
                          cfg.stage2_mode);
    res.hover_velocity_rad_s =
        hover_velocity(cfg.external_force_n, cfg.airframe.lift_coeff_n_s2_per_rad2);

    const MotorEnergyConstants c = energy_constants(cfg.motor);
    const TravelEnergy travel = travel_energy(res.plan, c);
    const double e_hover = hover_energy(
        cfg.hover_duration_s, cfg.external_force_n,
        cfg.airframe.lift_coeff_n_s2_per_rad2,
        cfg.airframe.max_rotor_velocity_rad_s, c);

    const double tau14 = res.plan.total_time_s();
    CommSchedule sched;
    sched.node_powers_w.assign(static_cast<std::size_t>(cfg.comm.node_count),
                               cfg.comm.power_per_node_w);
    sched.t_begin_s = tau14;
    sched.t_end_s = tau14 + cfg.hover_duration_s;
    const double e_comm = comm_energy(sched);

    // The hover position is static, so the link efficiency is constant
    // over the charge window.
    res.nu_at_destination = transmission_efficiency(cfg.destination_m, cfg.dlc);
    const double p_charge_cap =
        cfg.charging.charge_current_a * cfg.battery2.nominal_voltage_v;
    res.source_power_w =
        (cfg.charging.policy == SourcePowerPolicy::TrackChargeCap)
            ? max_source_power(p_charge_cap, res.nu_at_destination, cfg.dlc)
            : cfg.charging.source_power_w;
    res.harvested_power_w =
        harvested_power(res.source_power_w, res.nu_at_destination, cfg.dlc);
    const double e_harvested =
        harvest_energy(cfg.destination_m, res.source_power_w, cfg.dlc, tau14,
                       tau14 + cfg.hover_duration_s, cfg.integration_step_s);

    res.energy = make_energy_report(travel.per_stage_j, e_hover, e_comm,
                                    e_harvested);

    std::vector<MissionPhase> phases;
    phases.reserve(res.plan.segments.size() + 1);
    const std::array<double, 4> no_accel{};
    for (const auto& seg : res.plan.segments) {
        phases.push_back({"travel", seg.duration_s(),
                          discharge_current(seg.velocities_rad_s, no_accel,
                                            cfg.motor, 0.0,
                                            cfg.comm.transceiver_voltage_v),
                          0.0});
    }
    phases.push_back({"hover", cfg.hover_duration_s,
                      discharge_current(res.plan.hover_velocities_rad_s, no_accel,
                                        cfg.motor, cfg.comm.total_power_w(),
                                        cfg.comm.transceiver_voltage_v),
                      res.harvested_power_w});

    res.batteries = dual_battery_run(
        phases, cfg.battery1, cfg.battery2, cfg.charging.charge_current_a,
        initial_state(cfg.battery1),
        state_at_soc(cfg.battery2, cfg.charging.battery2_initial_soc));
    if (res.batteries.failure) {
        throw InfeasibleError(
            "battery 1 emptied during phase '" + res.batteries.failure->phase +
                "' at t = " + std::to_string(res.batteries.failure->time_s) + " s",
            "battery-empty", res.batteries.failure->phase,
            res.batteries.failure->time_s);
    }
    res.gamma_b1_travel = detail::consumed_fraction(res.batteries, "travel");
    res.gamma_b1_hover_comm = detail::consumed_fraction(res.batteries, "hover");
    res.gamma_b2_gain = (res.batteries.b2_final.total_as() -
                         res.batteries.b2_initial.total_as()) /
                        cfg.battery2.capacity_as;
    return res;
}

}  // namespace uavem
