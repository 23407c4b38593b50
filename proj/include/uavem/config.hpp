#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "uavem/errors.hpp"
#include "uavem/mission.hpp"
#include "uavem/sweep.hpp"

namespace uavem {

using json = nlohmann::ordered_json;

namespace detail {

inline const json& require(const json& j, const std::string& key,
                           const std::string& section) {
    const auto it = j.find(key);
    if (it == j.end()) {
        throw ConfigError("config: missing key '" + section + "." + key + "'");
    }
    return *it;
}

inline double number(const json& j, const std::string& key,
                     const std::string& section) {
    const json& v = require(j, key, section);
    if (!v.is_number()) {
        throw ConfigError("config: '" + section + "." + key + "' must be a number");
    }
    return v.get<double>();
}

inline double number_or(const json& j, const std::string& key, double fallback) {
    const auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_number()) throw ConfigError("config: '" + key + "' must be a number");
    return it->get<double>();
}

inline Vec3 vec3(const json& j, const std::string& key,
                 const std::string& section) {
    const json& v = require(j, key, section);
    if (!v.is_array() || v.size() != 3) {
        throw ConfigError("config: '" + section + "." + key +
                          "' must be a 3-element array");
    }
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

inline json vec3_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

}  // namespace detail

inline StageTwoFormula parse_stage2_mode(const std::string& s) {
    if (s == "paper-literal") return StageTwoFormula::PaperLiteral;
    if (s == "corrected") return StageTwoFormula::Corrected;
    throw ConfigError("config: stage2 mode must be 'paper-literal' or 'corrected'");
}

inline std::string to_string(StageTwoFormula m) {
    return m == StageTwoFormula::PaperLiteral ? "paper-literal" : "corrected";
}

inline SourcePowerPolicy parse_source_power_policy(const std::string& s) {
    if (s == "track-charge-cap") return SourcePowerPolicy::TrackChargeCap;
    if (s == "fixed") return SourcePowerPolicy::Fixed;
    throw ConfigError(
        "config: source power policy must be 'track-charge-cap' or 'fixed'");
}

inline std::string to_string(SourcePowerPolicy p) {
    return p == SourcePowerPolicy::TrackChargeCap ? "track-charge-cap" : "fixed";
}

inline SweepVariable parse_sweep_variable(const std::string& s) {
    if (s == "rotor-velocity") return SweepVariable::RotorVelocity;
    if (s == "distance") return SweepVariable::DistanceAlongAxis;
    if (s == "wind") return SweepVariable::WindComponent;
    if (s == "source-distance") return SweepVariable::SourceDistance;
    if (s == "battery-size") return SweepVariable::BatterySize;
    throw ConfigError("config: unknown sweep variable '" + s + "'");
}

inline std::string to_string(SweepVariable v) {
    switch (v) {
        case SweepVariable::RotorVelocity: return "rotor-velocity";
        case SweepVariable::DistanceAlongAxis: return "distance";
        case SweepVariable::WindComponent: return "wind";
        case SweepVariable::SourceDistance: return "source-distance";
        case SweepVariable::BatterySize: return "battery-size";
    }
    throw DomainError("to_string: unknown sweep variable");
}

inline Axis parse_axis(const std::string& s) {
    if (s == "x") return Axis::X;
    if (s == "y") return Axis::Y;
    if (s == "z") return Axis::Z;
    throw ConfigError("config: axis must be 'x', 'y' or 'z'");
}

inline std::string to_string(Axis a) {
    switch (a) {
        case Axis::X: return "x";
        case Axis::Y: return "y";
        case Axis::Z: return "z";
    }
    throw DomainError("to_string: unknown axis");
}

/// Parse a mission configuration document. Datasheet units (KV in rpm/V,
/// flow rate per minute) are converted to SI here, once.
inline MissionConfig mission_config_from_json(const json& j) {
    MissionConfig cfg;

    const json& mission = detail::require(j, "mission", "");
    cfg.start_m = detail::vec3(mission, "start_m", "mission");
    cfg.destination_m = detail::vec3(mission, "destination_m", "mission");
    cfg.external_force_n = detail::vec3(mission, "external_force_n", "mission");
    cfg.hover_duration_s = detail::number(mission, "hover_duration_s", "mission");
    cfg.stage2_mode = parse_stage2_mode(
        mission.value("stage2_mode", std::string("corrected")));
    cfg.integration_step_s = detail::number_or(mission, "integration_step_s", 0.01);

    const json& af = detail::require(j, "airframe", "");
    cfg.airframe.lift_coeff_n_s2_per_rad2 =
        detail::number(af, "lift_coeff_n_s2_per_rad2", "airframe");
    cfg.airframe.arm_length_m = detail::number(af, "arm_length_m", "airframe");
    cfg.airframe.inertia_x_kg_m2 = detail::number(af, "inertia_x_kg_m2", "airframe");
    cfg.airframe.inertia_y_kg_m2 = detail::number(af, "inertia_y_kg_m2", "airframe");
    cfg.airframe.mass_kg = detail::number(af, "mass_kg", "airframe");
    cfg.airframe.max_rotor_velocity_rad_s =
        detail::number(af, "max_rotor_velocity_rad_s", "airframe");

    const json& motor = detail::require(j, "motor", "");
    cfg.motor = MotorParams::from_kv(
        detail::number(motor, "kv_rpm_per_volt", "motor"),
        detail::number(motor, "resistance_ohm", "motor"),
        detail::number(motor, "friction_torque_nm", "motor"),
        detail::number(motor, "drag_coeff_nm_s2_per_rad2", "motor"),
        detail::number(motor, "damping_nm_s_per_rad", "motor"),
        detail::number(motor, "rotor_inertia_kg_m2", "motor"));

    const json& comm = detail::require(j, "comm", "");
    cfg.comm.node_count = static_cast<int>(detail::number(comm, "node_count", "comm"));
    cfg.comm.power_per_node_w = detail::number(comm, "power_per_node_w", "comm");
    cfg.comm.transceiver_voltage_v =
        detail::number(comm, "transceiver_voltage_v", "comm");

    const json& dlc = detail::require(j, "dlc", "");
    cfg.dlc.a1 = detail::number(dlc, "a1", "dlc");
    cfg.dlc.a2 = detail::number(dlc, "a2", "dlc");
    cfg.dlc.b1_w = detail::number(dlc, "b1_w", "dlc");
    cfg.dlc.b2_w = detail::number(dlc, "b2_w", "dlc");
    cfg.dlc.sigma = detail::number(dlc, "sigma", "dlc");
    cfg.dlc.chi_m = detail::number(dlc, "particle_size_m", "dlc");
    cfg.dlc.visibility_m = detail::number(dlc, "visibility_m", "dlc");
    cfg.dlc.wavelength_m = detail::number(dlc, "wavelength_m", "dlc");
    cfg.dlc.size_distribution = detail::number(dlc, "size_distribution", "dlc");
    cfg.dlc.source_position_m = detail::vec3(dlc, "source_position_m", "dlc");
    cfg.charging.charge_current_a = detail::number(dlc, "charge_current_a", "dlc");
    cfg.charging.policy = parse_source_power_policy(
        dlc.value("source_power_policy", std::string("track-charge-cap")));
    cfg.charging.source_power_w = detail::number_or(dlc, "source_power_w", 0.0);
    cfg.charging.battery2_initial_soc =
        detail::number_or(dlc, "battery2_initial_soc", 0.5);

    auto battery_from = [](const json& b, const std::string& section) {
        BatteryParams p;
        p.capacity_as = detail::number(b, "capacity_as", section);
        p.split_factor = detail::number(b, "split_factor", section);
        p.flow_rate_per_s = detail::number(b, "flow_rate_per_min", section) / 60.0;
        p.nominal_voltage_v = detail::number(b, "nominal_voltage_v", section);
        p.c_rating_per_h = detail::number_or(b, "c_rating_per_h", 1.0);
        return p;
    };
    cfg.battery1 = battery_from(detail::require(j, "battery", ""), "battery");
    cfg.battery2 = j.contains("battery2")
                       ? battery_from(j["battery2"], "battery2")
                       : cfg.battery1;

    cfg.validate();
    return cfg;
}

inline json mission_config_to_json(const MissionConfig& cfg) {
    json j;
    j["mission"] = {
        {"start_m", detail::vec3_to_json(cfg.start_m)},
        {"destination_m", detail::vec3_to_json(cfg.destination_m)},
        {"external_force_n", detail::vec3_to_json(cfg.external_force_n)},
        {"hover_duration_s", cfg.hover_duration_s},
        {"stage2_mode", to_string(cfg.stage2_mode)},
        {"integration_step_s", cfg.integration_step_s},
    };
    j["airframe"] = {
        {"lift_coeff_n_s2_per_rad2", cfg.airframe.lift_coeff_n_s2_per_rad2},
        {"arm_length_m", cfg.airframe.arm_length_m},
        {"inertia_x_kg_m2", cfg.airframe.inertia_x_kg_m2},
        {"inertia_y_kg_m2", cfg.airframe.inertia_y_kg_m2},
        {"mass_kg", cfg.airframe.mass_kg},
        {"max_rotor_velocity_rad_s", cfg.airframe.max_rotor_velocity_rad_s},
    };
    j["motor"] = {
        {"kv_rpm_per_volt", cfg.motor.kv_rpm_per_volt},
        {"resistance_ohm", cfg.motor.resistance_ohm},
        {"friction_torque_nm", cfg.motor.friction_torque_nm},
        {"drag_coeff_nm_s2_per_rad2", cfg.motor.drag_coeff_nm_s2_per_rad2},
        {"damping_nm_s_per_rad", cfg.motor.damping_nm_s_per_rad},
        {"rotor_inertia_kg_m2", cfg.motor.rotor_inertia_kg_m2},
    };
    j["comm"] = {
        {"node_count", cfg.comm.node_count},
        {"power_per_node_w", cfg.comm.power_per_node_w},
        {"transceiver_voltage_v", cfg.comm.transceiver_voltage_v},
    };
    j["dlc"] = {
        {"a1", cfg.dlc.a1},
        {"a2", cfg.dlc.a2},
        {"b1_w", cfg.dlc.b1_w},
        {"b2_w", cfg.dlc.b2_w},
        {"sigma", cfg.dlc.sigma},
        {"particle_size_m", cfg.dlc.chi_m},
        {"visibility_m", cfg.dlc.visibility_m},
        {"wavelength_m", cfg.dlc.wavelength_m},
        {"size_distribution", cfg.dlc.size_distribution},
        {"source_position_m", detail::vec3_to_json(cfg.dlc.source_position_m)},
        {"source_power_policy", to_string(cfg.charging.policy)},
        {"source_power_w", cfg.charging.source_power_w},
        {"charge_current_a", cfg.charging.charge_current_a},
        {"battery2_initial_soc", cfg.charging.battery2_initial_soc},
    };
    auto battery_json = [](const BatteryParams& p) {
        return json{
            {"capacity_as", p.capacity_as},
            {"split_factor", p.split_factor},
            {"flow_rate_per_min", p.flow_rate_per_s * 60.0},
            {"nominal_voltage_v", p.nominal_voltage_v},
            {"c_rating_per_h", p.c_rating_per_h},
        };
    };
    j["battery"] = battery_json(cfg.battery1);
    j["battery2"] = battery_json(cfg.battery2);
    return j;
}

/// The bundled DJI-Phantom-2-class parameter set: 1.3 kg airframe,
/// 2212/920KV motors, two 3S 10 Ah LiPo packs, 810 nm laser link.
/// One mission: [100,50,50] m to [160,80,100] m under a constant
/// [-5,3,-12.74] N external force, then a 20 s hover with 5 W of
/// communication and wireless charging at the 10 A cap.
inline MissionConfig table1_preset() {
    MissionConfig cfg;
    cfg.start_m = {100.0, 50.0, 50.0};
    cfg.destination_m = {160.0, 80.0, 100.0};
    cfg.external_force_n = {-5.0, 3.0, -12.74};
    cfg.hover_duration_s = 20.0;
    cfg.stage2_mode = StageTwoFormula::Corrected;
    cfg.integration_step_s = 0.01;

    cfg.airframe.lift_coeff_n_s2_per_rad2 = 3.8305e-6;
    cfg.airframe.arm_length_m = 0.175;
    cfg.airframe.inertia_x_kg_m2 = 0.081;
    cfg.airframe.inertia_y_kg_m2 = 0.081;
    cfg.airframe.mass_kg = 1.3;
    cfg.airframe.max_rotor_velocity_rad_s = 1047.197;

    cfg.motor = MotorParams::from_kv(920.0, 0.2, 0.04, 2.2518e-8, 2.0e-4,
                                     4.1904e-5);

    cfg.comm.node_count = 50;  // 50 nodes at 0.1 W = 5 W total
    cfg.comm.power_per_node_w = 0.1;
    cfg.comm.transceiver_voltage_v = 1.0;

    cfg.dlc.a1 = 0.445;
    cfg.dlc.a2 = 0.5441;
    cfg.dlc.b1_w = -0.75;
    cfg.dlc.b2_w = -0.231;
    cfg.dlc.sigma = 3.92;
    cfg.dlc.chi_m = 550e-9;
    cfg.dlc.visibility_m = 3000.0;
    cfg.dlc.wavelength_m = 810e-9;
    cfg.dlc.size_distribution = 0.82;
    cfg.dlc.source_position_m = {160.0, 80.0, 0.0};  // on the ground below w_D
    cfg.charging.charge_current_a = 10.0;
    cfg.charging.policy = SourcePowerPolicy::TrackChargeCap;

    cfg.battery1.capacity_as = 36000.0;  // 10 Ah
    cfg.battery1.split_factor = 0.8;
    cfg.battery1.flow_rate_per_s = 4.5e-5 / 60.0;
    cfg.battery1.nominal_voltage_v = 11.1;  // 3S
    cfg.battery1.c_rating_per_h = 1.0;
    cfg.battery2 = cfg.battery1;
    return cfg;
}

struct PresetInfo {
    std::string name;
    std::string description;
};

inline std::vector<PresetInfo> preset_list() {
    return {{"table1",
             "DJI Phantom 2 class quadrotor, two 10 Ah 3S packs, 810 nm DLC link"}};
}

inline MissionConfig preset(const std::string& name) {
    if (name == "table1") return table1_preset();
    throw ConfigError("unknown preset '" + name + "'");
}

/// Parse the optional "sweep" section of a config document.
inline SweepSpec sweep_spec_from_json(const json& j, MissionConfig base) {
    SweepSpec spec;
    spec.base = std::move(base);
    const json& s = detail::require(j, "sweep", "");
    spec.variable = parse_sweep_variable(
        detail::require(s, "variable", "sweep").get<std::string>());
    if (s.contains("axis")) spec.axis = parse_axis(s["axis"].get<std::string>());
    if (s.contains("values")) {
        for (const auto& v : s["values"]) spec.grid.push_back(v.get<double>());
    } else {
        spec.grid = make_grid(detail::number(s, "from", "sweep"),
                              detail::number(s, "to", "sweep"),
                              static_cast<int>(detail::number(s, "points", "sweep")));
    }
    if (s.contains("source_power_w")) {
        spec.source_power_w = s["source_power_w"].get<double>();
    }
    spec.validate();
    return spec;
}

}  // namespace uavem
