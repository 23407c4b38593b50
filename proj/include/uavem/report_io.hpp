#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "uavem/mission.hpp"
#include "uavem/sweep.hpp"

namespace uavem {

/// Stable textual form for output tables: 12 significant digits,
/// "NaN" for error-marked values.
inline std::string format_number(double v) {
    if (std::isnan(v)) return "NaN";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

/// Single-run report as CSV: one (quantity, value, unit) row per line.
inline std::string mission_report_csv(const MissionResult& r) {
    std::string out = "quantity,value,unit\n";
    auto row = [&](const std::string& name, double v, const std::string& unit) {
        out += name + "," + format_number(v) + "," + unit + "\n";
    };
    row("tau14", r.plan.total_time_s(), "s");
    for (int i = 0; i < 14; ++i) {
        row("tau_" + std::to_string(i + 1),
            r.plan.switching_times_s[static_cast<std::size_t>(i)], "s");
    }
    for (int s = 1; s <= 5; ++s) {
        row("stage" + std::to_string(s) + "_duration",
            r.plan.stage_duration_s(s), "s");
    }
    row("hover_velocity", r.hover_velocity_rad_s, "rad/s");
    row("pitch", r.plan.attitude.pitch_rad, "rad");
    row("roll", r.plan.attitude.roll_rad, "rad");
    row("yaw", r.plan.attitude.yaw_rad, "rad");
    row("resultant_force", r.plan.attitude.resultant_force_n, "N");
    row("e_travel", r.energy.e_travel_j, "J");
    for (int s = 1; s <= 5; ++s) {
        row("e_stage" + std::to_string(s),
            r.energy.per_stage_j[static_cast<std::size_t>(s - 1)], "J");
    }
    row("e_hover", r.energy.e_hover_j, "J");
    row("e_comm", r.energy.e_comm_j, "J");
    row("e_consumed_total", r.energy.e_consumed_total_j, "J");
    row("e_harvested", r.energy.e_harvested_j, "J");
    row("nu_at_destination", r.nu_at_destination, "1");
    row("source_power", r.source_power_w, "W");
    row("harvested_power", r.harvested_power_w, "W");
    row("gamma_b1", r.batteries.gamma_b1, "1");
    row("gamma_b2", r.batteries.gamma_b2, "1");
    row("gamma_b1_travel", r.gamma_b1_travel, "1");
    row("gamma_b1_hover_comm", r.gamma_b1_hover_comm, "1");
    row("gamma_b2_gain", r.gamma_b2_gain, "1");
    row("b1_y1_final", r.batteries.b1_final.y1_as, "As");
    row("b1_y2_final", r.batteries.b1_final.y2_as, "As");
    row("b2_y1_final", r.batteries.b2_final.y1_as, "As");
    row("b2_y2_final", r.batteries.b2_final.y2_as, "As");
    return out;
}

inline json mission_report_json(const MissionResult& r) {
    json plan;
    plan["tau14_s"] = r.plan.total_time_s();
    plan["switching_times_s"] = r.plan.switching_times_s;
    plan["commanded_velocity_rad_s"] = r.plan.commanded_velocity_rad_s;
    plan["hover_velocity_rad_s"] = r.hover_velocity_rad_s;
    plan["attitude"] = {
        {"roll_rad", r.plan.attitude.roll_rad},
        {"pitch_rad", r.plan.attitude.pitch_rad},
        {"yaw_rad", r.plan.attitude.yaw_rad},
        {"resultant_force_n", r.plan.attitude.resultant_force_n},
    };
    json segments = json::array();
    for (const auto& s : r.plan.segments) {
        segments.push_back({{"t_begin_s", s.t_begin_s},
                            {"t_end_s", s.t_end_s},
                            {"stage", s.stage},
                            {"velocities_rad_s", s.velocities_rad_s}});
    }
    plan["segments"] = segments;
    plan["stage6_velocities_rad_s"] = r.plan.hover_velocities_rad_s;

    json energy = {
        {"e_travel_j", r.energy.e_travel_j},
        {"per_stage_j", r.energy.per_stage_j},
        {"e_hover_j", r.energy.e_hover_j},
        {"e_comm_j", r.energy.e_comm_j},
        {"e_consumed_total_j", r.energy.e_consumed_total_j},
        {"e_harvested_j", r.energy.e_harvested_j},
    };

    auto state_json = [](const KibamState& s) {
        return json{{"y1_as", s.y1_as}, {"y2_as", s.y2_as}, {"t_s", s.t_s}};
    };
    json trace = json::array();
    for (const auto& t : r.batteries.trace) {
        trace.push_back({{"phase", t.phase},
                         {"b1", state_json(t.b1_after)},
                         {"b2", state_json(t.b2_after)},
                         {"charge_current_a", t.charge_current_a}});
    }
    json batteries = {
        {"gamma_b1", r.batteries.gamma_b1},
        {"gamma_b2", r.batteries.gamma_b2},
        {"gamma_b1_travel", r.gamma_b1_travel},
        {"gamma_b1_hover_comm", r.gamma_b1_hover_comm},
        {"gamma_b2_gain", r.gamma_b2_gain},
        {"b1_final", state_json(r.batteries.b1_final)},
        {"b2_final", state_json(r.batteries.b2_final)},
        {"trace", trace},
    };

    json wpt = {
        {"nu_at_destination", r.nu_at_destination},
        {"source_power_w", r.source_power_w},
        {"harvested_power_w", r.harvested_power_w},
    };

    return json{{"plan", plan},
                {"energy", energy},
                {"wpt", wpt},
                {"batteries", batteries}};
}

/// Sweep table as CSV: the swept variable, the output columns, and an
/// error-code column that is empty on valid rows.
inline std::string sweep_csv(const SweepTable& t) {
    std::string out = t.x_name;
    for (const auto& c : t.columns) out += "," + c;
    out += ",error\n";
    for (const auto& row : t.rows) {
        out += format_number(row.x);
        for (double v : row.values) out += "," + format_number(v);
        out += "," + row.error + "\n";
    }
    return out;
}

inline json sweep_json(const SweepTable& t) {
    json rows = json::array();
    for (const auto& row : t.rows) {
        json r;
        r[t.x_name] = row.x;
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            const double v = row.values[i];
            if (std::isnan(v)) {
                r[t.columns[i]] = nullptr;
            } else {
                r[t.columns[i]] = v;
            }
        }
        r["error"] = row.error;
        rows.push_back(std::move(r));
    }
    return json{{"x", t.x_name}, {"columns", t.columns}, {"rows", rows}};
}

}  // namespace uavem
