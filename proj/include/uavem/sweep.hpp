#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "uavem/errors.hpp"
#include "uavem/mission.hpp"

namespace uavem {

enum class SweepVariable {
    RotorVelocity,      ///< commanded rotor velocity for stages 1-5
    DistanceAlongAxis,  ///< straight-line displacement along one axis
    WindComponent,      ///< wind force along one axis (gravity stays)
    SourceDistance,     ///< DLC source to receiver distance
    BatterySize,        ///< capacity of both batteries
};

enum class Axis { X, Y, Z };

inline Vec3 axis_unit(Axis a) {
    switch (a) {
        case Axis::X: return {1.0, 0.0, 0.0};
        case Axis::Y: return {0.0, 1.0, 0.0};
        case Axis::Z: return {0.0, 0.0, 1.0};
    }
    throw DomainError("axis_unit: unknown axis");
}

struct SweepSpec {
    SweepVariable variable{SweepVariable::RotorVelocity};
    Axis axis{Axis::X};
    std::vector<double> grid;
    MissionConfig base;
    std::optional<double> source_power_w;  ///< fixed Ps for source-distance sweeps

    void validate() const {
        base.validate();
        if (grid.empty()) throw ConfigError("sweep: empty grid");
        for (std::size_t i = 1; i < grid.size(); ++i) {
            if (!(grid[i] > grid[i - 1])) {
                throw ConfigError("sweep: grid must be strictly increasing");
            }
        }
        if (variable == SweepVariable::SourceDistance && !fixed_source_power()) {
            throw ConfigError(
                "sweep: source-distance sweeps need a fixed source power");
        }
    }

    std::optional<double> fixed_source_power() const {
        if (source_power_w) return source_power_w;
        if (base.charging.policy == SourcePowerPolicy::Fixed) {
            return base.charging.source_power_w;
        }
        return std::nullopt;
    }
};

/// One grid point. Failed points keep NaN values plus a short error code
/// instead of aborting the sweep.
struct SweepRow {
    double x{0.0};
    std::vector<double> values;
    std::string error;
};

struct SweepTable {
    std::string x_name;
    std::vector<std::string> columns;
    std::vector<SweepRow> rows;
};

/// Uniform inclusive grid from `from` to `to` with `points` entries.
inline std::vector<double> make_grid(double from, double to, int points) {
    if (points < 1) throw ConfigError("grid: need at least one point");
    if (points == 1) return {from};
    if (!(to > from)) throw ConfigError("grid: end must exceed start");
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        g.push_back(from + (to - from) * static_cast<double>(i) /
                               static_cast<double>(points - 1));
    }
    return g;
}

namespace detail {

inline std::string error_code_of(const InfeasibleError& e) { return e.code(); }

template <typename Fn>
SweepRow guarded_row(double x, std::size_t n_values, Fn&& fn) {
    SweepRow row;
    row.x = x;
    try {
        row.values = fn();
    } catch (const InfeasibleError& e) {
        row.values.assign(n_values, std::numeric_limits<double>::quiet_NaN());
        row.error = error_code_of(e);
    } catch (const DomainError&) {
        row.values.assign(n_values, std::numeric_limits<double>::quiet_NaN());
        row.error = "domain";
    }
    return row;
}

}  // namespace detail

/// Evaluate the swept variable across its grid. Rows are emitted in grid
/// order; every row is computed with full standalone-run semantics, so a
/// point that would fail as a mission fails here too, as an error-marked
/// row.
inline SweepTable run_sweep(const SweepSpec& spec) {
    spec.validate();
    SweepTable table;
    const MissionConfig& base = spec.base;
    const MotorEnergyConstants c = energy_constants(base.motor);
    const Vec3 displacement = base.destination_m - base.start_m;

    switch (spec.variable) {
        case SweepVariable::RotorVelocity: {
            table.x_name = "rotor_velocity_rad_s";
            table.columns = {"tau14_s", "e_travel_j"};
            for (double v : spec.grid) {
                table.rows.push_back(detail::guarded_row(v, 2, [&] {
                    AirframeParams af = base.airframe;
                    af.max_rotor_velocity_rad_s = v;
                    const ManeuverPlan plan = build_plan(
                        displacement, base.external_force_n, af, base.stage2_mode);
                    return std::vector<double>{plan.total_time_s(),
                                               travel_energy(plan, c).total_j};
                }));
            }
            break;
        }
        case SweepVariable::DistanceAlongAxis: {
            table.x_name = "distance_m";
            table.columns = {"tau14_s", "e_travel_j"};
            const Vec3 dir = axis_unit(spec.axis);
            for (double d : spec.grid) {
                table.rows.push_back(detail::guarded_row(d, 2, [&] {
                    const ManeuverPlan plan =
                        build_plan(dir * d, base.external_force_n, base.airframe,
                                   base.stage2_mode);
                    return std::vector<double>{plan.total_time_s(),
                                               travel_energy(plan, c).total_j};
                }));
            }
            break;
        }
        case SweepVariable::WindComponent: {
            table.x_name = "wind_force_n";
            table.columns = {"e_hover_j"};
            const Vec3 dir = axis_unit(spec.axis);
            const Vec3 gravity{0.0, 0.0, -base.airframe.mass_kg * kGravity};
            for (double fw : spec.grid) {
                table.rows.push_back(detail::guarded_row(fw, 1, [&] {
                    const Vec3 f_ext = dir * fw + gravity;
                    // The same checks a standalone run makes: the travel
                    // leg must be flyable before the hover is priced.
                    build_plan(displacement, f_ext, base.airframe,
                               base.stage2_mode);
                    return std::vector<double>{hover_energy(
                        base.hover_duration_s, f_ext,
                        base.airframe.lift_coeff_n_s2_per_rad2,
                        base.airframe.max_rotor_velocity_rad_s, c)};
                }));
            }
            break;
        }
        case SweepVariable::SourceDistance: {
            table.x_name = "source_distance_m";
            table.columns = {"e_harvested_j", "efficiency"};
            const double ps = *spec.fixed_source_power();
            for (double d : spec.grid) {
                table.rows.push_back(detail::guarded_row(d, 2, [&] {
                    const double nu = transmission_efficiency_at(d, base.dlc);
                    const double p0 = harvested_power(ps, nu, base.dlc);
                    return std::vector<double>{p0 * base.hover_duration_s,
                                               ps > 0.0 ? p0 / ps : 0.0};
                }));
            }
            break;
        }
        case SweepVariable::BatterySize: {
            table.x_name = "battery_capacity_as";
            table.columns = {"gamma_b1", "gamma_b1_travel", "gamma_b1_hover_comm",
                             "gamma_b2_gain"};
            for (double b : spec.grid) {
                table.rows.push_back(detail::guarded_row(b, 4, [&] {
                    MissionConfig cfg = base;
                    cfg.battery1.capacity_as = b;
                    cfg.battery2.capacity_as = b;
                    const MissionResult r = run_mission(cfg);
                    return std::vector<double>{r.batteries.gamma_b1,
                                               r.gamma_b1_travel,
                                               r.gamma_b1_hover_comm,
                                               r.gamma_b2_gain};
                }));
            }
            break;
        }
    }
    return table;
}

}  // namespace uavem
