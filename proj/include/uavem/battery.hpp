#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <optional>
#include <string>
#include <vector>

#include "uavem/errors.hpp"
#include "uavem/integrate.hpp"
#include "uavem/powertrain.hpp"

namespace uavem {

/// Kinetic battery model parameters. The charge sits in two wells: an
/// available well holding the fraction `split_factor` of the capacity and
/// a bound well holding the rest; their height difference drives an
/// internal flow at rate k_F:
///
///   dy1/dt =  i + k_F (y2/(1-w) - y1/w)
///   dy2/dt =     -k_F (y2/(1-w) - y1/w)
///
/// All internal time is seconds; convert datasheet per-minute flow rates
/// at load.
struct BatteryParams {
    double capacity_as{0.0};       ///< B
    double split_factor{0.0};      ///< w, in (0, 1)
    double flow_rate_per_s{0.0};   ///< k_F
    double nominal_voltage_v{0.0}; ///< e_nom
    double c_rating_per_h{1.0};

    double available_well_cap_as() const { return split_factor * capacity_as; }
    double bound_well_cap_as() const { return (1.0 - split_factor) * capacity_as; }
    double k_prime() const {
        return flow_rate_per_s / (split_factor * (1.0 - split_factor));
    }

    void validate() const {
        if (!(capacity_as > 0.0)) throw ConfigError("battery: capacity must be positive");
        if (!(split_factor > 0.0) || !(split_factor < 1.0)) {
            throw ConfigError("battery: split factor must lie strictly in (0, 1)");
        }
        if (!(flow_rate_per_s > 0.0)) throw ConfigError("battery: flow rate must be positive");
        if (!(nominal_voltage_v > 0.0)) throw ConfigError("battery: nominal voltage must be positive");
        if (!(c_rating_per_h > 0.0)) throw ConfigError("battery: C-rating must be positive");
    }
};

/// Two-well charge state at time t.
struct KibamState {
    double y1_as{0.0};  ///< available charge
    double y2_as{0.0};  ///< bound charge
    double t_s{0.0};

    double total_as() const { return y1_as + y2_as; }
};

/// Fully charged state: wells at their capacities.
inline KibamState initial_state(const BatteryParams& p) {
    return {p.available_well_cap_as(), p.bound_well_cap_as(), 0.0};
}

/// Maximum recommended charge current: the C-rating applied to the
/// capacity expressed in ampere-hours.
inline double charge_current_cap(const BatteryParams& p) {
    return p.c_rating_per_h * (p.capacity_as / 3600.0);
}

enum class BatteryEventKind { Empty, Full };

struct BatteryEvent {
    BatteryEventKind kind{BatteryEventKind::Empty};
    double time_s{0.0};
};

struct StepResult {
    KibamState state;
    std::optional<BatteryEvent> event;
};

/// Closed-form well levels after `delta_s` seconds at constant current
/// `i_bar_a` (positive charges, negative discharges). No bound checking;
/// this is the raw solution of the two-well system.
inline KibamState kibam_closed_form(const KibamState& s, double i_bar_a,
                                    double delta_s, const BatteryParams& p) {
    const double w = p.split_factor;
    const double kp = p.k_prime();
    const double y = s.total_as();
    const double x = kp * delta_s;

    double ex, em, em_over_kp, g_over_kp;
    if (x > 1e-12) {
        ex = std::exp(-x);
        em = -std::expm1(-x);                       // 1 - e^(-x)
        em_over_kp = em / kp;
        g_over_kp = (x + std::expm1(-x)) / kp;      // (x - 1 + e^(-x)) / kp
    } else {
        // k_F -> 0 limit: the wells decouple and the current lands
        // entirely in the available well.
        ex = 1.0;
        em = 0.0;
        em_over_kp = delta_s;
        g_over_kp = 0.0;
    }

    KibamState out;
    out.y1_as = s.y1_as * ex + (y * kp * w + i_bar_a) * em_over_kp +
                i_bar_a * w * g_over_kp;
    out.y2_as = s.y2_as * ex + y * (1.0 - w) * em +
                i_bar_a * (1.0 - w) * g_over_kp;
    out.t_s = s.t_s + delta_s;
    return out;
}

namespace detail {

inline constexpr double kWellSlack = 1e-9;      // relative well-bound slack
inline constexpr double kEventTimeTol = 1e-6;   // seconds

inline std::optional<BatteryEventKind> bound_violation(const KibamState& s,
                                                       const BatteryParams& p) {
    const double slack = kWellSlack * p.capacity_as;
    if (s.y1_as < -slack || s.y2_as < -slack) return BatteryEventKind::Empty;
    if (s.y1_as > p.available_well_cap_as() + slack ||
        s.y2_as > p.bound_well_cap_as() + slack) {
        return BatteryEventKind::Full;
    }
    return std::nullopt;
}

inline void clamp_into_bounds(KibamState& s, const BatteryParams& p) {
    s.y1_as = std::clamp(s.y1_as, 0.0, p.available_well_cap_as());
    s.y2_as = std::clamp(s.y2_as, 0.0, p.bound_well_cap_as());
}

}  // namespace detail

/// Advance the state by `delta_s` at constant current, detecting
/// empty/full crossings. When a well crosses its bound mid-step the
/// returned state sits at the crossing (located by bisection to 1e-6 s)
/// and carries the corresponding event.
inline StepResult step_closed_form(const KibamState& s, double i_bar_a,
                                   double delta_s, const BatteryParams& p) {
    if (!(delta_s >= 0.0)) throw DomainError("step_closed_form: negative duration");
    KibamState end = kibam_closed_form(s, i_bar_a, delta_s, p);
    const auto violation = detail::bound_violation(end, p);
    if (!violation) return {end, std::nullopt};

    double lo = 0.0, hi = delta_s;
    while (hi - lo > detail::kEventTimeTol) {
        const double mid = 0.5 * (lo + hi);
        if (detail::bound_violation(kibam_closed_form(s, i_bar_a, mid, p), p)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    KibamState at = kibam_closed_form(s, i_bar_a, hi, p);
    const auto kind = detail::bound_violation(at, p).value_or(*violation);
    detail::clamp_into_bounds(at, p);
    return {at, BatteryEvent{kind, at.t_s}};
}

/// Raw fixed-step RK4 integration of the two-well system under a
/// time-varying current `i_of_t` (absolute time). No bound checking.
template <typename CurrentFn>
    requires std::invocable<CurrentFn&, double>
KibamState kibam_rk4(const KibamState& s, CurrentFn&& i_of_t, double delta_s,
                     const BatteryParams& p, double dt) {
    if (!(dt > 0.0)) throw DomainError("kibam_rk4: step size must be positive");
    const double w = p.split_factor;
    const double kf = p.flow_rate_per_s;
    auto deriv = [&](const std::array<double, 2>& y, double t) {
        const double flow = kf * (y[1] / (1.0 - w) - y[0] / w);
        return std::array<double, 2>{i_of_t(t) + flow, -flow};
    };
    std::array<double, 2> y{s.y1_as, s.y2_as};
    double t = s.t_s;
    const double t_end = s.t_s + delta_s;
    while (t < t_end) {
        const double h = std::min(dt, t_end - t);
        if (h <= 0.0) break;
        y = rk4_step(y, t, h, deriv);
        t += h;
    }
    return {y[0], y[1], t_end};
}

inline KibamState kibam_rk4(const KibamState& s, double i_bar_a, double delta_s,
                            const BatteryParams& p, double dt) {
    return kibam_rk4(s, [i_bar_a](double) { return i_bar_a; }, delta_s, p, dt);
}

/// RK4 counterpart of step_closed_form: same empty/full events, located
/// by shrinking the offending substep.
template <typename CurrentFn>
    requires std::invocable<CurrentFn&, double>
StepResult step_ode(const KibamState& s, CurrentFn&& i_of_t, double delta_s,
                    const BatteryParams& p, double dt) {
    if (!(delta_s >= 0.0)) throw DomainError("step_ode: negative duration");
    if (!(dt > 0.0)) throw DomainError("step_ode: step size must be positive");

    KibamState cur = s;
    const double t_end = s.t_s + delta_s;
    while (cur.t_s < t_end - 1e-15 * std::max(1.0, t_end)) {
        const double h = std::min(dt, t_end - cur.t_s);
        KibamState next = kibam_rk4(cur, i_of_t, h, p, h);
        if (const auto violation = detail::bound_violation(next, p)) {
            double lo = 0.0, hi = h;
            while (hi - lo > detail::kEventTimeTol) {
                const double mid = 0.5 * (lo + hi);
                if (detail::bound_violation(kibam_rk4(cur, i_of_t, mid, p, mid), p)) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            KibamState at = kibam_rk4(cur, i_of_t, hi, p, hi);
            const auto kind = detail::bound_violation(at, p).value_or(*violation);
            detail::clamp_into_bounds(at, p);
            return {at, BatteryEvent{kind, at.t_s}};
        }
        cur = next;
    }
    cur.t_s = t_end;
    return {cur, std::nullopt};
}

inline StepResult step_ode(const KibamState& s, double i_bar_a, double delta_s,
                           const BatteryParams& p, double dt) {
    return step_ode(s, [i_bar_a](double) { return i_bar_a; }, delta_s, p, dt);
}

/// Total current drawn from the motion battery: the four motor currents
/// plus the transceiver draw p_comm / e_tr.
inline double discharge_current(const std::array<double, 4>& velocities_rad_s,
                                const std::array<double, 4>& accels_rad_s2,
                                const MotorParams& motor, double p_comm_w,
                                double e_tr_v) {
    double i = 0.0;
    for (int r = 0; r < 4; ++r) {
        i += motor_current(velocities_rad_s[static_cast<std::size_t>(r)],
                           accels_rad_s2[static_cast<std::size_t>(r)], motor);
    }
    if (p_comm_w > 0.0) {
        if (!(e_tr_v > 0.0)) {
            throw DomainError("discharge_current: transceiver voltage must be positive");
        }
        i += p_comm_w / e_tr_v;
    }
    return i;
}

/// Piecewise-constant signed load profile (positive = charge).
struct LoadSegment {
    double duration_s{0.0};
    double current_a{0.0};
};

struct LoadProfile {
    std::vector<LoadSegment> segments;

    /// Charge segments must respect the C-rating cap.
    void validate(const BatteryParams& p) const {
        const double cap = charge_current_cap(p);
        for (const auto& seg : segments) {
            if (!(seg.duration_s >= 0.0)) {
                throw ConfigError("load profile: negative segment duration");
            }
            if (seg.current_a > cap) {
                throw ConfigError("load profile: charge current exceeds the C-rating cap");
            }
        }
    }
};

/// One phase of a dual-battery mission: battery 1 sources the discharge
/// current, battery 2 receives the harvested power.
struct MissionPhase {
    std::string name;
    double duration_s{0.0};
    double discharge_current_a{0.0};  ///< drawn from battery 1
    double harvest_power_w{0.0};      ///< offered to battery 2
};

struct PhaseTrace {
    std::string phase;
    KibamState b1_after;
    KibamState b2_after;
    double charge_current_a{0.0};
};

struct DualBatteryFailure {
    std::string phase;
    double time_s{0.0};
};

struct DualBatteryResult {
    KibamState b1_initial, b1_final;
    KibamState b2_initial, b2_final;
    std::vector<PhaseTrace> trace;
    double gamma_b1{0.0};  ///< 1 - total(tf)/total(t0), positive when consumed
    double gamma_b2{0.0};
    std::optional<DualBatteryFailure> failure;
};

/// State with both wells at the given fraction of their capacities
/// (equal heights, the rested equilibrium).
inline KibamState state_at_soc(const BatteryParams& p, double soc) {
    return {soc * p.available_well_cap_as(), soc * p.bound_well_cap_as(), 0.0};
}

/// Run a phase list against two independent batteries: battery 1 carries
/// every discharge, battery 2 charges from the harvested power at
/// min(P0/e_nom, i_ch_limit). Once battery 2 raises a full event its
/// constant-current charging stops for the rest of the mission. A
/// battery-1 empty event aborts the run and is reported with its phase
/// and crossing time.
inline DualBatteryResult dual_battery_run(const std::vector<MissionPhase>& phases,
                                          const BatteryParams& b1,
                                          const BatteryParams& b2,
                                          double i_ch_limit_a,
                                          const KibamState& b1_initial,
                                          const KibamState& b2_initial) {
    DualBatteryResult r;
    r.b1_initial = b1_initial;
    r.b2_initial = b2_initial;
    KibamState s1 = r.b1_initial;
    KibamState s2 = r.b2_initial;
    bool b2_accepting = true;

    for (const auto& phase : phases) {
        if (!(phase.duration_s >= 0.0)) {
            throw DomainError("dual_battery_run: negative phase duration");
        }
        if (!(phase.discharge_current_a >= 0.0)) {
            throw DomainError("dual_battery_run: negative discharge current");
        }

        double i_ch = 0.0;
        if (b2_accepting && phase.harvest_power_w > 0.0) {
            i_ch = std::min(phase.harvest_power_w / b2.nominal_voltage_v,
                            i_ch_limit_a);
        }

        const StepResult r1 =
            step_closed_form(s1, -phase.discharge_current_a, phase.duration_s, b1);
        StepResult r2 = step_closed_form(s2, i_ch, phase.duration_s, b2);
        if (r2.event && r2.event->kind == BatteryEventKind::Full) {
            // Constant-current charging ends at the full crossing; the
            // battery rests for the remainder of the phase.
            b2_accepting = false;
            const double remaining =
                s2.t_s + phase.duration_s - r2.state.t_s;
            r2 = step_closed_form(r2.state, 0.0, remaining, b2);
        }
        s2 = r2.state;

        if (r1.event && r1.event->kind == BatteryEventKind::Empty) {
            s1 = r1.state;
            r.trace.push_back({phase.name, s1, s2, i_ch});
            r.failure = DualBatteryFailure{phase.name, r1.event->time_s};
            break;
        }
        s1 = r1.state;
        r.trace.push_back({phase.name, s1, s2, i_ch});
    }

    r.b1_final = s1;
    r.b2_final = s2;
    r.gamma_b1 = 1.0 - s1.total_as() / r.b1_initial.total_as();
    r.gamma_b2 = 1.0 - s2.total_as() / r.b2_initial.total_as();
    return r;
}

/// Both batteries starting full.
inline DualBatteryResult dual_battery_run(const std::vector<MissionPhase>& phases,
                                          const BatteryParams& b1,
                                          const BatteryParams& b2,
                                          double i_ch_limit_a) {
    return dual_battery_run(phases, b1, b2, i_ch_limit_a, initial_state(b1),
                            initial_state(b2));
}

}  // namespace uavem
