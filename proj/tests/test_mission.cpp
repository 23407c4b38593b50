#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "uavem/config.hpp"
#include "uavem/mission.hpp"
#include "uavem/report_io.hpp"
#include "uavem/sweep.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace uavem;

TEST_CASE("reference mission end to end") {
    const MissionConfig cfg = table1_preset();
    const MissionResult r = run_mission(cfg);

    SECTION("plan and energies match the scripted evaluation") {
        CHECK_THAT(r.plan.total_time_s(), WithinRel(14.584067913162837, 1e-9));
        CHECK_THAT(r.energy.e_travel_j, WithinRel(21883.4587254042, 1e-9));
        CHECK_THAT(r.energy.e_hover_j, WithinRel(28685.455761139863, 1e-9));
        CHECK_THAT(r.energy.e_comm_j, WithinRel(100.0, 1e-12));
        CHECK_THAT(r.hover_velocity_rad_s, WithinRel(956.2612321688812, 1e-12));
    }

    SECTION("consumed total keeps the decomposition identity") {
        CHECK(r.energy.e_consumed_total_j ==
              r.energy.e_travel_j + r.energy.e_hover_j + r.energy.e_comm_j);
        double sum = 0.0;
        for (double s : r.energy.per_stage_j) sum += s;
        CHECK_THAT(r.energy.e_travel_j, WithinRel(sum, 1e-12));
    }

    SECTION("cap-tracking charging harvests the full charge power") {
        // Ps is chosen so P0 equals I_ch * e_nom = 111 W
        CHECK_THAT(r.harvested_power_w, WithinRel(111.0, 1e-9));
        CHECK_THAT(r.energy.e_harvested_j, WithinRel(111.0 * 20.0, 1e-9));
    }

    SECTION("hover plus communication outweighs travel on the battery") {
        CHECK(r.gamma_b1_hover_comm > r.gamma_b1_travel);
        CHECK(r.gamma_b1_travel > 0.0);
    }

    SECTION("battery bookkeeping is conservative") {
        CHECK_THAT(r.batteries.gamma_b1,
                   WithinRel(r.gamma_b1_travel + r.gamma_b1_hover_comm, 1e-9));
        CHECK(r.gamma_b2_gain > 0.0);
    }
}

TEST_CASE("mission without hover reduces to pure travel") {
    MissionConfig cfg = table1_preset();
    cfg.hover_duration_s = 0.0;
    cfg.comm.node_count = 0;
    cfg.charging.policy = SourcePowerPolicy::Fixed;
    cfg.charging.source_power_w = 0.0;
    const MissionResult r = run_mission(cfg);
    CHECK(r.energy.e_hover_j == 0.0);
    CHECK(r.energy.e_comm_j == 0.0);
    CHECK(r.energy.e_harvested_j == 0.0);
    CHECK(r.energy.e_consumed_total_j == r.energy.e_travel_j);
    CHECK(r.gamma_b1_hover_comm == 0.0);
    CHECK_THAT(r.gamma_b2_gain, WithinAbs(0.0, 1e-12));
}

TEST_CASE("wpt on versus off moves the charged battery by two points") {
    MissionConfig on = table1_preset();
    on.battery1.capacity_as = on.battery2.capacity_as = 10800.0;
    MissionConfig off = on;
    off.charging.policy = SourcePowerPolicy::Fixed;
    off.charging.source_power_w = 0.0;

    const MissionResult r_on = run_mission(on);
    const MissionResult r_off = run_mission(off);
    const double delta_pp = 100.0 * (r_on.gamma_b2_gain - r_off.gamma_b2_gain);
    CHECK_THAT(r_off.gamma_b2_gain, WithinAbs(0.0, 1e-12));
    CHECK_THAT(delta_pp, WithinAbs(2.0, 0.3));
}

TEST_CASE("infeasible missions carry phase information") {
    SECTION("battery empties mid-mission") {
        MissionConfig cfg = table1_preset();
        cfg.battery1.capacity_as = cfg.battery2.capacity_as = 500.0;
        try {
            run_mission(cfg);
            FAIL("expected InfeasibleError");
        } catch (const InfeasibleError& e) {
            CHECK(e.code() == "battery-empty");
            CHECK(!e.phase().empty());
            CHECK(e.time_s().has_value());
        }
    }
    SECTION("weak airframe cannot fly the mission") {
        MissionConfig cfg = table1_preset();
        cfg.airframe.max_rotor_velocity_rad_s = 900.0;
        CHECK_THROWS_AS(run_mission(cfg), InfeasibleError);
    }
}

TEST_CASE("rotor velocity sweep reproduces the time/energy falloff") {
    SweepSpec spec;
    spec.base = table1_preset();
    spec.variable = SweepVariable::RotorVelocity;
    spec.grid = make_grid(956.3, 1047.197, 25);
    const SweepTable t = run_sweep(spec);
    REQUIRE(t.rows.size() == 25);
    double prev_tau = 1e300, prev_e = 1e300;
    for (const auto& row : t.rows) {
        REQUIRE(row.error.empty());
        CHECK(row.values[0] < prev_tau);
        CHECK(row.values[1] < prev_e);
        prev_tau = row.values[0];
        prev_e = row.values[1];
    }
}

TEST_CASE("sweep rows below the hover velocity carry error markers") {
    SweepSpec spec;
    spec.base = table1_preset();
    spec.variable = SweepVariable::RotorVelocity;
    spec.grid = {900.0, 940.0, 1000.0, 1047.197};
    const SweepTable t = run_sweep(spec);
    REQUIRE(t.rows.size() == 4);
    CHECK(!t.rows[0].error.empty());
    CHECK(std::isnan(t.rows[0].values[0]));
    CHECK(!t.rows[1].error.empty());
    CHECK(t.rows[2].error.empty());
    CHECK(t.rows[3].error.empty());
}

TEST_CASE("wind sweep along x is parabolic around still air") {
    SweepSpec spec;
    spec.base = table1_preset();
    spec.variable = SweepVariable::WindComponent;
    spec.axis = Axis::X;
    spec.grid = make_grid(-12.0, 12.0, 25);  // symmetric, includes 0
    const SweepTable t = run_sweep(spec);

    double best = 1e300;
    double best_x = -1.0;
    for (const auto& row : t.rows) {
        if (!row.error.empty()) continue;
        if (row.values[0] < best) {
            best = row.values[0];
            best_x = row.x;
        }
    }
    CHECK(best_x == 0.0);
    // the hover cost is even in the wind component: valued rows mirror
    const std::size_t n = t.rows.size();
    for (std::size_t i = 0; i < n / 2; ++i) {
        const auto& a = t.rows[i];
        const auto& b = t.rows[n - 1 - i];
        CHECK(a.error.empty() == b.error.empty());
        if (a.error.empty() && b.error.empty()) {
            CHECK_THAT(a.values[0], WithinRel(b.values[0], 1e-9));
        }
    }
}

TEST_CASE("wind sweep along z marks the balance boundaries") {
    SweepSpec spec;
    spec.base = table1_preset();
    spec.variable = SweepVariable::WindComponent;
    spec.axis = Axis::Z;
    spec.grid = make_grid(-10.0, 40.0, 101);  // step 0.5
    const SweepTable t = run_sweep(spec);

    // the window of rows where the vehicle keeps its balance
    double first_ok = 1e300, last_ok = -1e300;
    for (const auto& row : t.rows) {
        if (row.error == "infeasible-attitude" || row.error == "cannot-translate") {
            continue;
        }
        first_ok = std::min(first_ok, row.x);
        last_ok = std::max(last_ok, row.x);
    }
    CHECK_THAT(first_ok, WithinAbs(-4.0, 0.6));
    CHECK_THAT(last_ok, WithinAbs(33.7, 0.6));

    // hover values exist only while the rotors can supply the thrust;
    // beyond that the rows carry the hover error, not values
    for (const auto& row : t.rows) {
        if (row.error == "infeasible-hover") {
            CHECK(row.x > 29.0);
            CHECK(std::isnan(row.values[0]));
        }
    }
}

TEST_CASE("source distance sweep degrades with path loss") {
    SweepSpec spec;
    spec.base = table1_preset();
    spec.variable = SweepVariable::SourceDistance;
    spec.grid = make_grid(10.0, 800.0, 40);
    spec.source_power_w = 400.0;
    const SweepTable t = run_sweep(spec);
    double prev_e = 1e300, prev_z = 1e300;
    for (const auto& row : t.rows) {
        REQUIRE(row.error.empty());
        CHECK(row.values[0] < prev_e);
        CHECK(row.values[1] < prev_z);
        prev_e = row.values[0];
        prev_z = row.values[1];
    }
}

TEST_CASE("battery size sweep dilutes the consumed ratio") {
    SweepSpec spec;
    spec.base = table1_preset();
    spec.variable = SweepVariable::BatterySize;
    spec.grid = make_grid(9000.0, 36000.0, 10);
    const SweepTable t = run_sweep(spec);
    double prev = 1e300;
    for (const auto& row : t.rows) {
        REQUIRE(row.error.empty());
        CHECK(row.values[0] < prev);  // gamma_b1 falls as capacity grows
        CHECK(row.values[2] > row.values[1]);  // hover+comm beats travel
        prev = row.values[0];
    }
}

TEST_CASE("sweep output is deterministic") {
    SweepSpec spec;
    spec.base = table1_preset();
    spec.variable = SweepVariable::WindComponent;
    spec.axis = Axis::Z;
    spec.grid = make_grid(-5.0, 30.0, 36);
    const std::string a = sweep_csv(run_sweep(spec));
    const std::string b = sweep_csv(run_sweep(spec));
    CHECK(a == b);
    CHECK(a.find("e_hover_j") != std::string::npos);
}

TEST_CASE("mission report renders both formats deterministically") {
    const MissionResult r = run_mission(table1_preset());
    const std::string csv1 = mission_report_csv(r);
    const std::string csv2 = mission_report_csv(run_mission(table1_preset()));
    CHECK(csv1 == csv2);
    CHECK(csv1.find("quantity,value,unit") == 0);
    CHECK(csv1.find("e_consumed_total") != std::string::npos);

    const json j = mission_report_json(r);
    CHECK(j.contains("plan"));
    CHECK(j.contains("energy"));
    CHECK(j.contains("batteries"));
    CHECK_THAT(j["energy"]["e_comm_j"].get<double>(), WithinRel(100.0, 1e-12));
}

TEST_CASE("sweep csv marks failed rows with NaN and a code") {
    SweepSpec spec;
    spec.base = table1_preset();
    spec.variable = SweepVariable::RotorVelocity;
    spec.grid = {900.0, 1047.197};
    const std::string csv = sweep_csv(run_sweep(spec));
    CHECK(csv.find("NaN") != std::string::npos);
    CHECK(csv.find("cannot-translate") != std::string::npos);
}
