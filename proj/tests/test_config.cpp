#include <catch2/catch_amalgamated.hpp>

#include "uavem/config.hpp"

using Catch::Matchers::WithinRel;
using namespace uavem;

TEST_CASE("table1 preset carries the bundled parameter set") {
    const MissionConfig cfg = table1_preset();
    CHECK(cfg.start_m.x == 100.0);
    CHECK(cfg.destination_m.z == 100.0);
    CHECK(cfg.external_force_n.z == -12.74);
    CHECK(cfg.hover_duration_s == 20.0);
    CHECK(cfg.stage2_mode == StageTwoFormula::Corrected);

    // datasheet conversions happen once, at load
    CHECK_THAT(cfg.motor.torque_const_nm_per_a, WithinRel(9.5493 / 920.0, 1e-14));
    CHECK(cfg.motor.kv_rpm_per_volt == 920.0);
    CHECK_THAT(cfg.battery1.flow_rate_per_s, WithinRel(4.5e-5 / 60.0, 1e-14));

    CHECK_THAT(cfg.comm.total_power_w(), WithinRel(5.0, 1e-12));
    CHECK(cfg.battery1.capacity_as == 36000.0);
    CHECK(cfg.battery2.capacity_as == 36000.0);
    CHECK(cfg.charging.charge_current_a == 10.0);
    CHECK(cfg.charging.policy == SourcePowerPolicy::TrackChargeCap);
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("preset lookup") {
    CHECK_NOTHROW(preset("table1"));
    CHECK_THROWS_AS(preset("no-such-preset"), ConfigError);
    const auto list = preset_list();
    REQUIRE(list.size() == 1);
    CHECK(list[0].name == "table1");
}

TEST_CASE("config round trip preserves the mission") {
    const MissionConfig cfg = table1_preset();
    const json j = mission_config_to_json(cfg);
    const MissionConfig back = mission_config_from_json(j);
    CHECK(back.start_m.x == cfg.start_m.x);
    CHECK(back.external_force_n.y == cfg.external_force_n.y);
    CHECK(back.hover_duration_s == cfg.hover_duration_s);
    CHECK(back.airframe.lift_coeff_n_s2_per_rad2 ==
          cfg.airframe.lift_coeff_n_s2_per_rad2);
    CHECK(back.motor.torque_const_nm_per_a == cfg.motor.torque_const_nm_per_a);
    CHECK(back.battery1.flow_rate_per_s == cfg.battery1.flow_rate_per_s);
    CHECK(back.battery2.capacity_as == cfg.battery2.capacity_as);
    CHECK(back.dlc.chi_m == cfg.dlc.chi_m);
    CHECK(back.charging.policy == cfg.charging.policy);
    CHECK(back.stage2_mode == cfg.stage2_mode);
}

TEST_CASE("missing keys are reported with their path") {
    json j = mission_config_to_json(table1_preset());
    j["airframe"].erase("mass_kg");
    try {
        mission_config_from_json(j);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("airframe.mass_kg") != std::string::npos);
    }
}

TEST_CASE("invariant violations are rejected at load") {
    SECTION("split factor out of range") {
        json j = mission_config_to_json(table1_preset());
        j["battery"]["split_factor"] = 1.5;
        CHECK_THROWS_AS(mission_config_from_json(j), ConfigError);
    }
    SECTION("destination equal to start") {
        json j = mission_config_to_json(table1_preset());
        j["mission"]["destination_m"] = j["mission"]["start_m"];
        CHECK_THROWS_AS(mission_config_from_json(j), ConfigError);
    }
    SECTION("negative hover duration") {
        json j = mission_config_to_json(table1_preset());
        j["mission"]["hover_duration_s"] = -1.0;
        CHECK_THROWS_AS(mission_config_from_json(j), ConfigError);
    }
}

TEST_CASE("stage2 mode parsing") {
    CHECK(parse_stage2_mode("corrected") == StageTwoFormula::Corrected);
    CHECK(parse_stage2_mode("paper-literal") == StageTwoFormula::PaperLiteral);
    CHECK_THROWS_AS(parse_stage2_mode("bogus"), ConfigError);
    CHECK(to_string(StageTwoFormula::PaperLiteral) == "paper-literal");
}

TEST_CASE("sweep section parsing") {
    json j = mission_config_to_json(table1_preset());
    j["sweep"] = {{"variable", "wind"},
                  {"axis", "z"},
                  {"from", -10.0},
                  {"to", 40.0},
                  {"points", 11}};
    const SweepSpec spec = sweep_spec_from_json(j, table1_preset());
    CHECK(spec.variable == SweepVariable::WindComponent);
    CHECK(spec.axis == Axis::Z);
    REQUIRE(spec.grid.size() == 11);
    CHECK(spec.grid.front() == -10.0);
    CHECK(spec.grid.back() == 40.0);

    SECTION("explicit value lists are accepted") {
        j["sweep"] = {{"variable", "battery-size"},
                      {"values", {9000.0, 10800.0, 36000.0}}};
        const SweepSpec s2 = sweep_spec_from_json(j, table1_preset());
        REQUIRE(s2.grid.size() == 3);
        CHECK(s2.grid[1] == 10800.0);
    }
    SECTION("non-monotone grids are rejected") {
        j["sweep"] = {{"variable", "wind"}, {"values", {1.0, 1.0, 2.0}}};
        CHECK_THROWS_AS(sweep_spec_from_json(j, table1_preset()), ConfigError);
    }
    SECTION("source-distance sweeps need a source power") {
        j["sweep"] = {{"variable", "source-distance"},
                      {"from", 10.0},
                      {"to", 100.0},
                      {"points", 5}};
        CHECK_THROWS_AS(sweep_spec_from_json(j, table1_preset()), ConfigError);
        j["sweep"]["source_power_w"] = 400.0;
        CHECK_NOTHROW(sweep_spec_from_json(j, table1_preset()));
    }
}

TEST_CASE("uniform grid construction") {
    const auto g = make_grid(0.0, 10.0, 5);
    REQUIRE(g.size() == 5);
    CHECK(g[0] == 0.0);
    CHECK(g[2] == 5.0);
    CHECK(g[4] == 10.0);
    CHECK_THROWS_AS(make_grid(1.0, 0.0, 5), ConfigError);
    CHECK_THROWS_AS(make_grid(0.0, 1.0, 0), ConfigError);
}
