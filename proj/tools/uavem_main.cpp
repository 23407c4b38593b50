// uavem command-line front end: single mission runs, parameter sweeps,
// config validation and the bundled preset list.
//
// Exit codes: 0 success, 1 config error, 2 infeasible mission,
// 3 internal numerical failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "uavem/uavem.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitNumerical = 3;

struct CommonOpts {
    std::string config_path;
    std::string preset_name;
    std::string stage2_mode;
    std::string out_path;
    std::string format = "csv";
    double dt = 0.0;
};

void add_common_options(CLI::App* cmd, CommonOpts& o, bool with_output) {
    auto* config = cmd->add_option("--config", o.config_path,
                                   "Path to a JSON configuration file");
    auto* preset =
        cmd->add_option("--preset", o.preset_name, "Bundled parameter set name");
    config->excludes(preset);
    cmd->add_option("--stage2-mode", o.stage2_mode,
                    "Translation-stage duration formula")
        ->check(CLI::IsMember({"paper-literal", "corrected"}));
    cmd->add_option("--dt", o.dt, "Integration step in seconds")
        ->check(CLI::PositiveNumber);
    if (with_output) {
        cmd->add_option("--out", o.out_path, "Write output here instead of stdout");
        cmd->add_option("--format", o.format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}));
    }
}

uavem::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw uavem::ConfigError("cannot open config file '" + path + "'");
    uavem::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw uavem::ConfigError("config file '" + path + "': " + e.what());
    }
    return j;
}

struct LoadedConfig {
    uavem::MissionConfig mission;
    std::optional<uavem::json> document;  // present when loaded from a file
};

LoadedConfig load_config(const CommonOpts& o) {
    LoadedConfig lc;
    if (!o.config_path.empty()) {
        lc.document = load_json_file(o.config_path);
        lc.mission = uavem::mission_config_from_json(*lc.document);
    } else if (!o.preset_name.empty()) {
        lc.mission = uavem::preset(o.preset_name);
    } else {
        throw uavem::ConfigError("either --config or --preset is required");
    }
    if (!o.stage2_mode.empty()) {
        lc.mission.stage2_mode = uavem::parse_stage2_mode(o.stage2_mode);
    }
    if (o.dt > 0.0) lc.mission.integration_step_s = o.dt;
    return lc;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw uavem::ConfigError("cannot open output file '" + out_path + "'");
    out << text;
}

int run_command(const CommonOpts& o) {
    const LoadedConfig lc = load_config(o);
    const uavem::MissionResult result = uavem::run_mission(lc.mission);
    if (o.format == "json") {
        write_output(uavem::mission_report_json(result).dump(2) + "\n", o.out_path);
    } else {
        write_output(uavem::mission_report_csv(result), o.out_path);
    }
    return kExitOk;
}

struct SweepOpts {
    std::string variable;
    std::string axis;
    double from = 0.0;
    double to = 0.0;
    int points = 0;
    double source_power = -1.0;
    bool has_range = false;
};

int sweep_command(const CommonOpts& o, const SweepOpts& so) {
    const LoadedConfig lc = load_config(o);

    uavem::SweepSpec spec;
    if (lc.document && lc.document->contains("sweep")) {
        spec = uavem::sweep_spec_from_json(*lc.document, lc.mission);
    } else {
        spec.base = lc.mission;
        if (so.variable.empty()) {
            throw uavem::ConfigError(
                "sweep: no 'sweep' section in the config and no --variable given");
        }
    }
    if (!so.variable.empty()) {
        spec.variable = uavem::parse_sweep_variable(so.variable);
    }
    if (!so.axis.empty()) spec.axis = uavem::parse_axis(so.axis);
    if (so.has_range) {
        spec.grid = uavem::make_grid(so.from, so.to, so.points);
    }
    if (so.source_power >= 0.0) spec.source_power_w = so.source_power;
    spec.validate();

    const uavem::SweepTable table = uavem::run_sweep(spec);
    if (o.format == "json") {
        write_output(uavem::sweep_json(table).dump(2) + "\n", o.out_path);
    } else {
        write_output(uavem::sweep_csv(table), o.out_path);
    }
    return kExitOk;
}

int validate_command(const CommonOpts& o) {
    load_config(o);  // throws on any problem
    std::cout << "configuration ok\n";
    return kExitOk;
}

int presets_command(const std::string& show_name) {
    if (!show_name.empty()) {
        const uavem::MissionConfig cfg = uavem::preset(show_name);
        std::cout << uavem::mission_config_to_json(cfg).dump(2) << "\n";
        return kExitOk;
    }
    for (const auto& p : uavem::preset_list()) {
        std::cout << p.name << " — " << p.description << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"uavem — quadrotor mission energy simulator"};
    app.require_subcommand(1);

    CommonOpts run_opts, sweep_opts_common, validate_opts;
    SweepOpts sweep_opts;

    auto* run = app.add_subcommand("run", "Fly one mission and report energies");
    add_common_options(run, run_opts, true);

    auto* sweep = app.add_subcommand("sweep", "Evaluate a variable across a grid");
    add_common_options(sweep, sweep_opts_common, true);
    sweep->add_option("--variable", sweep_opts.variable, "Swept variable")
        ->check(CLI::IsMember({"rotor-velocity", "distance", "wind",
                               "source-distance", "battery-size"}));
    sweep->add_option("--axis", sweep_opts.axis, "Axis for distance/wind sweeps")
        ->check(CLI::IsMember({"x", "y", "z"}));
    auto* from = sweep->add_option("--from", sweep_opts.from, "Grid start");
    auto* to = sweep->add_option("--to", sweep_opts.to, "Grid end");
    auto* points = sweep->add_option("--points", sweep_opts.points, "Grid size")
                       ->check(CLI::PositiveNumber);
    from->needs(to, points);
    to->needs(from);
    points->needs(from);
    sweep->add_option("--source-power", sweep_opts.source_power,
                      "Fixed source power (W) for source-distance sweeps");

    auto* validate = app.add_subcommand("validate", "Check a configuration");
    add_common_options(validate, validate_opts, false);

    std::string show_preset;
    auto* presets = app.add_subcommand("presets", "List bundled parameter sets");
    presets->add_option("--show", show_preset,
                        "Print the named preset as a JSON config document");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (run->parsed()) return run_command(run_opts);
        if (sweep->parsed()) {
            sweep_opts.has_range = from->count() > 0;
            return sweep_command(sweep_opts_common, sweep_opts);
        }
        if (validate->parsed()) return validate_command(validate_opts);
        return presets_command(show_preset);
    } catch (const uavem::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const uavem::InfeasibleError& e) {
        std::cerr << "infeasible mission: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const uavem::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
