// cavsim.cpp - Command-line entry point for the cavity emission simulator

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cavsim/commands.hpp"

namespace {

enum ExitCode { kOk = 0, kUnexpected = 1, kConfigError = 2, kNumericalAbort = 3, kVerificationFailure = 4 };

struct ScenarioFlags {
    std::string config_path;
    std::string preset_name;
    std::optional<std::size_t> grid_count;
    std::optional<double> dt;
    std::optional<long long> seed; // reserved; every run is deterministic
};

void add_scenario_flags(CLI::App* cmd, ScenarioFlags& f)
{
    cmd->add_option("--config", f.config_path, "Scenario JSON file");
    cmd->add_option("--preset,--scenario", f.preset_name, "Named preset scenario");
    cmd->add_option("--grid-count", f.grid_count, "Override the number of continuum grid points");
    cmd->add_option("--dt", f.dt, "Override the integrator time step");
    cmd->add_option("--seed", f.seed, "Reserved (dynamics are deterministic)");
}

cavsim::ScenarioConfig load_scenario(const ScenarioFlags& f)
{
    if (!f.config_path.empty() && !f.preset_name.empty())
        throw cavsim::ConfigError("config: --config and --preset are mutually exclusive");
    cavsim::ScenarioConfig cfg;
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) throw cavsim::ConfigError("config: cannot open " + f.config_path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw cavsim::ConfigError(std::string("config: invalid JSON: ") + e.what());
        }
        cfg = cavsim::scenario_from_json(j);
    } else if (!f.preset_name.empty()) {
        cfg = cavsim::preset(f.preset_name);
    } else {
        throw cavsim::ConfigError("config: provide --config <path> or --preset <name>");
    }
    if (f.grid_count) cfg.grid.count = *f.grid_count;
    if (f.dt) cfg.integrator.dt = *f.dt;
    cfg.validate();
    return cfg;
}

void report(const cavsim::RunManifest& m)
{
    for (const auto& w : m.warnings) std::cerr << "warning: " << w << '\n';
    for (const auto& o : m.outputs) std::cout << o << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Single-photon emission from a leaky cavity with a driven three-level atom"};
    app.require_subcommand(1);
    std::string out = "out";

    ScenarioFlags sim_flags;
    std::string model_name;
    auto* simulate = app.add_subcommand("simulate", "Integrate one model and write trajectory data");
    add_scenario_flags(simulate, sim_flags);
    simulate->add_option("--model", model_name, "true | true_lorentzian | inout | pseudo | master")->required();
    simulate->add_option("--out", out, "Output directory");

    ScenarioFlags cmp_flags;
    auto* compare = app.add_subcommand("compare", "Run the three representations on one grid");
    add_scenario_flags(compare, cmp_flags);
    compare->add_option("--out", out, "Output directory");

    ScenarioFlags shape_flags;
    bool validate = false;
    std::string target_kind = "gaussian";
    std::optional<double> eta;
    std::optional<double> duration;
    auto* shape = app.add_subcommand("shape", "Design the drive for a target photon flux");
    add_scenario_flags(shape, shape_flags);
    shape->add_option("--target", target_kind, "Target shape (gaussian)");
    shape->add_option("--eta", eta, "Target efficiency, strictly between 0 and 1");
    shape->add_option("--duration", duration, "Target duration T");
    shape->add_flag("--validate", validate, "Compare with the full pseudo-mode model");
    shape->add_option("--out", out, "Output directory or .csv path");

    ScenarioFlags mirror_flags;
    std::vector<double> band;
    std::size_t scan_count = 2001;
    int neighbors = 5;
    auto* mirror = app.add_subcommand("mirror", "Scan the cavity response T(omega)");
    add_scenario_flags(mirror, mirror_flags);
    mirror->add_option("--scan", band, "Frequency band: lo hi")->expected(2)->required();
    mirror->add_option("--count", scan_count, "Number of scan points");
    mirror->add_option("--neighbors", neighbors, "Lorentzian modes on each side");
    mirror->add_option("--out", out, "Output directory");

    ScenarioFlags coup_flags;
    auto* couplings = app.add_subcommand("couplings", "Scan the coupling functions");
    add_scenario_flags(couplings, coup_flags);
    couplings->add_option("--scan", band, "Frequency band: lo hi")->expected(2)->required();
    couplings->add_option("--count", scan_count, "Number of scan points");
    couplings->add_option("--out", out, "Output directory");

    auto* verify = app.add_subcommand("verify", "Run the numerical oracle suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*simulate) {
            report(cavsim::cmd_simulate(cavsim::parse_model(model_name), load_scenario(sim_flags), out));
        } else if (*compare) {
            report(cavsim::cmd_compare(load_scenario(cmp_flags), out));
        } else if (*shape) {
            if (target_kind != "gaussian") throw cavsim::ConfigError("target.kind: only 'gaussian' is supported");
            if (shape_flags.config_path.empty() && shape_flags.preset_name.empty()) shape_flags.preset_name = "fig6a";
            auto cfg = load_scenario(shape_flags);
            if (!cfg.target) cfg.target = cavsim::TargetSpec{};
            if (eta) cfg.target->eta = *eta;
            if (duration) cfg.target->duration = *duration;
            // A retargeted run redesigns any previously tabulated drive.
            if ((eta || duration) && cfg.atom.drive.kind() == cavsim::DriveKind::tabulated)
                cfg.atom.drive = cavsim::DriveEnvelope::zero();
            report(cavsim::cmd_shape(cfg, validate, out));
        } else if (*mirror) {
            if (mirror_flags.config_path.empty() && mirror_flags.preset_name.empty()) mirror_flags.preset_name = "fig3a";
            report(cavsim::cmd_mirror_scan(load_scenario(mirror_flags), band[0], band[1], scan_count, neighbors, out));
        } else if (*couplings) {
            if (coup_flags.config_path.empty() && coup_flags.preset_name.empty()) coup_flags.preset_name = "fig3a";
            report(cavsim::cmd_couplings_scan(load_scenario(coup_flags), band[0], band[1], scan_count, out));
        } else if (*verify) {
            bool all = true;
            for (const auto& c : cavsim::run_oracle_suite()) {
                std::printf("[%s] %-52s measured=%.3e tol=%.1e\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                            c.measured, c.tolerance);
                all = all && c.passed;
            }
            return all ? kOk : kVerificationFailure;
        }
    } catch (const cavsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const cavsim::NumericalAbort& e) {
        std::cerr << "numerical abort: " << e.what() << '\n';
        return kNumericalAbort;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUnexpected;
    }
    return kOk;
}
