// test_cli.cpp - Commands, output files, manifests and process exit codes

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cavsim/commands.hpp"

using namespace cavsim;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::path(CAVSIM_TEST_TMP) / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

int run_cli(const std::string& args)
{
    const std::string cmd = std::string(CAVSIM_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string header_of(const fs::path& p)
{
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    return line;
}

ScenarioConfig quick_emission()
{
    auto cfg = preset("fig3a");
    cfg.grid.count = 801;
    cfg.tf = 2.0;
    return cfg;
}

} // namespace

TEST(Simulate, WritesTrajectorySpectrumAndManifest)
{
    const auto dir = scratch("simulate_inout");
    const auto m = cmd_simulate(Model::inside_outside, quick_emission(), dir);
    EXPECT_TRUE(fs::exists(dir / "trajectory.csv"));
    EXPECT_TRUE(fs::exists(dir / "spectrum.csv"));
    EXPECT_EQ(header_of(dir / "trajectory.csv"), "t,P_g,P_e,P_photon,n_leaked");
    const auto j = read_json(dir / "manifest.json");
    EXPECT_EQ(j["config_hash"], config_hash(quick_emission()));
    EXPECT_EQ(j["code_version"], kCodeVersion);
    EXPECT_TRUE(j.contains("wall_time_s"));
    EXPECT_EQ(j["outputs"].size(), 3u);
    EXPECT_FALSE(m.warnings.empty()); // steady state is not reached by t = 2
}

TEST(Simulate, MasterWritesDensityColumns)
{
    const auto dir = scratch("simulate_master");
    auto cfg = preset("fig4_G60");
    cmd_simulate(Model::master, cfg, dir);
    EXPECT_EQ(header_of(dir / "master.csv"), "t,rho11,rho22,rho33,rho44,purity");
    EXPECT_FALSE(fs::exists(dir / "spectrum.csv"));
    const auto j = read_json(dir / "manifest.json");
    EXPECT_GT(j["metrics"]["min_eigenvalue"].get<double>(), -1e-8);
}

TEST(Simulate, EmptyWindowStillWritesOutputs)
{
    const auto dir = scratch("simulate_empty");
    auto cfg = quick_emission();
    cfg.tf = cfg.t0;
    const auto m = cmd_simulate(Model::true_mode, cfg, dir);
    EXPECT_TRUE(fs::exists(dir / "trajectory.csv"));
    bool empty_warning = false;
    for (const auto& w : m.warnings) empty_warning |= w.find("zero-length") != std::string::npos;
    EXPECT_TRUE(empty_warning);
}

TEST(Simulate, OutputIsDeterministic)
{
    const auto a = scratch("det_a");
    const auto b = scratch("det_b");
    cmd_simulate(Model::true_mode, quick_emission(), a);
    cmd_simulate(Model::true_mode, quick_emission(), b);
    EXPECT_EQ(slurp(a / "trajectory.csv"), slurp(b / "trajectory.csv"));
    EXPECT_EQ(slurp(a / "spectrum.csv"), slurp(b / "spectrum.csv"));
}

TEST(Compare, EmissionMetrics)
{
    const auto dir = scratch("compare");
    const auto m = cmd_compare(preset("fig3a"), dir);
    for (const char* f : {"spectra.csv", "time_profiles.csv", "metrics.json", "manifest.json"})
        EXPECT_TRUE(fs::exists(dir / f)) << f;
    const auto j = read_json(dir / "metrics.json");
    for (const char* key : {"true_vs_lorentzian", "true_vs_inout", "lorentzian_vs_inout"}) {
        EXPECT_LT(j["relative_l2_area"][key].get<double>(), 0.05) << key;
        EXPECT_LT(j["relative_l2_peak"][key].get<double>(), 0.05) << key;
    }
    EXPECT_TRUE(j.contains("peak_shift"));
    EXPECT_LT(j["time_profile_relative_l2"].get<double>(), 0.05);
    EXPECT_EQ(m.metrics, j);
}

TEST(Shape, DesignsAndValidates)
{
    const auto dir = scratch("shape");
    const auto m = cmd_shape(preset("fig6a"), true, dir / "drive.csv");
    EXPECT_TRUE(fs::exists(dir / "drive.csv"));
    EXPECT_TRUE(fs::exists(dir / "drive.manifest.json"));
    EXPECT_EQ(header_of(dir / "drive.csv"), "t,omega_drive,theta,flux_predicted,flux_target,flux_realized");
    EXPECT_NEAR(m.metrics["n_final"].get<double>(), 0.9877, 1e-3);
    EXPECT_NEAR(m.metrics["theta_final"].get<double>(), std::log(100.0), 1e-3);
    for (const auto& w : m.warnings) EXPECT_EQ(w.find("regime"), std::string::npos) << w;
}

TEST(Shape, RedesignsWhenDriveIsZero)
{
    auto cfg = preset("fig6a");
    cfg.atom.drive = DriveEnvelope::zero();
    cfg.target->eta = 0.9;
    const auto o = run_shape(cfg, false);
    EXPECT_TRUE(o.designed);
    EXPECT_NEAR(o.predicted.integral(), 0.9, 1e-4);
    EXPECT_FALSE(run_shape(preset("fig6b"), false).designed);
    cfg.target.reset();
    EXPECT_THROW(run_shape(cfg, false), ConfigError);
}

TEST(Scans, MirrorAndCouplings)
{
    const auto dir = scratch("scans");
    const auto cfg = preset("fig3a");
    const auto mm = cmd_mirror_scan(cfg, 2300.0, 2500.0, 201, 5, dir);
    EXPECT_EQ(header_of(dir / "mirror_scan.csv"), "omega,re_T,im_T,abs_T2,lorentzian_T2");
    EXPECT_NEAR(mm.metrics["Gamma_m"].get<double>(), 1.98163569301, 1e-9);
    const auto mc = cmd_couplings_scan(cfg, 2300.0, 2500.0, 201, dir);
    EXPECT_EQ(header_of(dir / "couplings_scan.csv"), "omega,abs_eta_exact,abs_eta_lorentzian,abs_kappa");
    EXPECT_TRUE(mc.metrics.contains("retardation_parameter"));
    EXPECT_THROW(cmd_mirror_scan(cfg, 2500.0, 2300.0, 201, 5, dir), ConfigError);
    EXPECT_THROW(cmd_couplings_scan(cfg, -1.0, 2300.0, 201, dir), ConfigError);
}

TEST(OracleSuite, AllChecksPass)
{
    for (const auto& c : run_oracle_suite()) EXPECT_TRUE(c.passed) << c.name << " measured " << c.measured;
}

TEST(Process, ExitCodes)
{
    const auto dir = scratch("process");
    EXPECT_EQ(run_cli("simulate --preset fig4_G60 --model pseudo --out " + dir.string()), 0);
    EXPECT_TRUE(fs::exists(dir / "trajectory.csv"));
    EXPECT_EQ(run_cli("simulate --preset fig4_G60 --model classical --out " + dir.string()), 2);
    EXPECT_EQ(run_cli("simulate --preset nope --model pseudo --out " + dir.string()), 2);
    EXPECT_EQ(run_cli("simulate --model pseudo"), 2);
    EXPECT_EQ(run_cli("shape --eta 1 --out " + dir.string()), 2);
    EXPECT_EQ(run_cli("simulate --preset fig4_G60 --model pseudo --dt 1 --out " + dir.string()), 0);
    {
        std::ofstream bad(dir / "bad.json");
        bad << R"({"cavity": {"L": 0.0013}})";
    }
    EXPECT_EQ(run_cli("simulate --config " + (dir / "bad.json").string() + " --model pseudo --out " + dir.string()), 2);
    {
        std::ofstream broken(dir / "broken.json");
        broken << "{ not json";
    }
    EXPECT_EQ(run_cli("simulate --config " + (dir / "broken.json").string() + " --model pseudo"), 2);
    EXPECT_EQ(run_cli("verify"), 0);
    EXPECT_EQ(run_cli("bogus"), 2);
}

TEST(Process, NumericalAbortExitCode)
{
    const auto dir = scratch("abort");
    auto cfg = preset("fig4_G60");
    cfg.tf = 400.0;
    cfg.integrator.dt = 1.0;
    {
        std::ofstream out(dir / "unstable.json");
        out << to_json(cfg).dump();
    }
    EXPECT_EQ(run_cli("simulate --config " + (dir / "unstable.json").string() + " --model pseudo --out " + dir.string()), 3);
}

TEST(Process, ConfigFileMatchesPreset)
{
    const auto a = scratch("cfg_a");
    const auto b = scratch("cfg_b");
    {
        std::ofstream out(a / "fig4.json");
        out << to_json(preset("fig4_G10")).dump(2);
    }
    ASSERT_EQ(run_cli("simulate --config " + (a / "fig4.json").string() + " --model master --out " + a.string()), 0);
    ASSERT_EQ(run_cli("simulate --preset fig4_G10 --model master --out " + b.string()), 0);
    EXPECT_EQ(slurp(a / "master.csv"), slurp(b / "master.csv"));
    EXPECT_EQ(read_json(a / "manifest.json")["config_hash"], read_json(b / "manifest.json")["config_hash"]);
}
