// test_scenario.cpp - Units, drive envelopes, presets and JSON configs

#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "cavsim/io.hpp"
#include "cavsim/presets.hpp"
#include "cavsim/scenario.hpp"

using namespace cavsim;

namespace {

std::string error_of(const nlohmann::json& j)
{
    try {
        scenario_from_json(j);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST(Units, ScaledConstants)
{
    EXPECT_EQ(UnitSystem::T_ref, 1.0);
    EXPECT_EQ(UnitSystem::c, 1.0);
}

TEST(Drive, Sin2Envelope)
{
    const auto d = DriveEnvelope::sin2(60.0, 1.0);
    EXPECT_DOUBLE_EQ(d(0.5), 60.0);
    EXPECT_NEAR(d(0.25), 30.0, 1e-12);
    EXPECT_EQ(d(-0.1), 0.0);
    EXPECT_EQ(d(1.1), 0.0);
    EXPECT_EQ(d.peak(), 60.0);
}

TEST(Drive, GaussianEnvelope)
{
    const auto d = DriveEnvelope::gaussian(60.0, 1.0);
    EXPECT_DOUBLE_EQ(d(0.0), 60.0);
    EXPECT_NEAR(d(1.0), 60.0 * std::exp(-kPi * kPi), 1e-12);
    EXPECT_NEAR(d(-0.3), d(0.3), 0.0);
}

TEST(Drive, TabulatedIsMonotoneCubicAndZeroOutside)
{
    const auto d = DriveEnvelope::tabulated({0.0, 1.0, 2.0, 3.0, 4.0}, {0.0, 1.0, 1.0, 5.0, 5.0});
    EXPECT_EQ(d(-0.01), 0.0);
    EXPECT_EQ(d(4.01), 0.0);
    EXPECT_DOUBLE_EQ(d(3.0), 5.0);
    // Monotone data stays monotone and flat segments stay flat.
    double prev = d(0.0);
    for (double t = 0.0; t <= 4.0; t += 0.01) {
        EXPECT_GE(d(t), prev - 1e-12);
        prev = d(t);
    }
    EXPECT_NEAR(d(1.5), 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(d.amplitude(), 5.0);
}

TEST(Drive, TabulatedValidation)
{
    EXPECT_THROW(DriveEnvelope::tabulated({0.0, 1.0, 2.0}, {0.0, 1.0, 2.0}), ConfigError);
    EXPECT_THROW(DriveEnvelope::tabulated({0.0, 1.0, 1.0, 2.0}, {0.0, 1.0, 2.0, 3.0}), ConfigError);
    EXPECT_THROW(DriveEnvelope::tabulated({0.0, 1.0}, {0.0}), ConfigError);
    EXPECT_THROW(parse_drive_kind("square"), ConfigError);
}

TEST(Presets, AllValidate)
{
    for (const auto& name : preset_names()) {
        const auto cfg = preset(name);
        EXPECT_NO_THROW(cfg.validate()) << name;
        EXPECT_GT(cfg.tf, cfg.t0) << name;
    }
}

TEST(Presets, ResonanceRoundTrip)
{
    for (const auto& name : preset_names()) {
        const auto& cav = preset(name).cavity;
        EXPECT_NEAR(cav.m * kPi / cav.L / cav.omega_c, 1.0, 1e-3) << name;
    }
    EXPECT_NEAR(kPi / 0.0013 / 2416.0, 1.0, 1e-3);
}

TEST(Presets, EmissionParameters)
{
    const auto a = preset("fig3a");
    EXPECT_DOUBLE_EQ(std::abs(a.atom.g), 0.6);
    EXPECT_DOUBLE_EQ(a.cavity.Gamma_c, 2.0);
    EXPECT_DOUBLE_EQ(a.cavity.omega_c, 2416.0);
    EXPECT_NEAR(a.cavity.L, 0.0013, 1e-6);
    EXPECT_DOUBLE_EQ(a.cavity.mirror.n, 27.735);
    EXPECT_EQ(a.cavity.m, 1);
    EXPECT_DOUBLE_EQ(a.tf, 10.0);
    EXPECT_EQ(a.initial_state, InitialState::excited);
    EXPECT_EQ(a.atom.drive.kind(), DriveKind::zero);
    EXPECT_DOUBLE_EQ(a.atom.atom_position(a.cavity), -0.5 * a.cavity.L);

    const auto b = preset("fig3b");
    EXPECT_EQ(b.cavity.m, 165);
    EXPECT_NEAR(b.cavity.L / a.cavity.L, 165.0, 1e-9);
    EXPECT_DOUBLE_EQ(b.cavity.mirror.n, 2.1756);
    EXPECT_DOUBLE_EQ(b.tf, 20.0);
}

TEST(Presets, RamanParameters)
{
    const auto f4 = preset("fig4_G60");
    EXPECT_DOUBLE_EQ(std::abs(f4.atom.g), 60.0);
    EXPECT_DOUBLE_EQ(f4.atom.Delta, 150.0);
    EXPECT_DOUBLE_EQ(f4.atom.drive.amplitude(), 60.0);
    EXPECT_EQ(f4.atom.drive.kind(), DriveKind::sin2);
    EXPECT_DOUBLE_EQ(preset("fig4_G10").cavity.Gamma_c, 10.0);

    const auto a = preset("fig6a");
    EXPECT_DOUBLE_EQ(std::abs(a.atom.g), 60.0);
    EXPECT_DOUBLE_EQ(a.cavity.Gamma_c, 90.0);
    EXPECT_DOUBLE_EQ(a.atom.Delta, 300.0);
    ASSERT_TRUE(a.target.has_value());
    EXPECT_DOUBLE_EQ(a.target->eta, 0.99);
    EXPECT_EQ(a.initial_state, InitialState::ground);
    EXPECT_EQ(a.atom.drive.kind(), DriveKind::tabulated);

    const auto b = preset("fig6b");
    EXPECT_DOUBLE_EQ(b.cavity.Gamma_c, 10.0);
    EXPECT_EQ(b.atom.drive.kind(), DriveKind::gaussian);
    EXPECT_DOUBLE_EQ(b.atom.drive.amplitude(), 60.0);
}

TEST(Presets, UnknownNameListsValidNames)
{
    try {
        preset("fig9");
        FAIL();
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        for (const auto& name : preset_names()) EXPECT_NE(msg.find(name), std::string::npos);
    }
}

TEST(ConfigJson, RoundTripPreservesHash)
{
    for (const auto& name : preset_names()) {
        const auto cfg = preset(name);
        const auto back = scenario_from_json(to_json(cfg));
        EXPECT_EQ(config_hash(back), config_hash(cfg)) << name;
        EXPECT_EQ(to_json(back), to_json(cfg)) << name;
    }
}

TEST(ConfigJson, DefaultsFillOptionalFields)
{
    const nlohmann::json j = {{"cavity", {{"L", 0.0013}, {"m", 1}, {"omega_c", 2416}, {"Gamma_c", 2}, {"mirror", {{"n", 27.735}}}}},
                              {"atom", {{"g", -0.6}}},
                              {"tf", 1.0}};
    const auto cfg = scenario_from_json(j);
    EXPECT_NEAR(cfg.cavity.mirror.delta, 2.0 * kPi / 2416.0 / (4.0 * 27.735), 1e-15);
    EXPECT_EQ(cfg.grid.count, 4001u);
    EXPECT_DOUBLE_EQ(cfg.grid.half_width, 40.0);
    EXPECT_EQ(cfg.initial_state, InitialState::ground);
    EXPECT_EQ(cfg.atom.drive.kind(), DriveKind::zero);
}

TEST(ConfigJson, ErrorsNameTheField)
{
    auto base = to_json(preset("fig3a"));
    auto j = base;
    j["cavity"].erase("L");
    EXPECT_NE(error_of(j).find("cavity.L"), std::string::npos);
    j = base;
    j["atom"]["g"] = "strong";
    EXPECT_NE(error_of(j).find("atom.g"), std::string::npos);
    j = base;
    j["atom"]["drive"]["kind"] = "square";
    EXPECT_NE(error_of(j).find("atom.drive.kind"), std::string::npos);
    j = base;
    j["grid"]["count"] = 2;
    EXPECT_NE(error_of(j).find("grid.count"), std::string::npos);
    j = base;
    j["initial_state"] = "thermal";
    EXPECT_NE(error_of(j).find("initial_state"), std::string::npos);
    j = base;
    j["tf"] = -1.0;
    EXPECT_NE(error_of(j).find("tf"), std::string::npos);
    j = base;
    j["target"] = {{"eta", 1.0}};
    EXPECT_NE(error_of(j).find("target.eta"), std::string::npos);
    j = base;
    j["cavity"]["mirror"]["n"] = 0.5;
    EXPECT_NE(error_of(j).find("cavity.mirror.n"), std::string::npos);
    EXPECT_NE(error_of(nlohmann::json::array()).find("config"), std::string::npos);
}

TEST(ConfigJson, TabulatedDriveRoundTrip)
{
    auto cfg = preset("fig6a");
    const auto back = scenario_from_json(to_json(cfg));
    for (double t : {-1.0, -0.2, 0.0, 0.3, 1.7}) EXPECT_DOUBLE_EQ(back.atom.drive(t), cfg.atom.drive(t));
}

TEST(ConfigHash, SensitiveToParameters)
{
    auto cfg = preset("fig3a");
    const auto h = config_hash(cfg);
    EXPECT_EQ(h, config_hash(preset("fig3a")));
    EXPECT_EQ(h.size(), 16u);
    cfg.atom.g = -0.61;
    EXPECT_NE(config_hash(cfg), h);
}
