// test_mirror.cpp - Single-layer mirror coefficients and cavity response

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "cavsim/mirror.hpp"
#include "cavsim/presets.hpp"

using namespace cavsim;

namespace {

CavitySpec fig3a() { return preset("fig3a").cavity; }
CavitySpec fig3b() { return preset("fig3b").cavity; }

} // namespace

TEST(FresnelR, VacuumLayerReflectsNothing) { EXPECT_DOUBLE_EQ(fresnel_r(1.0), 0.0); }

TEST(FresnelR, ReferenceIndices)
{
    EXPECT_NEAR(fresnel_r(27.735), 0.93040, 1e-5);
    EXPECT_NEAR(fresnel_r(2.1756), 0.37020, 1e-5);
}

TEST(FresnelR, RejectsIndexBelowOne) { EXPECT_THROW(fresnel_r(0.5), std::domain_error); }

TEST(LayerCoefficients, QuarterWaveReflectionMagnitude)
{
    const auto cav = fig3a();
    const double r0 = cav.mirror.r0();
    const auto lc = layer_coefficients(cav.omega_c, cav.mirror);
    EXPECT_NEAR(std::abs(lc.r), 2.0 * r0 / (1.0 + r0 * r0), 1e-12);
    EXPECT_NEAR(std::abs(lc.r), 0.99741, 1e-5);
}

TEST(LayerCoefficients, UnitarityAtRandomFrequencies)
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> omega(1.0, 2e4);
    std::uniform_real_distribution<double> index(1.0, 40.0);
    for (int i = 0; i < 10000; ++i) {
        const MirrorSpec m = MirrorSpec::quarter_wave(index(rng), 2416.0);
        const auto lc = layer_coefficients(omega(rng), m);
        EXPECT_NEAR(std::norm(lc.t) + std::norm(lc.r), 1.0, 1e-12);
        EXPECT_NEAR(std::abs(lc.t * std::conj(lc.r) + std::conj(lc.t) * lc.r), 0.0, 1e-12);
    }
}

TEST(LayerCoefficients, VacuumLayerIsTransparent)
{
    const MirrorSpec m{1.0, 1e-3};
    for (double w : {1.0, 100.0, 2416.0, 9999.0}) {
        const auto lc = layer_coefficients(w, m);
        EXPECT_NEAR(std::abs(lc.t - cplx(1.0, 0.0)), 0.0, 1e-14);
        EXPECT_NEAR(std::abs(lc.r), 0.0, 1e-14);
    }
}

TEST(ResponseT, MatchesHighPrecisionReference)
{
    // 30-digit evaluation of the same closed form.
    const cplx ref(-9.19975980545119957897895124694, 4.2659897869672873656628867708);
    const cplx T = response_T(2418.5, fig3a());
    EXPECT_NEAR(std::abs(T - ref) / std::abs(ref), 0.0, 1e-9);
}

TEST(ResponseT, PeakLiesWithinTenthOfLinewidth)
{
    const auto cav = fig3a();
    double best = 0.0;
    double best_w = 0.0;
    for (int i = -20000; i <= 20000; ++i) {
        const double w = cav.omega_c + i * 1e-3;
        const double v = std::norm(response_T(w, cav));
        if (v > best) {
            best = v;
            best_w = w;
        }
    }
    EXPECT_LT(std::abs(best_w - cav.omega_c), cav.Gamma_c / 10.0);
}

TEST(ResponseT, ResonantValueMatchesLorentzianHeight)
{
    const auto cav = fig3a();
    const auto mode = lorentzian_mode(cav, cav.m);
    const double expected = kSpeedOfLight / (2.0 * cav.effective_length()) * 4.0 / mode.Gamma_m;
    EXPECT_NEAR(std::norm(response_T(mode.omega_m, cav)) / expected, 1.0, 1e-3);
}

TEST(ResponseT, PerfectMirrorSuppressesOffResonance)
{
    auto cav = CavitySpec::resonant(1, 2416.0, 2.0, 1e6);
    const double off = cav.omega_c + 0.5 * cav.free_spectral_range();
    EXPECT_LT(std::abs(response_T(off, cav)), 1e-3);
}

TEST(LorentzianModes, FundamentalDecayRate)
{
    const auto mode = lorentzian_mode(fig3a(), 1);
    EXPECT_NEAR(mode.Gamma_m, 2.00, 0.05);
    // Root of the implicit resonance condition from an independent solver.
    EXPECT_NEAR(mode.Gamma_m, 1.98163569301213649836890866282, 1e-9);
    EXPECT_NEAR(mode.omega_m, 2416.0, 1e-9);
}

TEST(LorentzianModes, LowFinesseModesMatchIndependentRoots)
{
    const auto cav = fig3b();
    const auto m165 = lorentzian_mode(cav, 165);
    EXPECT_NEAR(m165.omega_m, 2416.0, 1e-9);
    EXPECT_NEAR(m165.Gamma_m, 1.99812601409849214193988225719, 1e-9);
    EXPECT_NEAR(lorentzian_mode(cav, 164).omega_m, 2401.37439416057332048235361609, 1e-8);
}

TEST(LorentzianModes, HighIndexPhaseNearPi)
{
    const auto cav = fig3a();
    const auto r = layer_coefficients(cav.omega_c, cav.mirror).r;
    EXPECT_NEAR(std::abs(std::remainder(std::arg(r) - kPi, 2.0 * kPi)), 0.0, 0.1);
}

TEST(LorentzianModes, BandSelection)
{
    const auto cav = fig3b();
    const auto modes = lorentzian_modes(cav, 2380.0, 2450.0);
    ASSERT_FALSE(modes.empty());
    for (std::size_t i = 0; i < modes.size(); ++i) {
        EXPECT_GE(modes[i].omega_m, 2380.0);
        EXPECT_LE(modes[i].omega_m, 2450.0);
        EXPECT_GT(modes[i].Gamma_m, 0.0);
        if (i > 0) EXPECT_GT(modes[i].omega_m, modes[i - 1].omega_m);
    }
    EXPECT_EQ(modes.size(), 5u);
    EXPECT_THROW(lorentzian_modes(cav, -1.0, 10.0), std::domain_error);
}

TEST(LorentzianModes, NonConvergenceReportsModeIndex)
{
    // The quarter-wave seed is already the fixed point, so detune the layer.
    auto cav = fig3b();
    cav.mirror.delta *= 1.7;
    EXPECT_NO_THROW(lorentzian_mode(cav, 165));
    try {
        lorentzian_mode(cav, 165, 0.5, 1);
        FAIL() << "expected a convergence failure";
    } catch (const std::runtime_error& e) {
        EXPECT_NE(std::string(e.what()).find("165"), std::string::npos);
    }
}

TEST(LorentzianModes, SingleModeAccuracyDistinguishesFinesse)
{
    auto max_error = [](const CavitySpec& cav) {
        const auto mode = lorentzian_mode(cav, cav.m);
        double worst = 0.0;
        for (int i = -2000; i <= 2000; ++i) {
            const double w = cav.omega_c + 5.0 * cav.Gamma_c * i / 2000.0;
            const double exact = std::norm(response_T(w, cav));
            worst = std::max(worst, std::abs(lorentzian_profile(w, mode, cav.effective_length()) - exact) / exact);
        }
        return worst;
    };
    EXPECT_LT(max_error(fig3a()), 0.05);
    EXPECT_GT(max_error(fig3b()), 0.05);
}

TEST(LorentzianModes, NeighbourSumImprovesLowFinesseFit)
{
    const auto cav = fig3b();
    const double w = cav.omega_c + 3.0;
    const double exact = std::norm(response_T(w, cav));
    const double one = lorentzian_T2(w, cav, 0);
    const double many = lorentzian_T2(w, cav, 5);
    EXPECT_LT(std::abs(many - exact), std::abs(one - exact));
}

TEST(FinesseQ, ReferenceCavities)
{
    const auto a = finesse_and_Q(fig3a());
    EXPECT_NEAR(a.finesse, 1208.0, 0.01 * 1208.0);
    EXPECT_NEAR(a.Q, 1208.0, 0.01 * 1208.0);
    const auto b = finesse_and_Q(fig3b());
    EXPECT_NEAR(b.finesse, 7.3, 0.05 * 7.3);
    EXPECT_NEAR(b.Q, 1208.0, 0.01 * 1208.0);
}

TEST(FinesseQ, DoublingLengthHalvesFinesse)
{
    auto cav = fig3a();
    const double f1 = finesse_and_Q(cav).finesse;
    cav.L *= 2.0;
    EXPECT_NEAR(finesse_and_Q(cav).finesse, 0.5 * f1, 1e-9);
}

TEST(Reflectivity, DecayRateIdentities)
{
    EXPECT_NEAR(reflectivity_from_decay(fig3a()).R, 0.995, 1e-3);
    const auto b = reflectivity_from_decay(fig3b());
    EXPECT_NEAR(b.R, 0.42, 0.01);
    EXPECT_NEAR(b.t2, 0.58, 0.01);
}

TEST(IndexForDecayRate, ReproducesReflectionAmplitude)
{
    const double L = kPi / 2416.0;
    for (double G : {2.0, 10.0, 60.0, 90.0}) {
        const double n = index_for_decay_rate(L, G);
        const auto lc = layer_coefficients(2416.0, MirrorSpec::quarter_wave(n, 2416.0));
        EXPECT_NEAR(std::abs(lc.r), std::exp(-G * L), 1e-12);
    }
}

TEST(CavitySpec, WarningsForLowQ)
{
    auto cav = fig3a();
    EXPECT_TRUE(cav.warnings().empty());
    cav.Gamma_c = 100.0;
    EXPECT_FALSE(cav.warnings().empty());
}
