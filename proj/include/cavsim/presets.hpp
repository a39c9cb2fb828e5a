// presets.hpp - Parameter sets of the reference scenarios

#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "cavsim/drive.hpp"
#include "cavsim/errors.hpp"
#include "cavsim/mirror.hpp"
#include "cavsim/pulse_shaping.hpp"
#include "cavsim/scenario.hpp"

namespace cavsim {

inline constexpr double kPresetOmegaC = 2416.0;

inline const std::vector<std::string>& preset_names()
{
    static const std::vector<std::string> names{"fig3a", "fig3b", "fig4_G60", "fig4_G10", "fig6a", "fig6b"};
    return names;
}

namespace detail {

// Representation comparison: atom starts excited, no drive, |g|T = 0.6,
// Γ_c T = 2, quarter-wave single-layer mirror.
inline ScenarioConfig emission_preset(const std::string& name, int m, double n, double tf)
{
    ScenarioConfig cfg;
    cfg.name = name;
    cfg.cavity = CavitySpec::resonant(m, kPresetOmegaC, 2.0, n);
    cfg.atom.g = -0.6;
    cfg.initial_state = InitialState::excited;
    cfg.t0 = 0.0;
    cfg.tf = tf;
    return cfg;
}

// Raman scenarios only involve Γ_c, so the cavity is the m = 1 resonator with
// the layer index that reproduces Γ_c. Δ_c = Δ puts the Raman transition on
// two-photon resonance.
inline ScenarioConfig raman_preset(const std::string& name, double Gamma_c, double g, double Delta)
{
    ScenarioConfig cfg;
    cfg.name = name;
    const double L = kPi * kSpeedOfLight / kPresetOmegaC;
    cfg.cavity = CavitySpec::resonant(1, kPresetOmegaC, Gamma_c, index_for_decay_rate(L, Gamma_c));
    cfg.atom.g = g;
    cfg.atom.Delta = Delta;
    cfg.atom.Delta_c = Delta;
    cfg.grid.half_width = std::max(40.0, 10.0 * Gamma_c);
    cfg.initial_state = InitialState::ground;
    return cfg;
}

inline ScenarioConfig shaping_preset(const std::string& name, double Gamma_c)
{
    ScenarioConfig cfg = raman_preset(name, Gamma_c, -60.0, 300.0);
    cfg.t0 = -2.0;
    cfg.tf = 3.0;
    cfg.target = TargetSpec{"gaussian", 0.99, 1.0};
    return cfg;
}

} // namespace detail

inline ScenarioConfig preset(const std::string& name)
{
    if (name == "fig3a") return detail::emission_preset(name, 1, 27.735, 10.0);
    if (name == "fig3b") return detail::emission_preset(name, 165, 2.1756, 20.0);
    if (name == "fig4_G60" || name == "fig4_G10") {
        auto cfg = detail::raman_preset(name, name == "fig4_G60" ? 60.0 : 10.0, -60.0, 150.0);
        cfg.atom.drive = DriveEnvelope::sin2(60.0, 1.0);
        cfg.t0 = 0.0;
        cfg.tf = 2.0;
        return cfg;
    }
    if (name == "fig6a") {
        auto cfg = detail::shaping_preset(name, 90.0);
        const auto target = gaussian_target(cfg.target->duration, cfg.target->eta);
        const RamanParams raman{cfg.atom.g, cfg.atom.Delta, cfg.cavity.Gamma_c};
        cfg.atom.drive = design_rabi(ShapingParams::make(raman, cfg.target->eta, target));
        return cfg;
    }
    if (name == "fig6b") {
        auto cfg = detail::shaping_preset(name, 10.0);
        cfg.atom.drive = DriveEnvelope::gaussian(60.0, 1.0);
        return cfg;
    }
    std::string valid;
    for (const auto& n : preset_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw ConfigError("preset: unknown name '" + name + "' (valid: " + valid + ")");
}

} // namespace cavsim
