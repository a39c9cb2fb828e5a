// scenario.hpp - Scenario parameter records and their JSON representation

#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cavsim/drive.hpp"
#include "cavsim/errors.hpp"
#include "cavsim/grid.hpp"
#include "cavsim/mirror.hpp"
#include "cavsim/units.hpp"

namespace cavsim {

enum class InitialState { ground, excited, cavity_photon };

inline std::string to_string(InitialState s)
{
    switch (s) {
        case InitialState::ground: return "ground";
        case InitialState::excited: return "excited";
        case InitialState::cavity_photon: return "cavity_photon";
    }
    return "ground";
}

inline InitialState parse_initial_state(const std::string& name)
{
    if (name == "ground") return InitialState::ground;
    if (name == "excited") return InitialState::excited;
    if (name == "cavity_photon") return InitialState::cavity_photon;
    throw ConfigError("initial_state: unknown value '" + name + "' (expected ground, excited, cavity_photon)");
}

struct AtomDriveSpec {
    double g{0.0};
    double Delta{0.0};
    double Delta_c{0.0};
    DriveEnvelope drive;
    std::optional<double> x_A; // defaults to -L/2

    double atom_position(const CavitySpec& cav) const { return x_A.value_or(-0.5 * cav.L); }
};

// Grid request; the centre defaults to ω_c.
struct GridParams {
    std::optional<double> center;
    double half_width{40.0};
    std::size_t count{4001};
};

struct IntegratorSpec {
    std::string method{"rk4"};
    double dt{0.0};               // 0 selects the stability guard value
    std::size_t record_every{0};  // 0 selects about 2000 records
};

// Gaussian photon target used by the shaping pipeline.
struct TargetSpec {
    std::string kind{"gaussian"};
    double eta{0.99};
    double duration{1.0};
};

struct ScenarioConfig {
    std::string name{"custom"};
    CavitySpec cavity;
    AtomDriveSpec atom;
    GridParams grid;
    IntegratorSpec integrator;
    InitialState initial_state{InitialState::ground};
    double t0{0.0};
    double tf{1.0};
    std::optional<TargetSpec> target;

    FrequencyGrid make_grid() const
    {
        return build_grid(grid.center.value_or(cavity.omega_c), grid.half_width, grid.count);
    }

    // Fatal checks. tf == t0 is allowed and produces an empty trajectory.
    void validate() const
    {
        cavity.validate();
        if (!std::isfinite(atom.g)) throw ConfigError("atom.g: must be finite");
        if (!std::isfinite(atom.Delta)) throw ConfigError("atom.Delta: must be finite");
        if (!std::isfinite(atom.Delta_c)) throw ConfigError("atom.Delta_c: must be finite");
        if (integrator.method != "rk4")
            throw ConfigError("integrator.method: only 'rk4' is supported");
        if (!(integrator.dt >= 0.0)) throw ConfigError("integrator.dt: must be non-negative");
        if (!(tf >= t0)) throw ConfigError("tf: must not precede t0");
        const double c = grid.center.value_or(cavity.omega_c);
        if (std::abs(c - cavity.omega_c) > grid.half_width)
            throw ConfigError("grid.center: grid does not cover omega_c");
        if (target && !(target->eta > 0.0 && target->eta < 1.0))
            throw ConfigError("target.eta: efficiency must lie strictly between 0 and 1");
        if (target && !(target->duration > 0.0)) throw ConfigError("target.duration: must be positive");
        (void)make_grid();
    }
};

namespace detail {

inline const nlohmann::json* child(const nlohmann::json& j, const char* key)
{
    const auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

template <class T>
T field(const nlohmann::json& j, const char* key, const std::string& path, T fallback)
{
    const auto* v = child(j, key);
    if (!v) return fallback;
    try {
        return v->get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(path + key + ": wrong type");
    }
}

template <class T>
T required(const nlohmann::json& j, const char* key, const std::string& path)
{
    const auto* v = child(j, key);
    if (!v) throw ConfigError(path + key + ": missing");
    try {
        return v->get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(path + key + ": wrong type");
    }
}

inline const nlohmann::json& object(const nlohmann::json& j, const char* key, const std::string& path)
{
    const auto* v = child(j, key);
    if (!v || !v->is_object()) throw ConfigError(path + key + ": missing or not an object");
    return *v;
}

} // namespace detail

inline nlohmann::json to_json(const DriveEnvelope& d)
{
    nlohmann::json j{{"kind", to_string(d.kind())}};
    if (d.kind() == DriveKind::sin2 || d.kind() == DriveKind::gaussian) {
        j["amplitude"] = d.amplitude();
        j["duration"] = d.duration();
    } else if (d.kind() == DriveKind::tabulated) {
        j["samples"] = {{"t", d.sample_times()}, {"omega", d.sample_values()}};
    }
    return j;
}

inline nlohmann::json to_json(const ScenarioConfig& cfg)
{
    nlohmann::json atom{{"g", cfg.atom.g},
                        {"Delta", cfg.atom.Delta},
                        {"Delta_c", cfg.atom.Delta_c},
                        {"drive", to_json(cfg.atom.drive)}};
    if (cfg.atom.x_A) atom["x_A"] = *cfg.atom.x_A;
    nlohmann::json grid{{"half_width", cfg.grid.half_width}, {"count", cfg.grid.count}};
    if (cfg.grid.center) grid["center"] = *cfg.grid.center;
    nlohmann::json j{
        {"name", cfg.name},
        {"cavity",
         {{"L", cfg.cavity.L},
          {"m", cfg.cavity.m},
          {"omega_c", cfg.cavity.omega_c},
          {"Gamma_c", cfg.cavity.Gamma_c},
          {"mirror", {{"n", cfg.cavity.mirror.n}, {"delta", cfg.cavity.mirror.delta}}}}},
        {"atom", atom},
        {"grid", grid},
        {"integrator",
         {{"method", cfg.integrator.method},
          {"dt", cfg.integrator.dt},
          {"record_every", cfg.integrator.record_every}}},
        {"initial_state", to_string(cfg.initial_state)},
        {"t0", cfg.t0},
        {"tf", cfg.tf}};
    if (cfg.target)
        j["target"] = {{"kind", cfg.target->kind}, {"eta", cfg.target->eta}, {"duration", cfg.target->duration}};
    return j;
}

inline DriveEnvelope drive_from_json(const nlohmann::json& j)
{
    using detail::field;
    using detail::required;
    const std::string path = "atom.drive.";
    const auto kind = parse_drive_kind(field<std::string>(j, "kind", path, "zero"));
    switch (kind) {
        case DriveKind::zero: return DriveEnvelope::zero();
        case DriveKind::sin2:
            return DriveEnvelope::sin2(required<double>(j, "amplitude", path), required<double>(j, "duration", path));
        case DriveKind::gaussian:
            return DriveEnvelope::gaussian(required<double>(j, "amplitude", path),
                                           required<double>(j, "duration", path));
        case DriveKind::tabulated: {
            const auto& s = detail::object(j, "samples", path);
            return DriveEnvelope::tabulated(required<std::vector<double>>(s, "t", path + "samples."),
                                            required<std::vector<double>>(s, "omega", path + "samples."));
        }
    }
    return DriveEnvelope::zero();
}

// Missing optional fields take the defaults above; the mirror thickness
// defaults to a quarter wave at ω_c.
inline ScenarioConfig scenario_from_json(const nlohmann::json& j)
{
    using detail::field;
    using detail::object;
    using detail::required;
    if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
    ScenarioConfig cfg;
    cfg.name = field<std::string>(j, "name", "", "custom");

    const auto& cav = object(j, "cavity", "");
    cfg.cavity.L = required<double>(cav, "L", "cavity.");
    cfg.cavity.m = required<int>(cav, "m", "cavity.");
    cfg.cavity.omega_c = required<double>(cav, "omega_c", "cavity.");
    cfg.cavity.Gamma_c = required<double>(cav, "Gamma_c", "cavity.");
    const auto& mir = object(cav, "mirror", "cavity.");
    cfg.cavity.mirror.n = required<double>(mir, "n", "cavity.mirror.");
    if (!(cfg.cavity.mirror.n >= 1.0)) throw ConfigError("cavity.mirror.n: refractive index must be >= 1");
    if (!(cfg.cavity.omega_c > 0.0)) throw ConfigError("cavity.omega_c: must be positive");
    const double qw = MirrorSpec::quarter_wave(cfg.cavity.mirror.n, cfg.cavity.omega_c).delta;
    cfg.cavity.mirror.delta = field<double>(mir, "delta", "cavity.mirror.", qw);

    const auto& atom = object(j, "atom", "");
    cfg.atom.g = required<double>(atom, "g", "atom.");
    cfg.atom.Delta = field<double>(atom, "Delta", "atom.", 0.0);
    cfg.atom.Delta_c = field<double>(atom, "Delta_c", "atom.", 0.0);
    if (detail::child(atom, "x_A")) cfg.atom.x_A = required<double>(atom, "x_A", "atom.");
    if (const auto* d = detail::child(atom, "drive")) {
        if (!d->is_object()) throw ConfigError("atom.drive: must be an object");
        cfg.atom.drive = drive_from_json(*d);
    }

    if (const auto* g = detail::child(j, "grid")) {
        if (detail::child(*g, "center")) cfg.grid.center = required<double>(*g, "center", "grid.");
        cfg.grid.half_width = field<double>(*g, "half_width", "grid.", cfg.grid.half_width);
        const auto count = field<long long>(*g, "count", "grid.", static_cast<long long>(cfg.grid.count));
        if (count < 3) throw ConfigError("grid.count: at least 3 points are required");
        cfg.grid.count = static_cast<std::size_t>(count);
    }
    if (const auto* in = detail::child(j, "integrator")) {
        cfg.integrator.method = field<std::string>(*in, "method", "integrator.", "rk4");
        cfg.integrator.dt = field<double>(*in, "dt", "integrator.", 0.0);
        const auto rec = field<long long>(*in, "record_every", "integrator.", 0);
        if (rec < 0) throw ConfigError("integrator.record_every: must be non-negative");
        cfg.integrator.record_every = static_cast<std::size_t>(rec);
    }
    cfg.initial_state = parse_initial_state(field<std::string>(j, "initial_state", "", "ground"));
    cfg.t0 = field<double>(j, "t0", "", 0.0);
    cfg.tf = required<double>(j, "tf", "");
    if (const auto* t = detail::child(j, "target")) {
        TargetSpec ts;
        ts.kind = field<std::string>(*t, "kind", "target.", "gaussian");
        if (ts.kind != "gaussian") throw ConfigError("target.kind: only 'gaussian' is supported");
        ts.eta = field<double>(*t, "eta", "target.", ts.eta);
        ts.duration = field<double>(*t, "duration", "target.", ts.duration);
        cfg.target = ts;
    }
    cfg.validate();
    return cfg;
}

} // namespace cavsim
