// commands.hpp - Reproducible runs behind the command-line subcommands

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "cavsim/couplings.hpp"
#include "cavsim/dynamics.hpp"
#include "cavsim/io.hpp"
#include "cavsim/master_equation.hpp"
#include "cavsim/mirror.hpp"
#include "cavsim/observables.hpp"
#include "cavsim/presets.hpp"
#include "cavsim/pulse_shaping.hpp"
#include "cavsim/scenario.hpp"
#include "cavsim/verify.hpp"

namespace cavsim {

// Worker cap from CAVSIM_THREADS, defaulting to the hardware concurrency.
inline unsigned worker_count()
{
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("CAVSIM_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) n = static_cast<unsigned>(v);
        } catch (const std::exception&) {
            throw ConfigError("CAVSIM_THREADS: must be a positive integer");
        }
    }
    return n;
}

// Runs independent tasks on at most `workers` threads; rethrows the first error.
inline void run_parallel(const std::vector<std::function<void()>>& tasks, unsigned workers)
{
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            try {
                tasks[i]();
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    const unsigned n = std::min<unsigned>(workers, static_cast<unsigned>(tasks.size()));
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
}

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_{std::chrono::steady_clock::now()};
};

inline std::filesystem::path prepare_output_dir(const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    return dir;
}

inline void append(std::vector<std::string>& to, const std::vector<std::string>& from)
{
    for (const auto& w : from)
        if (std::find(to.begin(), to.end(), w) == to.end()) to.push_back(w);
}

// Trajectory CSV, spectrum CSV for continuum models, and manifest.
inline RunManifest cmd_simulate(Model model, const ScenarioConfig& cfg, const std::filesystem::path& out_dir)
{
    Stopwatch clock;
    prepare_output_dir(out_dir);
    RunManifest m;
    m.command = "simulate --model " + to_string(model);
    m.config_hash = config_hash(cfg);
    const Trajectory tr = integrate(model, cfg);
    append(m.warnings, tr.warnings);

    const auto traj_path = out_dir / (model == Model::master ? "master.csv" : "trajectory.csv");
    trajectory_table(tr).write(traj_path);
    m.outputs.push_back(traj_path.string());
    m.metrics["steps"] = tr.steps;
    m.metrics["dt"] = tr.dt;
    m.metrics["max_norm_drift"] = tr.max_norm_drift;
    if (!tr.P_photon.empty()) {
        m.metrics["max_P_photon"] = *std::max_element(tr.P_photon.begin(), tr.P_photon.end());
        m.metrics["final_n_leaked"] = tr.n_leaked.back();
    }
    if (model == Model::master) {
        m.metrics["min_eigenvalue"] = tr.min_eigenvalue;
        m.metrics["max_hermiticity_error"] = tr.max_hermiticity_error;
    }
    if (has_continuum(model)) {
        const Spectrum s = outgoing_spectrum(tr);
        append(m.warnings, s.warnings);
        const auto spec_path = out_dir / "spectrum.csv";
        spectrum_table(s).write(spec_path);
        m.outputs.push_back(spec_path.string());
        if (!s.empty()) m.metrics["peak_shift"] = peak_position(s) - cfg.cavity.omega_c;
    }
    m.wall_time = clock.seconds();
    const auto manifest_path = out_dir / "manifest.json";
    m.outputs.push_back(manifest_path.string());
    m.write(manifest_path);
    return m;
}

struct CompareResult {
    Trajectory exact, lorentzian, inout, pseudo;
    Spectrum s_exact, s_lorentzian, s_inout;
    nlohmann::json metrics = nlohmann::json::object();
    std::vector<std::string> warnings;
};

// Runs the three representations on one grid, plus the pseudo-mode model on
// the inside-outside time grid for the cavity-population profiles.
inline CompareResult run_compare(const ScenarioConfig& cfg, unsigned workers)
{
    cfg.validate();
    CompareResult r;
    const FrequencyGrid grid = cfg.make_grid();
    ScenarioConfig pseudo_cfg = cfg;
    std::vector<std::string> dt_warnings;
    pseudo_cfg.integrator.dt = resolve_dt(cfg, &grid, dt_warnings);
    run_parallel({[&] { r.exact = integrate(Model::true_mode, cfg); },
                  [&] { r.lorentzian = integrate(Model::true_mode_lorentzian, cfg); },
                  [&] { r.inout = integrate(Model::inside_outside, cfg); },
                  [&] { r.pseudo = integrate(Model::pseudo_mode, pseudo_cfg); }},
                 workers);
    r.s_exact = outgoing_spectrum(r.exact);
    r.s_lorentzian = pseudo_mode_spectrum(r.lorentzian);
    r.s_inout = outgoing_spectrum(r.inout);
    for (const auto* tr : {&r.exact, &r.lorentzian, &r.inout}) append(r.warnings, tr->warnings);
    for (const auto* s : {&r.s_exact, &r.s_lorentzian, &r.s_inout}) append(r.warnings, s->warnings);
    if (r.s_exact.empty()) return r;

    auto& m = r.metrics;
    for (auto how : {Normalization::area, Normalization::peak}) {
        const std::string key = how == Normalization::area ? "relative_l2_area" : "relative_l2_peak";
        m[key] = {{"true_vs_lorentzian", relative_l2(r.s_exact, r.s_lorentzian, how)},
                  {"true_vs_inout", relative_l2(r.s_exact, r.s_inout, how)},
                  {"lorentzian_vs_inout", relative_l2(r.s_lorentzian, r.s_inout, how)}};
    }
    const double wc = cfg.cavity.omega_c;
    m["peak_shift"] = {{"true", peak_position(r.s_exact) - wc},
                       {"lorentzian", peak_position(r.s_lorentzian) - wc},
                       {"inout", peak_position(r.s_inout) - wc}};
    m["time_profile_relative_l2"] = relative_l2(r.pseudo.P_photon, r.inout.P_photon);
    m["steady_state"] = steady_state_reached(r.inout);
    m["retardation_parameter"] = retardation_parameter(coupling_set(cfg, CouplingMode::exact));
    return r;
}

inline RunManifest cmd_compare(const ScenarioConfig& cfg, const std::filesystem::path& out_dir)
{
    Stopwatch clock;
    prepare_output_dir(out_dir);
    RunManifest m;
    m.command = "compare --scenario " + cfg.name;
    m.config_hash = config_hash(cfg);
    const CompareResult r = run_compare(cfg, worker_count());
    m.warnings = r.warnings;
    m.metrics = r.metrics;

    CsvTable spectra({"omega", "density_true", "density_lorentzian", "density_inout", "grid_native_true",
                      "grid_native_lorentzian", "grid_native_inout"});
    spectra.set_columns({r.s_exact.omega, r.s_exact.density, r.s_lorentzian.density, r.s_inout.density,
                         r.s_exact.grid_native, r.s_lorentzian.grid_native, r.s_inout.grid_native});
    const auto spectra_path = out_dir / "spectra.csv";
    spectra.write(spectra_path);

    CsvTable profiles({"t", "P_photon_pseudo", "P_photon_inout", "P_e_true", "P_e_inout"});
    profiles.set_columns({r.inout.t, r.pseudo.P_photon, r.inout.P_photon, r.exact.P_e, r.inout.P_e});
    const auto profiles_path = out_dir / "time_profiles.csv";
    profiles.write(profiles_path);

    const auto metrics_path = out_dir / "metrics.json";
    {
        std::ofstream out(metrics_path);
        out << r.metrics.dump(2) << '\n';
    }
    m.outputs = {spectra_path.string(), profiles_path.string(), metrics_path.string()};
    m.wall_time = clock.seconds();
    const auto manifest_path = out_dir / "manifest.json";
    m.outputs.push_back(manifest_path.string());
    m.write(manifest_path);
    return m;
}

struct ShapeOutcome {
    DriveEnvelope drive;
    TabulatedFlux target;
    TabulatedFlux predicted;
    ThetaZeta theta;
    RegimeReport regime;
    bool designed{false};
    std::optional<ShapeValidation> vs_target;
    std::optional<ShapeValidation> vs_prediction;
};

// Designs Ω(t) from the configured target when the config carries no drive;
// otherwise evaluates the adiabatic prediction of the given drive.
inline ShapeOutcome run_shape(ScenarioConfig cfg, bool validate)
{
    if (!cfg.target) throw ConfigError("target: the shape command needs a target section");
    cfg.validate();
    ShapeOutcome o;
    const RamanParams raman{cfg.atom.g, cfg.atom.Delta, cfg.cavity.Gamma_c};
    o.target = gaussian_target(cfg.target->duration, cfg.target->eta);
    if (cfg.atom.drive.kind() == DriveKind::zero) {
        cfg.atom.drive = design_rabi(ShapingParams::make(raman, cfg.target->eta, o.target));
        o.designed = true;
    }
    o.drive = cfg.atom.drive;
    o.theta = theta_zeta(o.target.t, raman, o.drive);
    o.predicted = flux_forward(o.target.t, raman, o.drive);
    o.regime = regime_report(raman, o.drive, o.target.t);
    if (validate) {
        o.vs_target = validate_shape(cfg, o.target);
        o.vs_prediction = validate_shape(cfg, o.predicted);
    }
    return o;
}

// `out` is a directory, or a .csv path whose manifest goes alongside it.
inline RunManifest cmd_shape(const ScenarioConfig& cfg, bool validate, const std::filesystem::path& out)
{
    Stopwatch clock;
    const bool file_target = out.extension() == ".csv";
    const auto dir = file_target ? (out.has_parent_path() ? out.parent_path() : std::filesystem::path(".")) : out;
    prepare_output_dir(dir);
    const auto csv_path = file_target ? out : dir / "drive.csv";
    const auto manifest_path = file_target ? dir / (out.stem().string() + ".manifest.json") : dir / "manifest.json";

    RunManifest m;
    m.command = std::string("shape") + (validate ? " --validate" : "");
    m.config_hash = config_hash(cfg);
    const ShapeOutcome o = run_shape(cfg, validate);
    for (const auto& f : o.regime.flags) m.warnings.push_back("regime: " + f);

    std::vector<double> omega(o.target.t.size());
    for (std::size_t i = 0; i < omega.size(); ++i) omega[i] = o.drive(o.target.t[i]);
    CsvTable table({"t", "omega_drive", "theta", "flux_predicted", "flux_target"});
    table.set_columns({o.target.t, omega, o.theta.theta, o.predicted.flux, o.target.flux});
    if (o.vs_target) {
        std::vector<double> realized(o.target.t.size());
        for (std::size_t i = 0; i < realized.size(); ++i)
            realized[i] = interpolate_linear(o.vs_target->realized.t, o.vs_target->realized.flux, o.target.t[i]);
        table.add_column("flux_realized", std::move(realized));
    }
    table.write(csv_path);

    m.metrics["designed"] = o.designed;
    m.metrics["max_G"] = o.regime.max_G;
    m.metrics["max_omega"] = o.regime.max_omega;
    m.metrics["theta_final"] = o.theta.theta.back();
    m.metrics["regime"] = {{"Delta_over_max_Omega", o.regime.delta_over_max_omega},
                           {"Delta_over_g", o.regime.delta_over_g},
                           {"Gamma_over_max_G", o.regime.gamma_over_max_G},
                           {"Gamma_Delta_over_g2", o.regime.gamma_delta_over_g2}};
    if (o.vs_target) {
        m.metrics["l1_vs_target"] = o.vs_target->l1;
        m.metrics["tail_l1_vs_target"] = o.vs_target->tail_l1;
        m.metrics["l1_vs_prediction"] = o.vs_prediction->l1;
        m.metrics["tail_l1_vs_prediction"] = o.vs_prediction->tail_l1;
        m.metrics["n_final"] = o.vs_target->n_final;
        append(m.warnings, o.vs_target->trajectory.warnings);
    }
    m.outputs = {csv_path.string(), manifest_path.string()};
    m.wall_time = clock.seconds();
    m.write(manifest_path);
    return m;
}

inline std::vector<double> linspace(double lo, double hi, std::size_t count)
{
    if (count < 2 || !(hi > lo)) throw ConfigError("scan: band must satisfy lo < hi with at least 2 points");
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
    return out;
}

inline RunManifest cmd_mirror_scan(const ScenarioConfig& cfg, double lo, double hi, std::size_t count,
                                   int neighbors, const std::filesystem::path& out_dir)
{
    Stopwatch clock;
    prepare_output_dir(out_dir);
    if (!(lo > 0.0)) throw ConfigError("scan: frequencies must be positive");
    RunManifest m;
    m.command = "mirror --scan";
    m.config_hash = config_hash(cfg);
    const auto w = linspace(lo, hi, count);
    std::vector<double> re(count), im(count), a2(count), lor(count);
    for (std::size_t i = 0; i < count; ++i) {
        const cplx T = response_T(w[i], cfg.cavity);
        re[i] = T.real();
        im[i] = T.imag();
        a2[i] = std::norm(T);
        lor[i] = lorentzian_T2(w[i], cfg.cavity, neighbors);
    }
    CsvTable t({"omega", "re_T", "im_T", "abs_T2", "lorentzian_T2"});
    t.set_columns({w, re, im, a2, lor});
    const auto path = out_dir / "mirror_scan.csv";
    t.write(path);
    const auto mode = lorentzian_mode(cfg.cavity, cfg.cavity.m);
    const auto fq = finesse_and_Q(cfg.cavity);
    m.metrics = {{"r0", cfg.cavity.mirror.r0()},
                 {"abs_r_at_omega_c", std::abs(layer_coefficients(cfg.cavity.omega_c, cfg.cavity.mirror).r)},
                 {"omega_m", mode.omega_m},
                 {"Gamma_m", mode.Gamma_m},
                 {"finesse", fq.finesse},
                 {"Q", fq.Q},
                 {"R", reflectivity_from_decay(cfg.cavity).R}};
    append(m.warnings, cfg.cavity.warnings());
    m.wall_time = clock.seconds();
    const auto manifest_path = out_dir / "manifest.json";
    m.outputs = {path.string(), manifest_path.string()};
    m.write(manifest_path);
    return m;
}

inline RunManifest cmd_couplings_scan(const ScenarioConfig& cfg, double lo, double hi, std::size_t count,
                                      const std::filesystem::path& out_dir)
{
    Stopwatch clock;
    prepare_output_dir(out_dir);
    if (!(lo > 0.0)) throw ConfigError("scan: frequencies must be positive");
    RunManifest m;
    m.command = "couplings --scan";
    m.config_hash = config_hash(cfg);
    const auto set = coupling_set(cfg, CouplingMode::exact);
    const auto w = linspace(lo, hi, count);
    std::vector<double> ex(count), lz(count), ka(count);
    for (std::size_t i = 0; i < count; ++i) {
        ex[i] = std::abs(eta_exact(w[i], set));
        lz[i] = std::abs(eta_lorentzian(w[i], set));
        ka[i] = std::abs(kappa_c(w[i], cfg.cavity));
    }
    CsvTable t({"omega", "abs_eta_exact", "abs_eta_lorentzian", "abs_kappa"});
    t.set_columns({w, ex, lz, ka});
    const auto path = out_dir / "couplings_scan.csv";
    t.write(path);
    m.metrics["retardation_parameter"] = retardation_parameter(set);
    m.wall_time = clock.seconds();
    const auto manifest_path = out_dir / "manifest.json";
    m.outputs = {path.string(), manifest_path.string()};
    m.write(manifest_path);
    return m;
}

struct OracleCheck {
    std::string name;
    double measured{0.0};
    double tolerance{0.0};
    bool passed{false};
};

// Numerical oracles: kernel quadrature against the closed
// form, the kernel weight identity and the delta-model limits.
inline std::vector<OracleCheck> run_oracle_suite()
{
    std::vector<OracleCheck> out;
    const CavitySpec cav = preset("fig3a").cavity;
    const double width = 2.0 * cav.L / kSpeedOfLight;
    double worst = 0.0;
    for (int i = 0; i < 25; ++i) {
        const double x = 0.5 * cav.L * (i % 5) / 4.0;
        const double s = -width + 2.0 * width * (i + 0.5) / 25.0;
        const auto q = kernel_quadrature(s + x, x, cav);
        const auto c = kernel_closed_form(s + x, x, cav);
        worst = std::max(worst, std::abs(q - c.value) / std::abs(c.value));
    }
    out.push_back({"kernel quadrature vs closed form (max rel. error)", worst, 1e-3, worst < 1e-3});
    const double outside = std::abs(kernel_quadrature(1.5 * width, 0.0, cav)) / kernel_peak(cav);
    out.push_back({"kernel outside support (|K|/peak)", outside, 1e-3, outside < 1e-3});
    const double weight = std::abs(kernel_weight_integral(cav) / cav.Gamma_c - 1.0);
    out.push_back({"kernel weight integral / Gamma_c - 1", weight, 1e-3, weight < 1e-3});
    const auto d = delta_model_limit(0.25, default_eps_sequence(), [](double t) { return std::exp(t); });
    out.push_back({"delta model a=0.25 limit - 0.75", std::abs(d.extrapolated - 0.75), 1e-6,
                   std::abs(d.extrapolated - 0.75) < 1e-6});
    out.push_back({"delta model convergence slope - 1", std::abs(d.slope - 1.0), 0.1, std::abs(d.slope - 1.0) < 0.1});
    const auto h = delta_model_limit(0.5, default_eps_sequence(), [](double t) { return std::cos(t); });
    out.push_back({"delta model a=0.5 limit - 0.5", std::abs(h.extrapolated - 0.5), 1e-6,
                   std::abs(h.extrapolated - 0.5) < 1e-6});
    return out;
}

} // namespace cavsim
