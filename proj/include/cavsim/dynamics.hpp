// dynamics.hpp - Single-excitation Schrödinger dynamics in the true-mode,
// inside-outside and pseudo-mode representations

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cavsim/couplings.hpp"
#include "cavsim/drive.hpp"
#include "cavsim/errors.hpp"
#include "cavsim/grid.hpp"
#include "cavsim/rk4.hpp"
#include "cavsim/scenario.hpp"
#include "cavsim/units.hpp"

namespace cavsim {

enum class Model { true_mode, true_mode_lorentzian, inside_outside, pseudo_mode, master };

inline std::string to_string(Model m)
{
    switch (m) {
        case Model::true_mode: return "true";
        case Model::true_mode_lorentzian: return "true_lorentzian";
        case Model::inside_outside: return "inout";
        case Model::pseudo_mode: return "pseudo";
        case Model::master: return "master";
    }
    return "true";
}

inline Model parse_model(const std::string& name)
{
    if (name == "true") return Model::true_mode;
    if (name == "true_lorentzian") return Model::true_mode_lorentzian;
    if (name == "inout") return Model::inside_outside;
    if (name == "pseudo") return Model::pseudo_mode;
    if (name == "master") return Model::master;
    throw ConfigError("model: unknown model '" + name + "' (expected true, true_lorentzian, inout, pseudo, master)");
}

inline bool has_continuum(Model m)
{
    return m == Model::true_mode || m == Model::true_mode_lorentzian || m == Model::inside_outside;
}

// Recorded populations. Column meaning per model:
//   true-mode:     P_photon and n_leaked both hold the continuum population Σ|𝐜_i|²
//   inside-outside: P_photon = |c_f10|², n_leaked = Σ|𝐜_i|²
//   pseudo-mode:   P_photon = |c_f1|²,  n_leaked = Γ_c∫|c_f1|²
//   master:        ρ11, ρ22, ρ33, ρ44 in the four columns
struct Trajectory {
    Model model{Model::pseudo_mode};
    std::vector<double> t, P_g, P_e, P_photon, n_leaked, purity;
    Eigen::VectorXcd final_state;
    Eigen::Matrix4cd final_rho{Eigen::Matrix4cd::Zero()};
    std::vector<Eigen::VectorXcd> states;     // wavefunction snapshots, when requested
    std::vector<Eigen::Matrix4cd> rho_states; // density-matrix snapshots, when requested
    std::optional<FrequencyGrid> grid;
    CavitySpec cavity;
    double dt{0.0};
    std::size_t steps{0};
    double max_norm_drift{0.0};
    double max_hermiticity_error{0.0};
    double min_eigenvalue{0.0};
    std::vector<std::string> warnings;

    bool empty() const noexcept { return steps == 0; }
    std::size_t records() const noexcept { return t.size(); }
};

struct IntegrateOptions {
    std::size_t max_records{2000};
    bool keep_states{false};
    std::function<void(double, const Eigen::VectorXcd&)> observer;
};

// Largest rate the integrator must resolve; the guard step is 0.1 over it.
inline double fastest_rate(const ScenarioConfig& cfg, const FrequencyGrid* grid)
{
    double rate = std::max({std::abs(cfg.atom.Delta), std::abs(cfg.atom.Delta - cfg.atom.Delta_c),
                            cfg.atom.drive.peak(), std::abs(cfg.atom.g), cfg.cavity.Gamma_c});
    if (grid) {
        const double shift = cfg.atom.Delta - cfg.atom.Delta_c - cfg.cavity.omega_c;
        rate = std::max({rate, std::abs(shift + grid->points.front()), std::abs(shift + grid->points.back())});
    }
    return rate;
}

inline double guard_dt(const ScenarioConfig& cfg, const FrequencyGrid* grid)
{
    const double rate = fastest_rate(cfg, grid);
    return rate > 0.0 ? 0.1 / rate : 0.01;
}

// Chosen step plus a warning when a user step exceeds the guard.
inline double resolve_dt(const ScenarioConfig& cfg, const FrequencyGrid* grid, std::vector<std::string>& warnings)
{
    const double guard = guard_dt(cfg, grid);
    if (cfg.integrator.dt <= 0.0) return guard;
    if (cfg.integrator.dt > guard) {
        std::ostringstream s;
        s << "integrator: dt=" << cfg.integrator.dt << " exceeds the stability guard " << guard;
        warnings.push_back(s.str());
    }
    return cfg.integrator.dt;
}

inline std::size_t resolve_record_every(const ScenarioConfig& cfg, std::size_t steps, std::size_t max_records)
{
    if (cfg.integrator.record_every > 0) return cfg.integrator.record_every;
    if (steps == 0 || max_records == 0) return 1;
    return std::max<std::size_t>(1, (steps + max_records - 1) / max_records);
}

// Fixed-step driver: records the initial state, every `record_every` steps,
// and the final state; aborts on non-finite values.
template <class State, class Rhs, class Recorder>
void run_fixed_step(const Rhs& rhs, State& y, double t0, const StepPlan& plan, std::size_t record_every,
                    Recorder&& record)
{
    RungeKutta4<State> rk;
    record(t0, y);
    for (std::size_t k = 0; k < plan.steps; ++k) {
        const double t = t0 + static_cast<double>(k) * plan.dt;
        rk.step(rhs, t, plan.dt, y);
        const double t_next = t0 + static_cast<double>(k + 1) * plan.dt;
        if (!y.allFinite()) throw NumericalAbort("non-finite state", t_next);
        if ((k + 1) % record_every == 0 || k + 1 == plan.steps) record(t_next, y);
    }
}

// State layout [c_g0, c_e0, 𝐜_0 ... 𝐜_{N-1}].
struct TrueModeRhs {
    DriveEnvelope drive;
    double Delta{0.0};
    Eigen::ArrayXcd minus_i_detuning; // -i(Δ - Δ_c + ω_m - ω_c)
    Eigen::ArrayXcd coupling;         // η̃_m = √dω η(ω_m)

    void operator()(double t, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) const
    {
        const double omega = drive(t);
        const Eigen::Index n = coupling.size();
        const cplx ce = y[1];
        const auto c = y.tail(n).array();
        dy[0] = -kI * omega * ce;
        dy[1] = -kI * (Delta * ce + omega * y[0]) + (coupling * c).sum();
        dy.tail(n).array() = minus_i_detuning * c - coupling.conjugate() * ce;
    }
};

// State layout [c_g0, c_e0, c_f10, 𝐜_0 ... 𝐜_{N-1}].
struct InsideOutsideRhs {
    DriveEnvelope drive;
    double g{0.0};
    double Delta{0.0};
    double Delta_c{0.0};
    Eigen::ArrayXcd minus_i_detuning;
    Eigen::ArrayXcd coupling; // κ̃_m = √dω κ_c(ω_m)

    void operator()(double t, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) const
    {
        const double omega = drive(t);
        const Eigen::Index n = coupling.size();
        const cplx ce = y[1];
        const cplx cf = y[2];
        const auto c = y.tail(n).array();
        dy[0] = -kI * omega * ce;
        dy[1] = -kI * (Delta * ce + omega * y[0] + g * cf);
        dy[2] = -kI * ((Delta - Delta_c) * cf + g * ce) - (coupling.conjugate() * c).sum();
        dy.tail(n).array() = minus_i_detuning * c + coupling * cf;
    }
};

// State layout [c_g0, c_e0, c_f1, n_leaked].
struct PseudoModeRhs {
    DriveEnvelope drive;
    double g{0.0};
    double Delta{0.0};
    double Delta_c{0.0};
    double Gamma_c{0.0};

    void operator()(double t, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) const
    {
        const double omega = drive(t);
        dy[0] = -kI * omega * y[1];
        dy[1] = -kI * (Delta * y[1] + omega * y[0] + g * y[2]);
        dy[2] = -kI * (cplx(Delta - Delta_c, -0.5 * Gamma_c) * y[2] + g * y[1]);
        dy[3] = Gamma_c * std::norm(y[2]);
    }
};

inline Eigen::ArrayXcd continuum_detuning(const ScenarioConfig& cfg, const FrequencyGrid& grid)
{
    Eigen::ArrayXcd out(static_cast<Eigen::Index>(grid.count));
    const double shift = cfg.atom.Delta - cfg.atom.Delta_c;
    for (std::size_t i = 0; i < grid.count; ++i)
        out[static_cast<Eigen::Index>(i)] = -kI * (shift + grid.points[i] - cfg.cavity.omega_c);
    return out;
}

inline CouplingSet coupling_set(const ScenarioConfig& cfg, CouplingMode mode)
{
    return {cfg.atom.g, cfg.cavity, cfg.atom.atom_position(cfg.cavity), mode};
}

inline TrueModeRhs make_true_mode_rhs(const ScenarioConfig& cfg, const FrequencyGrid& grid, CouplingMode mode)
{
    TrueModeRhs rhs{cfg.atom.drive, cfg.atom.Delta, continuum_detuning(cfg, grid), {}};
    const auto set = coupling_set(cfg, mode);
    const double w = std::sqrt(grid.d_omega);
    rhs.coupling.resize(static_cast<Eigen::Index>(grid.count));
    for (std::size_t i = 0; i < grid.count; ++i)
        rhs.coupling[static_cast<Eigen::Index>(i)] = w * eta(grid.points[i], set);
    return rhs;
}

inline InsideOutsideRhs make_inside_outside_rhs(const ScenarioConfig& cfg, const FrequencyGrid& grid)
{
    InsideOutsideRhs rhs{cfg.atom.drive, cfg.atom.g, cfg.atom.Delta, cfg.atom.Delta_c,
                         continuum_detuning(cfg, grid), {}};
    const double w = std::sqrt(grid.d_omega);
    rhs.coupling.resize(static_cast<Eigen::Index>(grid.count));
    for (std::size_t i = 0; i < grid.count; ++i)
        rhs.coupling[static_cast<Eigen::Index>(i)] = w * kappa_c(grid.points[i], cfg.cavity);
    return rhs;
}

inline PseudoModeRhs make_pseudo_mode_rhs(const ScenarioConfig& cfg)
{
    return {cfg.atom.drive, cfg.atom.g, cfg.atom.Delta, cfg.atom.Delta_c, cfg.cavity.Gamma_c};
}

// Initial amplitudes for a state vector of `size` entries whose first three
// entries are [c_g0, c_e0, c_f1] (true-mode has no cavity amplitude).
inline Eigen::VectorXcd initial_vector(Model model, InitialState s, Eigen::Index size)
{
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(size);
    switch (s) {
        case InitialState::ground: y[0] = 1.0; break;
        case InitialState::excited: y[1] = 1.0; break;
        case InitialState::cavity_photon:
            if (model == Model::true_mode || model == Model::true_mode_lorentzian)
                throw ConfigError("initial_state: cavity_photon has no true-mode counterpart");
            y[2] = 1.0;
            break;
    }
    return y;
}

// Integrates one of the wavefunction models (everything except master).
inline Trajectory integrate_wavefunction(Model model, const ScenarioConfig& cfg, const IntegrateOptions& opt = {})
{
    if (model == Model::master) throw std::invalid_argument("integrate_wavefunction: master model has its own driver");
    cfg.validate();
    Trajectory tr;
    tr.model = model;
    tr.cavity = cfg.cavity;
    for (auto& w : cfg.cavity.warnings()) tr.warnings.push_back(std::move(w));

    std::optional<FrequencyGrid> grid;
    if (has_continuum(model)) {
        grid = cfg.make_grid();
        for (auto& w : grid_warnings(*grid, cfg.cavity.Gamma_c, cfg.tf - cfg.t0)) tr.warnings.push_back(std::move(w));
    }
    const double dt_max = resolve_dt(cfg, grid ? &*grid : nullptr, tr.warnings);
    const StepPlan plan = plan_steps(cfg.t0, cfg.tf, dt_max);
    tr.dt = plan.dt;
    tr.steps = plan.steps;
    tr.grid = grid;
    if (plan.steps == 0) tr.warnings.push_back("integrate: empty time window (tf == t0), no steps taken");
    const std::size_t every = resolve_record_every(cfg, plan.steps, opt.max_records);

    const auto n = grid ? static_cast<Eigen::Index>(grid->count) : Eigen::Index{0};
    const Eigen::Index head = model == Model::true_mode || model == Model::true_mode_lorentzian ? 2 : 3;
    const Eigen::Index size = model == Model::pseudo_mode ? 4 : head + n;
    Eigen::VectorXcd y = initial_vector(model, cfg.initial_state, size);

    auto record = [&](double t, const Eigen::VectorXcd& s) {
        const double pg = std::norm(s[0]);
        const double pe = std::norm(s[1]);
        double photon = 0.0;
        double leaked = 0.0;
        if (model == Model::pseudo_mode) {
            photon = std::norm(s[2]);
            leaked = s[3].real();
        } else {
            leaked = s.tail(n).squaredNorm();
            photon = head == 3 ? std::norm(s[2]) : leaked;
        }
        const double total = pg + pe + (head == 3 ? photon : 0.0) + leaked;
        tr.max_norm_drift = std::max(tr.max_norm_drift, std::abs(total - 1.0));
        tr.t.push_back(t);
        tr.P_g.push_back(pg);
        tr.P_e.push_back(pe);
        tr.P_photon.push_back(photon);
        tr.n_leaked.push_back(leaked);
        if (opt.keep_states) tr.states.push_back(s);
        if (opt.observer) opt.observer(t, s);
    };

    switch (model) {
        case Model::true_mode:
        case Model::true_mode_lorentzian: {
            const auto mode = model == Model::true_mode ? CouplingMode::exact : CouplingMode::lorentzian;
            run_fixed_step(make_true_mode_rhs(cfg, *grid, mode), y, cfg.t0, plan, every, record);
            break;
        }
        case Model::inside_outside:
            run_fixed_step(make_inside_outside_rhs(cfg, *grid), y, cfg.t0, plan, every, record);
            break;
        case Model::pseudo_mode:
            run_fixed_step(make_pseudo_mode_rhs(cfg), y, cfg.t0, plan, every, record);
            break;
        case Model::master: break;
    }
    tr.final_state = std::move(y);
    return tr;
}

// Reservoir block of a continuum-model state vector.
inline Eigen::VectorXcd continuum_amplitudes(const Trajectory& tr, const Eigen::VectorXcd& state)
{
    if (!tr.grid) throw std::invalid_argument("continuum_amplitudes: model has no continuum");
    const auto n = static_cast<Eigen::Index>(tr.grid->count);
    return state.tail(n);
}

} // namespace cavsim
