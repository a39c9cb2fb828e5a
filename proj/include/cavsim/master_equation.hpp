// master_equation.hpp - Four-level Lindblad dynamics on {|g,∅⟩, |e,∅⟩, |f,1⟩, |f,∅⟩}
// and its decoupled block form

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "cavsim/drive.hpp"
#include "cavsim/dynamics.hpp"
#include "cavsim/rk4.hpp"
#include "cavsim/scenario.hpp"
#include "cavsim/units.hpp"

namespace cavsim {

using DensityMatrix4 = Eigen::Matrix4cd;

// Basis indices.
inline constexpr int kGround = 0;
inline constexpr int kExcited = 1;
inline constexpr int kPhoton = 2;
inline constexpr int kVacuumF = 3;

struct MasterParams {
    DriveEnvelope drive;
    double g{0.0};
    double Delta{0.0};
    double Delta_c{0.0};
    double Gamma_c{0.0};

    static MasterParams from(const ScenarioConfig& cfg)
    {
        return {cfg.atom.drive, cfg.atom.g, cfg.atom.Delta, cfg.atom.Delta_c, cfg.cavity.Gamma_c};
    }

    // A-block {0, Ω, 0; Ω, Δ, g; 0, g, Δ - Δ_c}. The |f,∅⟩ corner (-ω_c) is a
    // decoupled global phase and is left at zero.
    Eigen::Matrix3d block_A(double t) const
    {
        const double omega = drive(t);
        Eigen::Matrix3d A;
        A << 0.0, omega, 0.0, omega, Delta, g, 0.0, g, Delta - Delta_c;
        return A;
    }

    Eigen::Matrix4cd hamiltonian(double t) const
    {
        Eigen::Matrix4cd H = Eigen::Matrix4cd::Zero();
        H.topLeftCorner<3, 3>() = block_A(t).cast<cplx>();
        return H;
    }
};

// -i[H, ρ] + Γ_c(cρc† - ½{c†c, ρ}) with c = |f,∅⟩⟨f,1|.
inline DensityMatrix4 lindblad_rhs(const DensityMatrix4& rho, double t, const MasterParams& p)
{
    const Eigen::Matrix4cd H = p.hamiltonian(t);
    DensityMatrix4 d = -kI * (H * rho - rho * H);
    const double half = 0.5 * p.Gamma_c;
    d.row(kPhoton) -= half * rho.row(kPhoton);
    d.col(kPhoton) -= half * rho.col(kPhoton);
    d(kVacuumF, kVacuumF) += p.Gamma_c * rho(kPhoton, kPhoton);
    return d;
}

struct LindbladRhs {
    MasterParams params;
    void operator()(double t, const DensityMatrix4& rho, DensityMatrix4& d) const { d = lindblad_rhs(rho, t, params); }
};

// Block form: ρ̇_AA = -i(Ãρ_AA - ρ_AAÃ†), ρ̇₀₀ = Γ_c 𝐃ρ_AA𝐃† with
// Ã = A - (i/2)Γ_c𝐃†𝐃 and 𝐃 = [0, 0, 1]. ρ_AA is stored in the top-left 3x3
// corner and ρ₀₀ in entry (3,3); the off-diagonal blocks stay zero.
struct BlockRhs {
    MasterParams params;
    void operator()(double t, const DensityMatrix4& rho, DensityMatrix4& d) const
    {
        Eigen::Matrix3cd At = params.block_A(t).cast<cplx>();
        At(2, 2) -= 0.5 * kI * params.Gamma_c;
        const Eigen::Matrix3cd r = rho.topLeftCorner<3, 3>();
        d.setZero();
        d.topLeftCorner<3, 3>() = -kI * (At * r - r * At.adjoint());
        d(3, 3) = params.Gamma_c * r(2, 2);
    }
};

struct DensityDiagnostics {
    double trace_error{0.0};
    double hermiticity_error{0.0};
    double min_eigenvalue{0.0};
    double purity{0.0};
};

inline DensityDiagnostics diagnose(const DensityMatrix4& rho)
{
    DensityDiagnostics d;
    d.trace_error = std::abs(rho.trace() - cplx(1.0, 0.0));
    d.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    const Eigen::Matrix4cd h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h, Eigen::EigenvaluesOnly);
    d.min_eigenvalue = es.eigenvalues().minCoeff();
    d.purity = (rho * rho).trace().real();
    return d;
}

inline DensityMatrix4 initial_density(InitialState s)
{
    DensityMatrix4 rho = DensityMatrix4::Zero();
    switch (s) {
        case InitialState::ground: rho(kGround, kGround) = 1.0; break;
        case InitialState::excited: rho(kExcited, kExcited) = 1.0; break;
        case InitialState::cavity_photon: rho(kPhoton, kPhoton) = 1.0; break;
    }
    return rho;
}

namespace detail {

template <class Rhs>
Trajectory integrate_density(const Rhs& rhs, const ScenarioConfig& cfg, const DensityMatrix4& rho0,
                             const IntegrateOptions& opt)
{
    cfg.validate();
    Trajectory tr;
    tr.model = Model::master;
    tr.cavity = cfg.cavity;
    tr.min_eigenvalue = 1.0;
    const double dt_max = resolve_dt(cfg, nullptr, tr.warnings);
    const StepPlan plan = plan_steps(cfg.t0, cfg.tf, dt_max);
    tr.dt = plan.dt;
    tr.steps = plan.steps;
    if (plan.steps == 0) tr.warnings.push_back("integrate: empty time window (tf == t0), no steps taken");
    const std::size_t every = resolve_record_every(cfg, plan.steps, opt.max_records);

    DensityMatrix4 rho = rho0;
    auto record = [&](double t, const DensityMatrix4& r) {
        const auto d = diagnose(r);
        tr.max_norm_drift = std::max(tr.max_norm_drift, d.trace_error);
        tr.max_hermiticity_error = std::max(tr.max_hermiticity_error, d.hermiticity_error);
        tr.min_eigenvalue = std::min(tr.min_eigenvalue, d.min_eigenvalue);
        tr.t.push_back(t);
        tr.P_g.push_back(r(0, 0).real());
        tr.P_e.push_back(r(1, 1).real());
        tr.P_photon.push_back(r(2, 2).real());
        tr.n_leaked.push_back(r(3, 3).real());
        tr.purity.push_back(d.purity);
        if (opt.keep_states) tr.rho_states.push_back(r);
    };
    run_fixed_step(rhs, rho, cfg.t0, plan, every, record);
    tr.final_rho = rho;
    return tr;
}

} // namespace detail

// Full Lindblad evolution from the configured initial state.
inline Trajectory integrate_master(const ScenarioConfig& cfg, const IntegrateOptions& opt = {})
{
    return detail::integrate_density(LindbladRhs{MasterParams::from(cfg)}, cfg, initial_density(cfg.initial_state),
                                     opt);
}

// Block evolution from a pure A-block state ψ0 (components g, e, f1). The
// trajectory's n_leaked column is ρ₀₀ = P_{f,0}.
inline Trajectory block_evolution(const Eigen::Vector3cd& psi0, const ScenarioConfig& cfg,
                                  const IntegrateOptions& opt = {})
{
    DensityMatrix4 rho0 = DensityMatrix4::Zero();
    rho0.topLeftCorner<3, 3>() = psi0 * psi0.adjoint();
    return detail::integrate_density(BlockRhs{MasterParams::from(cfg)}, cfg, rho0, opt);
}

// Dispatches every model, including the master equation.
inline Trajectory integrate(Model model, const ScenarioConfig& cfg, const IntegrateOptions& opt = {})
{
    if (model == Model::master) return integrate_master(cfg, opt);
    return integrate_wavefunction(model, cfg, opt);
}

} // namespace cavsim
