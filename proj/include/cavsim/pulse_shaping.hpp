// pulse_shaping.hpp - Adiabatic-elimination forward map (drive to flux) and
// inverse design of the Rabi frequency for a target photon flux

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "cavsim/drive.hpp"
#include "cavsim/dynamics.hpp"
#include "cavsim/errors.hpp"
#include "cavsim/scenario.hpp"
#include "cavsim/units.hpp"

namespace cavsim {

struct RamanParams {
    double g{0.0};
    double Delta{0.0};
    double Gamma_c{0.0};
};

struct TabulatedFlux {
    std::vector<double> t;
    std::vector<double> flux;

    std::size_t size() const noexcept { return t.size(); }
    double integral() const;
};

inline std::vector<double> cumulative_trapezoid(const std::vector<double>& t, const std::vector<double>& y)
{
    std::vector<double> out(t.size(), 0.0);
    for (std::size_t i = 1; i < t.size(); ++i)
        out[i] = out[i - 1] + 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
    return out;
}

inline double trapezoid(const std::vector<double>& t, const std::vector<double>& y)
{
    double s = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) s += 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
    return s;
}

inline double TabulatedFlux::integral() const { return trapezoid(t, flux); }

// Piecewise-linear evaluation, zero outside the sampled range.
inline double interpolate_linear(const std::vector<double>& t, const std::vector<double>& y, double tq)
{
    if (t.empty() || tq < t.front() || tq > t.back()) return 0.0;
    const auto it = std::upper_bound(t.begin(), t.end(), tq);
    if (it == t.end()) return y.back();
    const auto i = static_cast<std::size_t>(it - t.begin());
    if (i == 0) return y.front();
    const double w = (tq - t[i - 1]) / (t[i] - t[i - 1]);
    return (1.0 - w) * y[i - 1] + w * y[i];
}

// Target flux Φ* with ∫Φ* = η < 1, renormalised on construction.
struct ShapingParams {
    RamanParams raman;
    double eta_eff{0.99};
    TabulatedFlux target;

    static ShapingParams make(const RamanParams& raman, double eta_eff, TabulatedFlux target)
    {
        if (!(eta_eff > 0.0 && eta_eff < 1.0))
            throw ConfigError("target.eta: efficiency must lie strictly between 0 and 1");
        if (target.t.size() != target.flux.size() || target.t.size() < 4)
            throw ConfigError("target: flux table needs at least 4 aligned samples");
        for (std::size_t i = 0; i < target.t.size(); ++i) {
            if (!(target.flux[i] >= 0.0)) throw ConfigError("target: flux must be non-negative");
            if (i > 0 && !(target.t[i] > target.t[i - 1]))
                throw ConfigError("target: times must be strictly increasing");
        }
        const double area = target.integral();
        if (area > 0.0) {
            for (double& v : target.flux) v *= eta_eff / area;
        }
        return {raman, eta_eff, std::move(target)};
    }
};

// G(t) = -gΩ(t)/Δ.
inline double effective_coupling(double t, const RamanParams& p, const DriveEnvelope& drive)
{
    if (p.Delta == 0.0) throw std::domain_error("effective_coupling: the Raman scheme needs Delta != 0");
    return -p.g * drive(t) / p.Delta;
}

struct ThetaZeta {
    std::vector<double> t;
    std::vector<double> theta; // ∫4G²/Γ_c
    std::vector<double> zeta;  // ∫Ω²/Δ
};

// Cumulative integrals from times.front() by the trapezoid rule.
inline ThetaZeta theta_zeta(const std::vector<double>& times, const RamanParams& p, const DriveEnvelope& drive)
{
    if (p.Delta == 0.0) throw std::domain_error("theta_zeta: the Raman scheme needs Delta != 0");
    if (!(p.Gamma_c > 0.0)) throw std::domain_error("theta_zeta: Gamma_c must be positive");
    std::vector<double> rate_theta(times.size());
    std::vector<double> rate_zeta(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double G = effective_coupling(times[i], p, drive);
        const double omega = drive(times[i]);
        rate_theta[i] = 4.0 * G * G / p.Gamma_c;
        rate_zeta[i] = omega * omega / p.Delta;
    }
    return {times, cumulative_trapezoid(times, rate_theta), cumulative_trapezoid(times, rate_zeta)};
}

// Adiabatic prediction Φ = θ̇ e^{-θ}.
inline TabulatedFlux flux_forward(const std::vector<double>& times, const RamanParams& p, const DriveEnvelope& drive)
{
    const auto tz = theta_zeta(times, p, drive);
    TabulatedFlux out{times, std::vector<double>(times.size())};
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double G = effective_coupling(times[i], p, drive);
        out.flux[i] = 4.0 * G * G / p.Gamma_c * std::exp(-tz.theta[i]);
    }
    return out;
}

// Ω(t) = ±(Δ√Γ_c/2|g|)·√(Φ/(1 - ∫Φ)), with the sign fixed so that G ≥ 0.
inline DriveEnvelope design_rabi(const ShapingParams& sp)
{
    const auto& p = sp.raman;
    if (p.g == 0.0) throw std::domain_error("design_rabi: g must be non-zero");
    if (p.Delta == 0.0) throw std::domain_error("design_rabi: the Raman scheme needs Delta != 0");
    if (!(p.Gamma_c > 0.0)) throw std::domain_error("design_rabi: Gamma_c must be positive");
    const double sign = (p.Delta / p.g) > 0.0 ? -1.0 : 1.0;
    const double prefactor = sign * std::abs(p.Delta) * std::sqrt(p.Gamma_c) / (2.0 * std::abs(p.g));
    const auto cumulative = cumulative_trapezoid(sp.target.t, sp.target.flux);
    std::vector<double> omega(sp.target.t.size());
    for (std::size_t i = 0; i < omega.size(); ++i) {
        const double remaining = 1.0 - cumulative[i];
        if (!(remaining > 0.0)) {
            std::ostringstream s;
            s << "target.eta: cumulative target flux reaches 1 at t=" << sp.target.t[i]
              << " (eta_eff=" << sp.eta_eff << " must stay below 1)";
            throw ConfigError(s.str());
        }
        omega[i] = prefactor * std::sqrt(std::max(0.0, sp.target.flux[i]) / remaining);
    }
    return DriveEnvelope::tabulated(sp.target.t, std::move(omega));
}

// Φ(t) = (η√π/T) e^{-(πt/T)²} sampled on [t_lo, t_hi].
inline TabulatedFlux gaussian_target(double T, double eta, double t_lo, double t_hi, std::size_t samples = 4000)
{
    if (!(eta > 0.0 && eta < 1.0)) throw ConfigError("target.eta: efficiency must lie strictly between 0 and 1");
    if (!(T > 0.0)) throw ConfigError("target.duration: must be positive");
    if (!(t_hi > t_lo) || samples < 4) throw ConfigError("target: invalid sampling window");
    TabulatedFlux out;
    out.t.resize(samples);
    out.flux.resize(samples);
    const double step = (t_hi - t_lo) / static_cast<double>(samples - 1);
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = t_lo + static_cast<double>(i) * step;
        const double x = kPi * t / T;
        out.t[i] = t;
        out.flux[i] = eta * std::sqrt(kPi) / T * std::exp(-x * x);
    }
    return out;
}

inline TabulatedFlux gaussian_target(double T, double eta)
{
    return gaussian_target(T, eta, -2.0 * T, 3.0 * T);
}

struct RegimeReport {
    double delta_over_max_omega{0.0};
    double delta_over_g{0.0};
    double gamma_over_max_G{0.0};
    double gamma_delta_over_g2{0.0};
    double max_omega{0.0};
    double max_G{0.0};
    std::vector<std::string> flags;

    bool adiabatic() const noexcept { return flags.empty(); }
};

// Ratios behind the two adiabatic eliminations; any ratio below 1 is flagged.
inline RegimeReport regime_report(const RamanParams& p, const DriveEnvelope& drive, const std::vector<double>& times)
{
    RegimeReport r;
    for (double t : times) r.max_omega = std::max(r.max_omega, std::abs(drive(t)));
    if (drive.kind() == DriveKind::tabulated) r.max_omega = std::max(r.max_omega, drive.amplitude());
    const double inf = std::numeric_limits<double>::infinity();
    const double D = std::abs(p.Delta);
    const double g = std::abs(p.g);
    r.max_G = D > 0.0 ? g * r.max_omega / D : inf;
    r.delta_over_max_omega = r.max_omega > 0.0 ? D / r.max_omega : inf;
    r.delta_over_g = g > 0.0 ? D / g : inf;
    r.gamma_over_max_G = r.max_G > 0.0 ? p.Gamma_c / r.max_G : inf;
    r.gamma_delta_over_g2 = g > 0.0 ? p.Gamma_c * D / (g * g) : inf;
    if (r.delta_over_max_omega < 1.0) r.flags.push_back("large-detuning condition Delta >> Omega violated");
    if (r.delta_over_g < 1.0) r.flags.push_back("large-detuning condition Delta >> |g| violated");
    if (r.gamma_over_max_G < 1.0)
        r.flags.push_back("Gamma_c/max G < 1: the second adiabatic elimination cannot be made");
    if (r.gamma_delta_over_g2 < 1.0) r.flags.push_back("weak-coupling condition Gamma_c >> g^2/Delta violated");
    return r;
}

struct ShapeValidation {
    TabulatedFlux realized;  // Γ_c|c_f1|² from the pseudo-mode model
    TabulatedFlux reference; // reference flux resampled on the realized grid
    double l1{0.0};          // ∫|realized - reference|
    double tail_l1{0.0};     // same, restricted to t after the reference peak
    double n_final{0.0};
    Trajectory trajectory;
};

// Runs the pseudo-mode model for cfg and compares its flux with `reference`.
inline ShapeValidation validate_shape(const ScenarioConfig& cfg, const TabulatedFlux& reference)
{
    IntegrateOptions opt;
    opt.max_records = 1000000;
    ShapeValidation v;
    v.trajectory = integrate_wavefunction(Model::pseudo_mode, cfg, opt);
    const auto& tr = v.trajectory;
    v.realized.t = tr.t;
    v.reference.t = tr.t;
    v.realized.flux.resize(tr.t.size());
    v.reference.flux.resize(tr.t.size());
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
        v.realized.flux[i] = cfg.cavity.Gamma_c * tr.P_photon[i];
        v.reference.flux[i] = interpolate_linear(reference.t, reference.flux, tr.t[i]);
    }
    const auto peak = std::max_element(reference.flux.begin(), reference.flux.end());
    const double t_peak = peak == reference.flux.end() ? tr.t.front() : reference.t[static_cast<std::size_t>(peak - reference.flux.begin())];
    std::vector<double> diff(tr.t.size());
    std::vector<double> tail(tr.t.size());
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
        diff[i] = std::abs(v.realized.flux[i] - v.reference.flux[i]);
        tail[i] = tr.t[i] >= t_peak ? diff[i] : 0.0;
    }
    v.l1 = trapezoid(tr.t, diff);
    v.tail_l1 = trapezoid(tr.t, tail);
    v.n_final = tr.n_leaked.empty() ? 0.0 : tr.n_leaked.back();
    return v;
}

} // namespace cavsim
