// observables.hpp - Photon flux, cumulative photon number, outgoing spectra and
// the reservoir-side (Poynting) flux

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "cavsim/couplings.hpp"
#include "cavsim/dynamics.hpp"
#include "cavsim/grid.hpp"
#include "cavsim/pulse_shaping.hpp"
#include "cavsim/units.hpp"

namespace cavsim {

struct FluxSeries {
    std::vector<double> t;
    std::vector<double> flux; // Φ(t)
    std::vector<double> n;    // ∫Φ
};

// Φ = Γ_c P_photon with n accumulated by the trapezoid rule.
inline FluxSeries flux_from_population(const Trajectory& tr)
{
    if (tr.model == Model::true_mode || tr.model == Model::true_mode_lorentzian)
        throw std::invalid_argument("flux_from_population: true-mode trajectories carry no cavity population");
    FluxSeries f;
    f.t = tr.t;
    f.flux.resize(tr.t.size());
    for (std::size_t i = 0; i < tr.t.size(); ++i) f.flux[i] = tr.cavity.Gamma_c * tr.P_photon[i];
    f.n = cumulative_trapezoid(f.t, f.flux);
    return f;
}

// Outside-field flux at x > 0 from reservoir amplitudes 𝐜_i = √dω c(ω_i,t):
//   Φ(x,t) = |Σ_i dω κ_c*(ω_i) e^{i(ω_i - ω_c)x/c} c(ω_i,t)|² / Γ_c
// In the coarse-grained regime this equals Γ_c P_{f,1}(t - x/c).
inline double spectral_flux(const Eigen::Ref<const Eigen::VectorXcd>& reservoir, const FrequencyGrid& grid,
                            const CavitySpec& cavity, double x)
{
    if (!(x > 0.0)) throw std::domain_error("spectral_flux: the outside field is defined for x > 0 only");
    if (!(cavity.Gamma_c > 0.0)) return 0.0;
    if (static_cast<std::size_t>(reservoir.size()) != grid.count)
        throw std::invalid_argument("spectral_flux: amplitude count does not match the grid");
    const double w = std::sqrt(grid.d_omega);
    cplx sum{0.0, 0.0};
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double phase = (grid.points[i] - cavity.omega_c) * x / kSpeedOfLight;
        sum += std::conj(kappa_c(grid.points[i], cavity)) * std::exp(kI * phase) *
               reservoir[static_cast<Eigen::Index>(i)];
    }
    return std::norm(w * sum) / cavity.Gamma_c;
}

// Flux at the recorded snapshot nearest to t of an inside-outside trajectory
// integrated with keep_states.
inline double spectral_flux(const Trajectory& tr, double x, double t)
{
    if (tr.model != Model::inside_outside) throw std::invalid_argument("spectral_flux: needs an inside-outside trajectory");
    if (tr.states.size() != tr.t.size() || tr.t.empty())
        throw std::invalid_argument("spectral_flux: trajectory was integrated without state snapshots");
    const auto it = std::lower_bound(tr.t.begin(), tr.t.end(), t);
    std::size_t i = static_cast<std::size_t>(it - tr.t.begin());
    if (i == tr.t.size() || (i > 0 && std::abs(tr.t[i - 1] - t) < std::abs(tr.t[i] - t))) --i;
    return spectral_flux(continuum_amplitudes(tr, tr.states[i]), *tr.grid, tr.cavity, x);
}

// |d/dt Σ|𝐜_i|²| < tol over the final `window` of a continuum trajectory.
inline bool steady_state_reached(const Trajectory& tr, double window = 1.0, double tol = 1e-6)
{
    if (tr.t.size() < 2) return false;
    const double t_end = tr.t.back();
    for (std::size_t i = 1; i < tr.t.size(); ++i) {
        if (tr.t[i] < t_end - window) continue;
        const double rate = (tr.n_leaked[i] - tr.n_leaked[i - 1]) / (tr.t[i] - tr.t[i - 1]);
        if (!(std::abs(rate) < tol)) return false;
    }
    return true;
}

// Spectrum of the continuum amplitudes at the final time.
inline Spectrum outgoing_spectrum(const Trajectory& tr)
{
    if (!has_continuum(tr.model)) throw std::invalid_argument("outgoing_spectrum: model has no continuum");
    if (tr.empty()) {
        Spectrum s;
        s.warnings.push_back("spectrum: zero-length trajectory");
        return s;
    }
    Spectrum s = spectral_density(continuum_amplitudes(tr, tr.final_state), *tr.grid);
    if (!steady_state_reached(tr)) {
        std::ostringstream m;
        m << "spectrum: steady state not reached (|d/dt sum|c_i|^2| >= 1e-6 within the last T; "
          << "remaining excitation " << 1.0 - tr.n_leaked.back() << ")";
        s.warnings.push_back(m.str());
    }
    return s;
}

// Outgoing spectrum under the Lorentzian coupling η̂.
inline Spectrum pseudo_mode_spectrum(const Trajectory& tr)
{
    if (tr.model != Model::true_mode_lorentzian)
        throw std::invalid_argument("pseudo_mode_spectrum: needs a true-mode run with the Lorentzian coupling");
    return outgoing_spectrum(tr);
}

enum class Normalization { area, peak };

// ‖a - b‖ / (½(‖a‖ + ‖b‖)) on aligned samples.
inline double relative_l2(const std::vector<double>& a, const std::vector<double>& b)
{
    if (a.size() != b.size()) throw std::invalid_argument("relative_l2: series differ in length");
    double diff = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        diff += (a[i] - b[i]) * (a[i] - b[i]);
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    const double denom = 0.5 * (std::sqrt(na) + std::sqrt(nb));
    return denom > 0.0 ? std::sqrt(diff) / denom : 0.0;
}

inline std::vector<double> normalized(const std::vector<double>& v, Normalization how)
{
    double scale = 0.0;
    if (how == Normalization::area) {
        for (double x : v) scale += x;
    } else {
        for (double x : v) scale = std::max(scale, x);
    }
    std::vector<double> out(v);
    if (scale > 0.0)
        for (double& x : out) x /= scale;
    return out;
}

// Relative L² distance of two spectra on the same grid after normalisation.
inline double relative_l2(const Spectrum& a, const Spectrum& b, Normalization how)
{
    if (a.omega.size() != b.omega.size()) throw std::invalid_argument("relative_l2: spectra are on different grids");
    return relative_l2(normalized(a.density, how), normalized(b.density, how));
}

// Vertex of the parabola through the maximum sample and its neighbours.
inline double peak_position(const Spectrum& s)
{
    if (s.omega.empty()) throw std::invalid_argument("peak_position: empty spectrum");
    const auto it = std::max_element(s.density.begin(), s.density.end());
    const auto k = static_cast<std::size_t>(it - s.density.begin());
    if (k == 0 || k + 1 == s.density.size()) return s.omega[k];
    const double y0 = s.density[k - 1];
    const double y1 = s.density[k];
    const double y2 = s.density[k + 1];
    const double curvature = y0 - 2.0 * y1 + y2;
    if (curvature == 0.0) return s.omega[k];
    const double h = s.omega[k + 1] - s.omega[k];
    return s.omega[k] + 0.5 * h * (y0 - y2) / curvature;
}

// Bookkeeping residual ∫P dω - (1 - P_g - P_e - P_photon) at the final time.
inline double spectrum_bookkeeping_residual(const Trajectory& tr, const Spectrum& s)
{
    const double photon = tr.model == Model::inside_outside ? tr.P_photon.back() : 0.0;
    return s.total() - (1.0 - tr.P_g.back() - tr.P_e.back() - photon);
}

} // namespace cavsim
