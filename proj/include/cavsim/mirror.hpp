// mirror.hpp - Single-layer mirror coefficients, cavity response T(ω) and its
// Lorentzian mode decomposition

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "cavsim/errors.hpp"
#include "cavsim/units.hpp"

namespace cavsim {

// Amplitude Fresnel coefficient of a vacuum/dielectric interface.
inline double fresnel_r(double n)
{
    if (!(n >= 1.0)) throw std::domain_error("fresnel_r: refractive index must be >= 1");
    return (n - 1.0) / (n + 1.0);
}

struct MirrorSpec {
    double n{1.0};     // refractive index of the layer
    double delta{0.0}; // layer thickness

    double r0() const { return fresnel_r(n); }

    // Quarter-wave layer at the cavity resonance: δ = λ_c/(4n).
    static MirrorSpec quarter_wave(double n, double omega_c)
    {
        const double lambda_c = 2.0 * kPi * kSpeedOfLight / omega_c;
        return {n, lambda_c / (4.0 * n)};
    }

    void validate() const
    {
        if (!(n >= 1.0)) throw ConfigError("cavity.mirror.n: refractive index must be >= 1");
        if (!(delta > 0.0)) throw ConfigError("cavity.mirror.delta: layer thickness must be positive");
    }
};

struct CavitySpec {
    double L{0.0};       // cavity length
    int m{1};            // mode index, ω_c ≈ mπc/L
    double omega_c{0.0}; // resonance frequency
    double Gamma_c{0.0}; // cavity decay rate
    MirrorSpec mirror;

    double free_spectral_range() const { return kPi * kSpeedOfLight / L; }
    // Round-trip length including half the layer, as it enters T(ω).
    double effective_length() const { return L + 0.5 * mirror.delta; }

    // Cavity whose length puts mode m exactly on omega_c, closed by a
    // quarter-wave layer of index n.
    static CavitySpec resonant(int m, double omega_c, double Gamma_c, double n)
    {
        CavitySpec c;
        c.m = m;
        c.omega_c = omega_c;
        c.L = m * kPi * kSpeedOfLight / omega_c;
        c.Gamma_c = Gamma_c;
        c.mirror = MirrorSpec::quarter_wave(n, omega_c);
        return c;
    }

    void validate() const
    {
        if (!(L > 0.0)) throw ConfigError("cavity.L: must be positive");
        if (m < 1) throw ConfigError("cavity.m: mode index must be a positive integer");
        if (!(omega_c > 0.0)) throw ConfigError("cavity.omega_c: must be positive");
        if (!(Gamma_c >= 0.0)) throw ConfigError("cavity.Gamma_c: must be non-negative");
        mirror.validate();
    }

    // Non-fatal consistency checks.
    std::vector<std::string> warnings() const
    {
        std::vector<std::string> out;
        const double nominal = m * kPi * kSpeedOfLight / L;
        if (std::abs(nominal - omega_c) > 1e-3 * omega_c)
            out.push_back("cavity: omega_c deviates from m*pi*c/L by more than 0.1%");
        if (!(Gamma_c < 0.01 * omega_c))
            out.push_back("cavity: Gamma_c is not small compared to omega_c (low Q)");
        return out;
    }
};

struct LorentzianMode {
    int index{0};
    double omega_m{0.0};
    double Gamma_m{0.0};
};

struct LayerCoefficients {
    cplx t;
    cplx r;
};

// Two-interface transmission and reflection of a dielectric slab.
inline LayerCoefficients layer_coefficients(double omega, const MirrorSpec& mirror)
{
    const double r0 = mirror.r0();
    const double k = omega / kSpeedOfLight;
    const cplx round_trip = std::exp(kI * (2.0 * mirror.n * k * mirror.delta));
    const cplx denom = 1.0 - round_trip * r0 * r0;
    const cplx t = (1.0 - r0 * r0) * std::exp(kI * ((mirror.n - 1.0) * k * mirror.delta)) / denom;
    const cplx r = std::exp(-kI * (k * mirror.delta)) * r0 * (round_trip - 1.0) / denom;
    return {t, r};
}

// Exact single-layer cavity response T(ω) = t/(1 + r e^{2iω(L+δ/2)/c}).
inline cplx response_T(double omega, const CavitySpec& cavity)
{
    const auto [t, r] = layer_coefficients(omega, cavity.mirror);
    const double phase = 2.0 * omega * cavity.effective_length() / kSpeedOfLight;
    return t / (1.0 + r * std::exp(kI * phase));
}

// Solves ω = (mπ + (π - φ_r(ω))/2)·c/L_eff by damped fixed-point iteration
// seeded at mπc/L. Γ_m = -(c/L_eff) ln|r(ω_m)|.
inline LorentzianMode lorentzian_mode(const CavitySpec& cavity, int index,
                                      double damping = 0.5, int max_iterations = 100)
{
    const double L_eff = cavity.effective_length();
    double omega = index * kPi * kSpeedOfLight / cavity.L;
    for (int it = 0; it < max_iterations; ++it) {
        const auto r = layer_coefficients(omega, cavity.mirror).r;
        const double phase_gap = std::remainder(kPi - std::arg(r), 2.0 * kPi);
        const double target = (index * kPi + 0.5 * phase_gap) * kSpeedOfLight / L_eff;
        const double next = (1.0 - damping) * omega + damping * target;
        if (std::abs(next - omega) <= 1e-13 * std::max(1.0, std::abs(omega))) {
            const double mag = std::abs(layer_coefficients(next, cavity.mirror).r);
            return {index, next, -kSpeedOfLight / L_eff * std::log(mag)};
        }
        omega = next;
    }
    throw std::runtime_error("lorentzian_mode: fixed point did not converge for mode index " +
                             std::to_string(index));
}

// All Lorentzian modes with ω_m inside [omega_lo, omega_hi].
inline std::vector<LorentzianMode> lorentzian_modes(const CavitySpec& cavity, double omega_lo,
                                                    double omega_hi)
{
    if (!(omega_lo > 0.0) || !(omega_hi > omega_lo))
        throw std::domain_error("lorentzian_modes: band must satisfy 0 < lo < hi");
    const double fsr = cavity.free_spectral_range();
    const int first = std::max(1, static_cast<int>(std::floor(omega_lo / fsr)) - 1);
    const int last = static_cast<int>(std::ceil(omega_hi / fsr)) + 1;
    std::vector<LorentzianMode> modes;
    for (int m = first; m <= last; ++m) {
        const auto mode = lorentzian_mode(cavity, m);
        if (mode.omega_m >= omega_lo && mode.omega_m <= omega_hi) modes.push_back(mode);
    }
    return modes;
}

inline double lorentzian_profile(double omega, const LorentzianMode& mode, double L_eff)
{
    const double d = omega - mode.omega_m;
    return kSpeedOfLight / (2.0 * L_eff) * mode.Gamma_m /
           (d * d + 0.25 * mode.Gamma_m * mode.Gamma_m);
}

// Sum of Lorentzians for the modes within `neighbors` indices of the mode
// nearest to ω.
inline double lorentzian_T2(double omega, const CavitySpec& cavity, int neighbors = 5)
{
    const int nearest = std::max(1, static_cast<int>(std::lround(omega / cavity.free_spectral_range())));
    double sum = 0.0;
    for (int m = std::max(1, nearest - neighbors); m <= nearest + neighbors; ++m)
        sum += lorentzian_profile(omega, lorentzian_mode(cavity, m), cavity.effective_length());
    return sum;
}

struct FinesseQ {
    double finesse{0.0};
    double Q{0.0};
};

inline FinesseQ finesse_and_Q(const CavitySpec& cavity)
{
    return {cavity.free_spectral_range() / cavity.Gamma_c, cavity.omega_c / cavity.Gamma_c};
}

// Intensity reflectivity R = e^{-2LΓ_c/c} implied by the decay rate, and the
// matching mirror transmission |t|² = 1 - R.
struct Reflectivity {
    double R{0.0};
    double t2{0.0};
};

inline Reflectivity reflectivity_from_decay(const CavitySpec& cavity)
{
    const double R = std::exp(-2.0 * cavity.L * cavity.Gamma_c / kSpeedOfLight);
    return {R, 1.0 - R};
}

// Refractive index whose quarter-wave layer gives |r(ω_c)| = e^{-Γ_c L/c}.
inline double index_for_decay_rate(double L, double Gamma_c)
{
    const double amp = std::exp(-Gamma_c * L / kSpeedOfLight);
    // |r| = 2 r0 / (1 + r0²)  =>  r0 = (1 - sqrt(1 - |r|²)) / |r|
    const double r0 = (1.0 - std::sqrt(1.0 - amp * amp)) / amp;
    return (1.0 + r0) / (1.0 - r0);
}

} // namespace cavsim
