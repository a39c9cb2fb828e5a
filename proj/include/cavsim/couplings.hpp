// couplings.hpp - Atom-continuum coupling η(ω), its Lorentzian form η̂(ω) and
// the cavity-reservoir coupling κ_c(ω)

#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "cavsim/errors.hpp"
#include "cavsim/mirror.hpp"
#include "cavsim/units.hpp"

namespace cavsim {

enum class CouplingMode { exact, lorentzian };

inline std::string to_string(CouplingMode mode)
{
    return mode == CouplingMode::exact ? "exact" : "lorentzian";
}

struct CouplingSet {
    double g{0.0};
    CavitySpec cavity;
    double x_A{0.0};
    CouplingMode mode{CouplingMode::exact};
};

inline double sinc(double x)
{
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

// η(ω) = -i g √(ω/ω_c) √(L/πc) e^{iωL/c} sin(ω(x_A+L)/c) T(ω)
inline cplx eta_exact(double omega, const CouplingSet& c)
{
    const auto& cav = c.cavity;
    const double k = omega / kSpeedOfLight;
    const double prefactor = c.g * std::sqrt(omega / cav.omega_c) *
                             std::sqrt(cav.L / (kPi * kSpeedOfLight)) *
                             std::sin(k * (c.x_A + cav.L));
    return -kI * prefactor * std::exp(kI * (k * cav.L)) * response_T(omega, cav);
}

// η̂(ω) = -i g √(Γ_c/2π) / (ω - ω_c + iΓ_c/2)
inline cplx eta_lorentzian(double omega, const CouplingSet& c)
{
    const double G = c.cavity.Gamma_c;
    return -kI * c.g * std::sqrt(G / (2.0 * kPi)) / cplx(omega - c.cavity.omega_c, 0.5 * G);
}

inline cplx eta(double omega, const CouplingSet& c)
{
    return c.mode == CouplingMode::exact ? eta_exact(omega, c) : eta_lorentzian(omega, c);
}

// κ_c(ω) = -i √(Γ_c/2π) e^{-iωL/c} sinc((ω - ω_c)L/c)
inline cplx kappa_c(double omega, const CavitySpec& cav)
{
    const double amp = std::sqrt(cav.Gamma_c / (2.0 * kPi)) *
                       sinc((omega - cav.omega_c) * cav.L / kSpeedOfLight);
    return -kI * amp * std::exp(-kI * (omega * cav.L / kSpeedOfLight));
}

// (Γ_c (x_A + L)/c)², reported for information only.
inline double retardation_parameter(const CouplingSet& c)
{
    const double v = c.cavity.Gamma_c * (c.x_A + c.cavity.L) / kSpeedOfLight;
    return v * v;
}

} // namespace cavsim
