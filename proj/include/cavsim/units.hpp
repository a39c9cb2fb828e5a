// units.hpp - Scaled unit system shared by every module

#pragma once

#include <complex>
#include <numbers>

namespace cavsim {

// Time is measured in units of a reference pulse duration T and lengths in
// units of c*T. Every rate is stored as rate*T and every length as L/(c*T).
struct UnitSystem {
    static constexpr double T_ref = 1.0;
    static constexpr double c = 1.0;
};

inline constexpr double kSpeedOfLight = UnitSystem::c;
inline constexpr double kPi = std::numbers::pi;

using cplx = std::complex<double>;
inline constexpr cplx kI{0.0, 1.0};

} // namespace cavsim
