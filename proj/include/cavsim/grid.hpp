// grid.hpp - Uniform discretisation of the reservoir continuum and spectral
// densities built from discrete amplitudes

#pragma once

#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cavsim/errors.hpp"
#include "cavsim/units.hpp"

namespace cavsim {

struct FrequencyGrid {
    double center{0.0};
    double half_width{0.0};
    std::size_t count{0};
    double d_omega{0.0};
    std::vector<double> points;

    double detuning(std::size_t i) const { return points[i] - center; }
    std::size_t size() const noexcept { return count; }
};

inline FrequencyGrid build_grid(double center, double half_width, std::size_t count)
{
    if (count < 3) throw ConfigError("grid.count: at least 3 points are required");
    if (!(half_width > 0.0)) throw ConfigError("grid.half_width: must be positive");
    if (!(center - half_width > 0.0))
        throw ConfigError("grid.half_width: grid would reach non-positive frequencies");
    FrequencyGrid grid;
    grid.center = center;
    grid.half_width = half_width;
    grid.count = count;
    grid.d_omega = 2.0 * half_width / static_cast<double>(count - 1);
    grid.points.resize(count);
    const auto mid = static_cast<double>(count - 1) / 2.0;
    for (std::size_t i = 0; i < count; ++i)
        grid.points[i] = center + (static_cast<double>(i) - mid) * grid.d_omega;
    return grid;
}

// Resolution and recurrence guards; violations are reported, not fatal.
inline std::vector<std::string> grid_warnings(const FrequencyGrid& grid, double Gamma_c, double span)
{
    std::vector<std::string> out;
    if (Gamma_c > 0.0 && !(grid.d_omega < Gamma_c / 20.0)) {
        std::ostringstream s;
        s << "grid: d_omega=" << grid.d_omega << " does not resolve the cavity line (needs < Gamma_c/20="
          << Gamma_c / 20.0 << ")";
        out.push_back(s.str());
    }
    if (span > 0.0 && !(grid.d_omega < 2.0 * kPi / span)) {
        std::ostringstream s;
        s << "grid: d_omega=" << grid.d_omega << " allows discretisation recurrence within the run (needs < "
          << 2.0 * kPi / span << ")";
        out.push_back(s.str());
    }
    return out;
}

struct Spectrum {
    std::vector<double> omega;
    std::vector<double> density;     // |𝐜_i|²/dω
    std::vector<double> grid_native; // |𝐜_i|²
    std::vector<std::string> warnings;

    bool empty() const noexcept { return omega.empty(); }

    // Σ|𝐜_i|², the total probability carried by the continuum.
    double total() const
    {
        double s = 0.0;
        for (double p : grid_native) s += p;
        return s;
    }
};

// Amplitudes are the dimensionless 𝐜_i = √dω c(ω_i).
inline Spectrum spectral_density(const Eigen::Ref<const Eigen::VectorXcd>& amps, const FrequencyGrid& grid)
{
    if (static_cast<std::size_t>(amps.size()) != grid.count)
        throw std::invalid_argument("spectral_density: amplitude count does not match the grid");
    Spectrum s;
    s.omega = grid.points;
    s.density.resize(grid.count);
    s.grid_native.resize(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double p = std::norm(amps[static_cast<Eigen::Index>(i)]);
        s.grid_native[i] = p;
        s.density[i] = p / grid.d_omega;
    }
    return s;
}

} // namespace cavsim
