// verify.hpp - Numerical oracles for the κ-kernel integral and the
// non-even delta-model limit

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gsl/gsl_sf_expint.h>

#include "cavsim/couplings.hpp"
#include "cavsim/mirror.hpp"
#include "cavsim/units.hpp"

namespace cavsim {

namespace detail {

template <class F, class V>
V simpson_step(const F& f, double a, double b, V fa, V fm, V fb, V whole, double tol, int depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const V flm = f(lm);
    const V frm = f(rm);
    const V left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const V right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const V delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace detail

// Adaptive Simpson quadrature with absolute tolerance `tol`.
template <class F>
auto adaptive_simpson(const F& f, double a, double b, double tol, int max_depth = 40)
{
    const auto fa = f(a);
    const auto fb = f(b);
    const auto fm = f(0.5 * (a + b));
    const auto whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// ∫_U^∞ cos(au)/u² du.
inline double cosine_tail(double a, double U)
{
    const double x = std::abs(a) * U;
    return std::cos(a * U) / U - std::abs(a) * (0.5 * kPi - gsl_sf_Si(x));
}

// K(τ, x) = ∫|κ_c(ω)|² e^{-iω(τ - x/c)} dω by direct quadrature in
// u = (ω - ω_c)L/c over |u| ≤ u_max (adaptive Simpson on π-wide panels),
// plus the exact contribution of the sinc² tails beyond u_max.
inline cplx kernel_quadrature(double tau, double x, const CavitySpec& cav, double u_max = 2000.0,
                              double tol = 1e-10)
{
    const double s = tau - x / kSpeedOfLight;
    const double k = s * kSpeedOfLight / cav.L;
    auto integrand = [k](double u) {
        const double v = sinc(u);
        return v * v * std::exp(-kI * (k * u));
    };
    const auto panels = static_cast<int>(std::ceil(u_max / kPi));
    const double width = u_max / panels;
    const double panel_tol = tol / (2.0 * panels);
    cplx body{0.0, 0.0};
    for (int p = -panels; p < panels; ++p) body += adaptive_simpson(integrand, p * width, (p + 1) * width, panel_tol);
    const double tail = cosine_tail(k, u_max) - 0.5 * cosine_tail(k - 2.0, u_max) - 0.5 * cosine_tail(k + 2.0, u_max);
    const double scale = cav.Gamma_c / (2.0 * kPi) * kSpeedOfLight / cav.L;
    return scale * (body + tail) * std::exp(-kI * (cav.omega_c * s));
}

enum class KernelBranch { future, rising, falling, past };

inline std::string to_string(KernelBranch b)
{
    switch (b) {
        case KernelBranch::future: return "future";
        case KernelBranch::rising: return "rising";
        case KernelBranch::falling: return "falling";
        case KernelBranch::past: return "past";
    }
    return "past";
}

struct KernelResult {
    double tau{0.0};
    double x{0.0};
    cplx value;
    KernelBranch branch{KernelBranch::past};
};

// Apex Γ_c c/(2L) of the triangular kernel.
inline double kernel_peak(const CavitySpec& cav) { return cav.Gamma_c * kSpeedOfLight / (2.0 * cav.L); }

// Triangular closed form (Γ_c/4)(c/L)²(2L/c - |s|) e^{-iω_c s}, s = τ - x/c,
// zero for |s| ≥ 2L/c.
inline KernelResult kernel_closed_form(double tau, double x, const CavitySpec& cav)
{
    const double s = tau - x / kSpeedOfLight;
    const double width = 2.0 * cav.L / kSpeedOfLight;
    KernelResult r{tau, x, {0.0, 0.0}, KernelBranch::past};
    if (s <= -width) {
        r.branch = KernelBranch::future;
        return r;
    }
    if (s >= width) return r;
    r.branch = s <= 0.0 ? KernelBranch::rising : KernelBranch::falling;
    const double ratio = kSpeedOfLight / cav.L;
    r.value = 0.25 * cav.Gamma_c * ratio * ratio * (width - std::abs(s)) * std::exp(-kI * (cav.omega_c * s));
    return r;
}

// ∫|K| ds over the support, which the memoryless limit identifies with Γ_c.
inline double kernel_weight_integral(const CavitySpec& cav)
{
    const double width = 2.0 * cav.L / kSpeedOfLight;
    auto f = [&](double s) { return std::abs(kernel_closed_form(s, 0.0, cav).value); };
    return adaptive_simpson(f, -width, 0.0, 1e-12) + adaptive_simpson(f, 0.0, width, 1e-12);
}

struct DeltaDemo {
    double a{0.5};
    std::vector<double> eps;
    std::vector<double> half_line; // ∫_{-∞}^0 c h_ε^a
    std::vector<double> full_line; // ∫_{-∞}^{∞} c h_ε^a
    double expected{0.0};          // (1 - a) c(0)
    double extrapolated{0.0};      // Richardson estimate of the half-line limit
    double full_extrapolated{0.0};
    double slope{0.0};             // log-log slope of |half_line - extrapolated| against ε
};

namespace detail {

inline double richardson_first_order(double e1, double v1, double e2, double v2)
{
    return (e1 * v2 - e2 * v1) / (e1 - e2);
}

inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const auto n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace detail

// h_ε^a(t) = 1/ε on [(a-1)ε, aε], zero elsewhere. Integrals use Gauss-Kronrod.
inline DeltaDemo delta_model_limit(double a, const std::vector<double>& eps_sequence,
                                   const std::function<double(double)>& c)
{
    if (!(a > 0.0 && a < 1.0)) throw std::domain_error("delta_model_limit: a must lie in (0, 1)");
    if (eps_sequence.size() < 3) throw std::invalid_argument("delta_model_limit: need at least 3 values of eps");
    using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;
    DeltaDemo d;
    d.a = a;
    d.eps = eps_sequence;
    d.expected = (1.0 - a) * c(0.0);
    for (double e : eps_sequence) {
        if (!(e > 0.0)) throw std::domain_error("delta_model_limit: eps must be positive");
        const double left = Quad::integrate(c, (a - 1.0) * e, 0.0, 0, 0.0);
        const double right = Quad::integrate(c, 0.0, a * e, 0, 0.0);
        d.half_line.push_back(left / e);
        d.full_line.push_back((left + right) / e);
    }
    const std::size_t n = eps_sequence.size();
    d.extrapolated = detail::richardson_first_order(d.eps[n - 2], d.half_line[n - 2], d.eps[n - 1], d.half_line[n - 1]);
    d.full_extrapolated =
        detail::richardson_first_order(d.eps[n - 2], d.full_line[n - 2], d.eps[n - 1], d.full_line[n - 1]);
    std::vector<double> err(n);
    for (std::size_t i = 0; i < n; ++i) err[i] = std::abs(d.half_line[i] - d.extrapolated);
    d.slope = detail::loglog_slope(d.eps, err);
    return d;
}

// Log-spaced ε from 1e-1 to 1e-4 (in units of T), `per_decade` points per decade.
inline std::vector<double> default_eps_sequence(int per_decade = 4)
{
    std::vector<double> out;
    const int total = 3 * per_decade;
    for (int i = 0; i <= total; ++i) out.push_back(std::pow(10.0, -1.0 - 3.0 * i / total));
    return out;
}

} // namespace cavsim
