// drive.hpp - Classical Rabi-frequency envelopes Ω(t)

#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

// Boost 1.74's pchip calls isnan unqualified; <math.h> puts it in the global namespace.
#include <math.h>

#include <boost/math/interpolators/pchip.hpp>

#include "cavsim/errors.hpp"
#include "cavsim/units.hpp"

namespace cavsim {

enum class DriveKind { zero, sin2, gaussian, tabulated };

inline std::string to_string(DriveKind kind)
{
    switch (kind) {
        case DriveKind::zero: return "zero";
        case DriveKind::sin2: return "sin2";
        case DriveKind::gaussian: return "gaussian";
        case DriveKind::tabulated: return "tabulated";
    }
    return "zero";
}

inline DriveKind parse_drive_kind(const std::string& name)
{
    if (name == "zero") return DriveKind::zero;
    if (name == "sin2") return DriveKind::sin2;
    if (name == "gaussian") return DriveKind::gaussian;
    if (name == "tabulated") return DriveKind::tabulated;
    throw ConfigError("atom.drive.kind: unknown drive kind '" + name +
                      "' (expected zero, sin2, gaussian, tabulated)");
}

// Real envelope Ω(t). Analytic kinds:
//   sin2:     Ω₀ sin²(πt/T) on [0, T], zero elsewhere
//   gaussian: Ω₀ exp(-(πt/T)²), centred at t = 0
// Tabulated envelopes use monotone cubic (PCHIP) interpolation and vanish
// outside the sampled range.
class DriveEnvelope {
public:
    DriveEnvelope() = default;

    static DriveEnvelope zero() { return {}; }

    static DriveEnvelope sin2(double amplitude, double duration)
    {
        if (!(duration > 0.0)) throw ConfigError("atom.drive.duration: must be positive");
        DriveEnvelope d;
        d.kind_ = DriveKind::sin2;
        d.amplitude_ = amplitude;
        d.duration_ = duration;
        return d;
    }

    static DriveEnvelope gaussian(double amplitude, double duration)
    {
        if (!(duration > 0.0)) throw ConfigError("atom.drive.duration: must be positive");
        DriveEnvelope d;
        d.kind_ = DriveKind::gaussian;
        d.amplitude_ = amplitude;
        d.duration_ = duration;
        return d;
    }

    static DriveEnvelope tabulated(std::vector<double> times, std::vector<double> values)
    {
        if (times.size() != values.size())
            throw ConfigError("atom.drive.samples: time and value columns differ in length");
        if (times.size() < 4)
            throw ConfigError("atom.drive.samples: monotone cubic interpolation needs at least 4 samples");
        for (std::size_t i = 1; i < times.size(); ++i) {
            if (!(times[i] > times[i - 1]))
                throw ConfigError("atom.drive.samples: times must be strictly increasing");
        }
        DriveEnvelope d;
        d.kind_ = DriveKind::tabulated;
        d.times_ = std::move(times);
        d.values_ = std::move(values);
        d.amplitude_ = 0.0;
        for (double v : d.values_) d.amplitude_ = std::max(d.amplitude_, std::abs(v));
        d.duration_ = d.times_.back() - d.times_.front();
        auto x = d.times_;
        auto y = d.values_;
        d.interp_ = std::make_shared<const Interp>(std::move(x), std::move(y));
        return d;
    }

    double operator()(double t) const
    {
        switch (kind_) {
            case DriveKind::zero:
                return 0.0;
            case DriveKind::sin2: {
                if (t < 0.0 || t > duration_) return 0.0;
                const double s = std::sin(kPi * t / duration_);
                return amplitude_ * s * s;
            }
            case DriveKind::gaussian: {
                const double x = kPi * t / duration_;
                return amplitude_ * std::exp(-x * x);
            }
            case DriveKind::tabulated:
                if (t < times_.front() || t > times_.back()) return 0.0;
                return (*interp_)(t);
        }
        return 0.0;
    }

    DriveKind kind() const noexcept { return kind_; }
    // Ω₀ for analytic kinds, max |Ω| over the samples for tabulated ones.
    double amplitude() const noexcept { return amplitude_; }
    double duration() const noexcept { return duration_; }
    const std::vector<double>& sample_times() const noexcept { return times_; }
    const std::vector<double>& sample_values() const noexcept { return values_; }

    double peak() const noexcept { return kind_ == DriveKind::zero ? 0.0 : std::abs(amplitude_); }

private:
    using Interp = boost::math::interpolators::pchip<std::vector<double>>;

    DriveKind kind_{DriveKind::zero};
    double amplitude_{0.0};
    double duration_{1.0};
    std::vector<double> times_;
    std::vector<double> values_;
    std::shared_ptr<const Interp> interp_;
};

} // namespace cavsim
