// rk4.hpp - Fixed-step classical Runge-Kutta integrator for Eigen-valued states

#pragma once

#include <cmath>
#include <cstddef>

namespace cavsim {

// Classical 4th-order Runge-Kutta with reusable stage buffers.
// Rhs is called as rhs(t, y, dydt) and must fully overwrite dydt.
template <class State>
class RungeKutta4 {
public:
    template <class Rhs>
    void step(const Rhs& rhs, double t, double dt, State& y)
    {
        ensure_shape(y);
        const double half = 0.5 * dt;
        rhs(t, y, k1_);
        tmp_ = y + half * k1_;
        rhs(t + half, tmp_, k2_);
        tmp_ = y + half * k2_;
        rhs(t + half, tmp_, k3_);
        tmp_ = y + dt * k3_;
        rhs(t + dt, tmp_, k4_);
        y += (dt / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
    }

private:
    void ensure_shape(const State& y)
    {
        if (k1_.rows() != y.rows() || k1_.cols() != y.cols()) {
            k1_.resizeLike(y);
            k2_.resizeLike(y);
            k3_.resizeLike(y);
            k4_.resizeLike(y);
            tmp_.resizeLike(y);
        }
    }

    State k1_, k2_, k3_, k4_, tmp_;
};

// Uniform step plan covering [t0, tf] exactly.
struct StepPlan {
    std::size_t steps{0};
    double dt{0.0};
};

inline StepPlan plan_steps(double t0, double tf, double dt_max)
{
    const double span = tf - t0;
    if (!(span > 0.0)) return {};
    auto steps = static_cast<std::size_t>(std::ceil(span / dt_max - 1e-9));
    if (steps == 0) steps = 1;
    return {steps, span / static_cast<double>(steps)};
}

} // namespace cavsim
