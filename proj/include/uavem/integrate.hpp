#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace uavem {

/// One classic 4th-order Runge-Kutta step for a small fixed-size state.
/// `deriv(state, t)` must return the time derivative as the same array type.
template <std::size_t N, typename Deriv>
std::array<double, N> rk4_step(const std::array<double, N>& state, double t,
                               double dt, Deriv&& deriv) {
    auto axpy = [](const std::array<double, N>& s, double a,
                   const std::array<double, N>& d) {
        std::array<double, N> out;
        for (std::size_t i = 0; i < N; ++i) out[i] = s[i] + a * d[i];
        return out;
    };

    const auto k1 = deriv(state, t);
    const auto k2 = deriv(axpy(state, dt / 2.0, k1), t + dt / 2.0);
    const auto k3 = deriv(axpy(state, dt / 2.0, k2), t + dt / 2.0);
    const auto k4 = deriv(axpy(state, dt, k3), t + dt);

    std::array<double, N> out;
    for (std::size_t i = 0; i < N; ++i) {
        out[i] = state[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return out;
}

/// Composite trapezoid rule over [t0, tf] with step at most `dt`.
/// The step is shrunk so the interval divides evenly.
template <typename Fn>
double integrate_trapezoid(Fn&& f, double t0, double tf, double dt) {
    const double span = tf - t0;
    if (span <= 0.0) return 0.0;
    const std::size_t n = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(span / dt)));
    const double h = span / static_cast<double>(n);
    double sum = 0.5 * (f(t0) + f(tf));
    for (std::size_t i = 1; i < n; ++i) {
        sum += f(t0 + h * static_cast<double>(i));
    }
    return sum * h;
}

}  // namespace uavem
