#ifndef PROLATE_ODE_HPP
#define PROLATE_ODE_HPP

// Adaptive Dormand-Prince 5(4) integrator for small fixed-size systems.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "prolate/errors.hpp"

namespace prolate {

template <std::size_t N>
using OdeState = std::array<double, N>;

template <std::size_t N>
using OdeRhs = std::function<OdeState<N>(double, const OdeState<N>&)>;

struct OdeStats {
    std::size_t steps = 0;
    std::size_t rejected = 0;
};

// Integrate y' = f(t,y) from t0 to t1 (either direction). Throws MarchFailure
// on step-size underflow.
template <std::size_t N>
OdeState<N> integrate_dopri5(const OdeRhs<N>& f, double t0, double t1, OdeState<N> y,
                             double rtol = 1e-12, double atol = 1e-14,
                             OdeStats* stats = nullptr) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    if (t0 == t1) return y;
    const double dir = (t1 > t0) ? 1.0 : -1.0;
    double t = t0;
    double h = dir * std::min(std::abs(t1 - t0) / 16.0, 0.1);
    const double hmin = std::abs(t1 - t0) * 1e-14;

    OdeState<N> k1 = f(t, y);
    while (dir * (t1 - t) > 0) {
        if (std::abs(h) > std::abs(t1 - t)) h = t1 - t;
        OdeState<N> ytmp, k2, k3, k4, k5, k6, k7, y5;
        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        k2 = f(t + c2 * h, ytmp);
        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        k3 = f(t + c3 * h, ytmp);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        k4 = f(t + c4 * h, ytmp);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        k5 = f(t + c5 * h, ytmp);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        k6 = f(t + h, ytmp);
        for (std::size_t i = 0; i < N; ++i)
            y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        k7 = f(t + h, y5);

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                                   e7 * k7[i]);
            const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
            err += (ei / sc) * (ei / sc);
        }
        err = std::sqrt(err / static_cast<double>(N));

        if (err <= 1.0) {
            t += h;
            y = y5;
            k1 = k7;  // FSAL
            if (stats) ++stats->steps;
        } else if (stats) {
            ++stats->rejected;
        }
        const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
        h *= fac;
        if (std::abs(h) < hmin && dir * (t1 - t) > 0)
            throw MarchFailure("integrate_dopri5: step size underflow");
    }
    return y;
}

// Integrate with forced stops at the sorted interior points `stops`,
// invoking `on_stop(t, y)` at each (and at t1).
template <std::size_t N>
void integrate_with_stops(const OdeRhs<N>& f, double t0, double t1, OdeState<N> y,
                          const std::vector<double>& stops,
                          const std::function<void(double, const OdeState<N>&)>& on_stop,
                          double rtol = 1e-12, double atol = 1e-14) {
    double t = t0;
    for (double ts : stops) {
        if ((t1 > t0 && (ts <= t || ts > t1)) || (t1 < t0 && (ts >= t || ts < t1))) continue;
        y = integrate_dopri5<N>(f, t, ts, y, rtol, atol);
        t = ts;
        on_stop(t, y);
    }
    if (t != t1) {
        y = integrate_dopri5<N>(f, t, t1, y, rtol, atol);
        on_stop(t1, y);
    }
}

}  // namespace prolate

#endif  // PROLATE_ODE_HPP
