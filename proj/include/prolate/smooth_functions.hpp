#ifndef PROLATE_SMOOTH_FUNCTIONS_HPP
#define PROLATE_SMOOTH_FUNCTIONS_HPP

// C-infinity cutoffs and bumps with exact first and second derivatives.
//
// The four boundary-space basis functions on (-a,a):
//   phi_minus = 1 left of -a/2, 0 right of a/2
//   psi_minus = ln(a+t) left of -a/2, 0 right of a/2
//   phi_plus, psi_plus mirrored, psi_plus carrying ln(a-t)
// with a smoothstep transition on (-a/2, a/2).

#include <cmath>
#include <functional>
#include <utility>

#include "prolate/linalg.hpp"

namespace prolate {

// value, first and second derivative of a scalar function
struct Jet2 {
    cplx f{0.0};
    cplx d1{0.0};
    cplx d2{0.0};
};

using DiffFunction = std::function<Jet2(double)>;

namespace detail {

// sigma(u) = exp(-1/u) for u>0, extended by 0; with sigma', sigma''
inline void sigma_jet(double u, double& s, double& s1, double& s2) {
    if (u <= 0.0) {
        s = s1 = s2 = 0.0;
        return;
    }
    s = std::exp(-1.0 / u);
    s1 = s / (u * u);
    s2 = s * (1.0 / (u * u * u * u) - 2.0 / (u * u * u));
}

}  // namespace detail

// Monotone C-infinity step: 0 for u<=0, 1 for u>=1.
inline void smoothstep_jet(double u, double& th, double& th1, double& th2) {
    if (u <= 0.0) {
        th = th1 = th2 = 0.0;
        return;
    }
    if (u >= 1.0) {
        th = 1.0;
        th1 = th2 = 0.0;
        return;
    }
    double A, A1, A2, B, Bm1, B2;
    detail::sigma_jet(u, A, A1, A2);
    detail::sigma_jet(1.0 - u, B, Bm1, B2);
    const double B1 = -Bm1;
    const double S = A + B;
    th = A / S;
    th1 = (A1 * B - A * B1) / (S * S);
    th2 = ((A2 * B - A * B2) * S - 2.0 * (A1 * B - A * B1) * (A1 + B1)) / (S * S * S);
}

// theta((t + a/2)/a): 0 left of -a/2, 1 right of a/2
inline Jet2 rising_cutoff(double t, double a) {
    double th, th1, th2;
    smoothstep_jet((t + 0.5 * a) / a, th, th1, th2);
    return {th, th1 / a, th2 / (a * a)};
}

inline DiffFunction phi_minus(double a) {
    return [a](double t) -> Jet2 {
        const Jet2 r = rising_cutoff(t, a);
        return {1.0 - r.f, -r.d1, -r.d2};
    };
}

inline DiffFunction phi_plus(double a) {
    return [a](double t) -> Jet2 { return rising_cutoff(t, a); };
}

inline DiffFunction psi_minus(double a) {
    return [a](double t) -> Jet2 {
        const Jet2 r = rising_cutoff(t, a);
        const cplx g = 1.0 - r.f, g1 = -r.d1, g2 = -r.d2;
        if (std::abs(g) == 0.0 && std::abs(g1) == 0.0 && std::abs(g2) == 0.0) return {};
        const double l = std::log(a + t);
        const double l1 = 1.0 / (a + t);
        const double l2 = -l1 * l1;
        return {l * g, l1 * g + l * g1, l2 * g + 2.0 * l1 * g1 + l * g2};
    };
}

inline DiffFunction psi_plus(double a) {
    return [a](double t) -> Jet2 {
        const Jet2 g = rising_cutoff(t, a);
        if (std::abs(g.f) == 0.0 && std::abs(g.d1) == 0.0 && std::abs(g.d2) == 0.0) return {};
        const double l = std::log(a - t);
        const double l1 = -1.0 / (a - t);
        const double l2 = -l1 * l1;
        return {l * g.f, l1 * g.f + l * g.d1, l2 * g.f + 2.0 * l1 * g.d1 + l * g.d2};
    };
}

// Compactly supported bump exp(1 - 1/(1-u^2)) on |u| < 1, u = (t-center)/width.
inline DiffFunction bump(double center, double width) {
    return [center, width](double t) -> Jet2 {
        const double u = (t - center) / width;
        const double m = 1.0 - u * u;
        if (m <= 0.0) return {};
        const double q = 1.0 / m;
        const double b = std::exp(1.0 - q);
        // db/du = -2u q^2 b ; d2b/du2 = b ((2u q^2)^2 - 2 q^2 - 8 u^2 q^3)
        const double bu = -2.0 * u * q * q * b;
        const double buu = b * (4.0 * u * u * q * q * q * q - 2.0 * q * q - 8.0 * u * u * q * q * q);
        return {b, bu / width, buu / (width * width)};
    };
}

inline DiffFunction constant_fn(cplx c) {
    return [c](double) -> Jet2 { return {c, 0.0, 0.0}; };
}

inline DiffFunction scale(cplx c, DiffFunction f) {
    return [c, f = std::move(f)](double t) -> Jet2 {
        const Jet2 j = f(t);
        return {c * j.f, c * j.d1, c * j.d2};
    };
}

inline DiffFunction add(DiffFunction f, DiffFunction g) {
    return [f = std::move(f), g = std::move(g)](double t) -> Jet2 {
        const Jet2 a = f(t), b = g(t);
        return {a.f + b.f, a.d1 + b.d1, a.d2 + b.d2};
    };
}

// Apply the prolate spheroid operator L = -((1 - t^2/a^2) x')' + t^2 x
// pointwise to a twice-differentiable function.
inline cplx apply_prolate_operator(const DiffFunction& x, double t, double a,
                                   bool potential_on = true) {
    const Jet2 j = x(t);
    const double p = 1.0 - t * t / (a * a);
    const double dp = -2.0 * t / (a * a);
    cplx r = -(dp * j.d1 + p * j.d2);
    if (potential_on) r += t * t * j.f;
    return r;
}

}  // namespace prolate

#endif  // PROLATE_SMOOTH_FUNCTIONS_HPP
