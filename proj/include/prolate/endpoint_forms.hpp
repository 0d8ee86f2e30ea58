#ifndef PROLATE_ENDPOINT_FORMS_HPP
#define PROLATE_ENDPOINT_FORMS_HPP

// Frobenius fundamental systems at the regular singular endpoints -a and +a
// and the generalized boundary values
//   b(x) = lim (t -+ a) x'(t)
//   c(x) = lim (t -+ a) ln(a +- t) x'(t) - x(t)
// of functions in the maximal domain.
//
// Near either endpoint, with s the distance into the interval, the equation
// -( (1 - t^2/a^2) x' )' + [t^2] x = lambda x becomes
//   s y'' + f(s) y' + g(s) y = 0
// with f, g holomorphic on |s| < 2a, f(0) = 1. The indicial equation is
// rho^2 = 0, so the fundamental system is one analytic solution x1 with
// x1 = 1 at the endpoint and one logarithmic solution x2 = x1 ln(s) + w with
// w = 0 at the endpoint. Both endpoints produce the same recurrence because
// the coefficients are even in t.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "prolate/errors.hpp"
#include "prolate/linalg.hpp"
#include "prolate/smooth_functions.hpp"

namespace prolate {

enum class Endpoint { minus_a, plus_a };

enum class SolutionKind { regular, logarithmic };

struct FrobeniusSolution {
    Endpoint endpoint = Endpoint::minus_a;
    cplx lambda{0.0};
    double half_width = 1.0;
    SolutionKind kind = SolutionKind::regular;
    bool potential_on = true;
    std::vector<cplx> analytic_coeffs;  // x1 series, or the w series for the log kind
    std::vector<cplx> log_coeffs;       // x1 series carried by the ln factor (log kind only)
    std::size_t order = 0;
};

namespace detail {

// Coefficient series of f and g.
//   f_0 = 1, f_k = -(2a)^{-k}
//   g_k = (a/2) [ (lambda - [a^2]) (2a)^{-k} + [2a (2a)^{-(k-1)}]_{k>=1}
//                 - [(2a)^{-(k-2)}]_{k>=2} ]
// bracketed pieces only when the t^2 potential is on.
inline void frobenius_fg(cplx lambda, double a, std::size_t n, bool potential_on,
                         std::vector<double>& f, std::vector<cplx>& g) {
    f.assign(n + 2, 0.0);
    g.assign(n + 2, cplx(0.0));
    f[0] = 1.0;
    double pw = 1.0;  // (2a)^{-k}
    for (std::size_t k = 0; k <= n + 1; ++k) {
        if (k >= 1) f[k] = -pw;
        cplx val = (lambda - (potential_on ? a * a : 0.0)) * pw;
        if (potential_on && k >= 1) val += 2.0 * a * pw * (2.0 * a);
        if (potential_on && k >= 2) val -= pw * (2.0 * a) * (2.0 * a);
        g[k] = (a / 2.0) * val;
        pw /= (2.0 * a);
    }
}

}  // namespace detail

// Regular and logarithmic Frobenius solutions at one endpoint. The returned
// series are extended past n_terms until the tail is negligible at the
// evaluation radius s = a (capped at 400 terms).
inline std::pair<FrobeniusSolution, FrobeniusSolution> frobenius_pair(
    cplx lambda, Endpoint endpoint, double a, std::size_t n_terms, bool potential_on) {
    if (n_terms < 4) throw TruncationTooShort("frobenius_pair: n_terms must be >= 4");
    if (a <= 0) throw ValidationError("frobenius_pair: a must be positive");

    std::size_t n = n_terms;
    const std::size_t n_cap = 400;
    std::vector<cplx> c, d;
    for (;;) {
        std::vector<double> f;
        std::vector<cplx> g;
        detail::frobenius_fg(lambda, a, n, potential_on, f, g);

        c.assign(n + 1, cplx(0.0));
        c[0] = 1.0;
        for (std::size_t m = 1; m <= n; ++m) {
            cplx acc = 0;
            for (std::size_t k = 1; k < m; ++k) acc += f[m - k] * static_cast<double>(k) * c[k];
            for (std::size_t k = 0; k < m; ++k) acc += g[m - 1 - k] * c[k];
            c[m] = -acc / static_cast<double>(m * m);
        }

        // h = 2 x1' + (f-1)/s x1, the source term of the w recurrence
        std::vector<cplx> h(n + 1, cplx(0.0));
        for (std::size_t m = 0; m < n; ++m) {
            cplx val = 2.0 * static_cast<double>(m + 1) * c[m + 1];
            for (std::size_t k = 0; k <= m; ++k) val += f[m + 1 - k] * c[k];
            h[m] = val;
        }
        d.assign(n + 1, cplx(0.0));
        for (std::size_t m = 1; m <= n; ++m) {
            cplx acc = h[m - 1];
            for (std::size_t k = 1; k < m; ++k)
                acc += (f[m - k] * static_cast<double>(k) + g[m - 1 - k]) * d[k];
            d[m] = -acc / static_cast<double>(m * m);
        }

        // tail certificate at the guard radius
        double tail = 0.0, scale = 1.0;
        double pw = std::pow(a, static_cast<double>(n) - 4.0);
        for (std::size_t m = n - 4; m <= n; ++m) {
            tail = std::max(tail, std::max(std::abs(c[m]), std::abs(d[m])) * pw);
            pw *= a;
        }
        for (std::size_t m = 0; m <= n; ++m)
            scale = std::max(scale, std::max(std::abs(c[m]), std::abs(d[m])));
        if (tail <= 1e-16 * scale || n >= n_cap) break;
        n = std::min(n_cap, n * 2);
    }

    FrobeniusSolution x1;
    x1.endpoint = endpoint;
    x1.lambda = lambda;
    x1.half_width = a;
    x1.kind = SolutionKind::regular;
    x1.potential_on = potential_on;
    x1.analytic_coeffs = c;
    x1.order = n;

    FrobeniusSolution x2;
    x2.endpoint = endpoint;
    x2.lambda = lambda;
    x2.half_width = a;
    x2.kind = SolutionKind::logarithmic;
    x2.potential_on = potential_on;
    x2.analytic_coeffs = d;  // w series, w(endpoint) = 0
    x2.log_coeffs = c;       // x1 series multiplying ln(s)
    x2.order = n;

    return {x1, x2};
}

namespace detail {

// Evaluate sum c_k s^k and its first two s-derivatives (Horner).
inline void poly_jet(const std::vector<cplx>& c, double s, cplx& v, cplx& v1, cplx& v2) {
    v = v1 = v2 = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) {
        v2 = v2 * s + 2.0 * v1;
        v1 = v1 * s + v;
        v = v * s + c[k];
    }
}

}  // namespace detail

// Value and d/dt of a Frobenius solution at t. The evaluation guard keeps
// |t - endpoint| <= a, half the theoretical convergence radius.
inline std::pair<cplx, cplx> eval_solution(const FrobeniusSolution& sol, double t) {
    const double a = sol.half_width;
    const double s = (sol.endpoint == Endpoint::minus_a) ? (t + a) : (a - t);
    if (s < 0.0 || s > a * (1.0 + 1e-14))
        throw OutOfRadius("eval_solution: t outside the series accuracy region");
    const double dsdt = (sol.endpoint == Endpoint::minus_a) ? 1.0 : -1.0;

    cplx v, v1, v2;
    detail::poly_jet(sol.analytic_coeffs, s, v, v1, v2);
    if (sol.kind == SolutionKind::regular) {
        return {v, dsdt * v1};
    }
    if (s == 0.0) throw OutOfRadius("eval_solution: logarithmic solution at its endpoint");
    cplx y1, y1p, y1pp;
    detail::poly_jet(sol.log_coeffs, s, y1, y1p, y1pp);
    const double ln = std::log(s);
    const cplx val = y1 * ln + v;
    const cplx der = y1p * ln + y1 / s + v1;
    return {val, dsdt * der};
}

// Second t-derivative, used by the series-residual oracle in the tests.
inline cplx eval_solution_d2(const FrobeniusSolution& sol, double t) {
    const double a = sol.half_width;
    const double s = (sol.endpoint == Endpoint::minus_a) ? (t + a) : (a - t);
    if (s < 0.0 || s > a * (1.0 + 1e-14))
        throw OutOfRadius("eval_solution_d2: t outside the series accuracy region");
    cplx v, v1, v2;
    detail::poly_jet(sol.analytic_coeffs, s, v, v1, v2);
    if (sol.kind == SolutionKind::regular) return v2;
    if (s == 0.0) throw OutOfRadius("eval_solution_d2: logarithmic solution at its endpoint");
    cplx y1, y1p, y1pp;
    detail::poly_jet(sol.log_coeffs, s, y1, y1p, y1pp);
    const double ln = std::log(s);
    return y1pp * ln + 2.0 * y1p / s - y1 / (s * s) + v2;
}

// Generalized boundary values.
struct BoundaryValues {
    cplx b_minus{0.0};
    cplx c_minus{0.0};
    cplx b_plus{0.0};
    cplx c_plus{0.0};

    Vec4 quadruple() const {
        Vec4 q;
        q[0] = b_minus;
        q[1] = c_minus;
        q[2] = b_plus;
        q[3] = c_plus;
        return q;
    }
};

// Endpoint-local boundary values of x = c1 x1 + c2 x2 in the Frobenius pair
// of that endpoint. At both endpoints (b, c) = (c2, -c1): the log solution
// carries the b-value, the regular solution the (negated) c-value.
inline std::pair<cplx, cplx> boundary_values_series(cplx c1, cplx c2) {
    return {c2, -c1};
}

// Bilinear concomitant [x,y](t) = -(1 - t^2/a^2)(x'(t) conj(y(t)) - x(t) conj(y'(t))).
inline cplx concomitant(const std::pair<cplx, cplx>& x_pair, const std::pair<cplx, cplx>& y_pair,
                        double t, double a) {
    const double p = 1.0 - t * t / (a * a);
    return -p * (x_pair.second * std::conj(y_pair.first) - x_pair.first * std::conj(y_pair.second));
}

// ------------------------------------------------------- numeric extraction

namespace detail {

// Repeated ratio-2 elimination: each stage with exponent p removes a d^p
// term; applied `mult` times it also clears d^p ln^k d for k < mult.
inline std::vector<cplx> eliminate(std::vector<cplx> x, int p, int mult) {
    const double w = std::ldexp(1.0, p);  // 2^p
    for (int r = 0; r < mult; ++r) {
        if (x.size() < 2) break;
        std::vector<cplx> y(x.size() - 1);
        for (std::size_t j = 0; j + 1 < x.size(); ++j) y[j] = (w * x[j + 1] - x[j]) / (w - 1.0);
        x = std::move(y);
    }
    return x;
}

struct Extrapolated {
    cplx value{0.0};
    double error{0.0};
};

inline Extrapolated accelerate(const std::vector<cplx>& seq,
                               const std::vector<std::pair<int, int>>& schedule) {
    std::vector<cplx> x = seq;
    for (const auto& [p, mult] : schedule) x = eliminate(std::move(x), p, mult);
    if (x.empty()) throw NoConvergence("accelerate: sequence exhausted");
    Extrapolated out;
    out.value = x.back();
    out.error = (x.size() >= 2) ? std::abs(x.back() - x[x.size() - 2])
                                : std::abs(out.value);
    return out;
}

}  // namespace detail

struct BoundaryExtraction {
    cplx b{0.0};
    cplx c{0.0};
    double b_error{0.0};
    double c_error{0.0};
};

// Extract (b, c) at one endpoint from a callable giving (value, derivative).
// Samples at distances d_j = a 2^{-j}, j in [j_lo, j_hi], then eliminates the
// d ln d / d ln^2 d expansion tails. NoConvergence when the accelerated
// sequences disagree beyond 1e-5 relative.
inline BoundaryExtraction boundary_values_numeric(
    const std::function<std::pair<cplx, cplx>(double)>& x, Endpoint endpoint, double a,
    int j_lo = 10, int j_hi = 40) {
    if (a <= 0) throw ValidationError("boundary_values_numeric: a must be positive");
    if (j_hi - j_lo < 8) throw ValidationError("boundary_values_numeric: approach range too short");
    std::vector<cplx> bs, cs;
    double value_scale = 0.0;
    for (int j = j_lo; j <= j_hi; ++j) {
        const double dj = a * std::ldexp(1.0, -j);
        const double t = (endpoint == Endpoint::minus_a) ? (-a + dj) : (a - dj);
        const auto [val, der] = x(t);
        const double sgn = (endpoint == Endpoint::minus_a) ? 1.0 : -1.0;
        // at +a the factor (t-a) = -dj
        bs.push_back(sgn * dj * der);
        cs.push_back(sgn * dj * std::log(dj) * der - val);
        value_scale = std::max(value_scale, std::abs(val));
    }
    const auto be = detail::accelerate(bs, {{1, 2}, {2, 2}, {3, 2}});
    const auto ce = detail::accelerate(cs, {{1, 3}, {2, 3}, {3, 3}});

    const double scale = std::max({std::abs(be.value), std::abs(ce.value), value_scale, 1e-30});
    if (be.error > 1e-5 * scale || ce.error > 1e-5 * scale)
        throw NoConvergence("boundary_values_numeric: extrapolants do not stabilize");
    return {be.value, ce.value, be.error, ce.error};
}

// Convenience overload for twice-differentiable test functions.
inline BoundaryExtraction boundary_values_numeric(const DiffFunction& f, Endpoint endpoint,
                                                  double a, int j_lo = 10, int j_hi = 40) {
    return boundary_values_numeric(
        [&f](double t) {
            const Jet2 j = f(t);
            return std::make_pair(j.f, j.d1);
        },
        endpoint, a, j_lo, j_hi);
}

// Full quadruple of a twice-differentiable function.
inline BoundaryValues boundary_values_of(const DiffFunction& f, double a) {
    const auto m = boundary_values_numeric(f, Endpoint::minus_a, a);
    const auto p = boundary_values_numeric(f, Endpoint::plus_a, a);
    return {m.b, m.c, p.b, p.c};
}

// Extraction from sampled values only (no derivatives): near the endpoint a
// maximal-domain function is b ln(d) - c + smooth corrections, so b and c
// come out of a least-squares fit of the local model
//   x = beta0 + beta1 ln d + beta2 d + beta3 d ln d + beta4 d^2 + beta5 d^2 ln d
// with (b, c) = (beta1, -beta0). Differentiating interpolants instead is
// hopeless here: on a geometric grid the relative derivative error of a
// spline through ln-type data does not decay.
inline BoundaryExtraction boundary_values_from_samples(const std::vector<double>& t,
                                                       const std::vector<cplx>& x, Endpoint ep,
                                                       double a) {
    if (t.size() != x.size()) throw ValidationError("boundary_values_from_samples: size mismatch");
    std::vector<double> d;
    std::vector<cplx> v;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double di = (ep == Endpoint::minus_a) ? (t[i] + a) : (a - t[i]);
        if (di <= a * std::ldexp(1.0, -40) || di > 0.25 * a) continue;
        d.push_back(di);
        v.push_back(x[i]);
    }
    if (d.size() < 10)
        throw ValidationError(
            "boundary_values_from_samples: need at least 10 samples with distance <= a/4 "
            "of the endpoint");

    auto fit = [&](double window) -> std::pair<cplx, cplx> {
        constexpr std::size_t m = 6;
        std::vector<cplx> ata(m * m, cplx(0.0)), atb(m, cplx(0.0));
        std::array<double, m> col_scale{};
        std::size_t used = 0;
        auto basis = [&](double di, std::array<double, m>& row) {
            const double l = std::log(di);
            row = {1.0, l, di, di * l, di * di, di * di * l};
        };
        std::array<double, m> row{};
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (d[i] > window) continue;
            basis(d[i], row);
            for (std::size_t j = 0; j < m; ++j)
                col_scale[j] = std::max(col_scale[j], std::abs(row[j]));
            ++used;
        }
        if (used < 8) throw ValidationError("boundary_values_from_samples: window too small");
        for (std::size_t j = 0; j < m; ++j) col_scale[j] = std::max(col_scale[j], 1e-300);
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (d[i] > window) continue;
            basis(d[i], row);
            for (std::size_t j = 0; j < m; ++j) row[j] /= col_scale[j];
            for (std::size_t j = 0; j < m; ++j) {
                for (std::size_t k = 0; k < m; ++k) ata[j * m + k] += row[j] * row[k];
                atb[j] += row[j] * v[i];
            }
        }
        const auto beta = solve_dense(ata, atb, m);
        const cplx b = beta[1] / col_scale[1];
        const cplx c = -beta[0] / col_scale[0];
        return {b, c};
    };

    const auto full = fit(0.25 * a);
    const auto half = fit(0.0625 * a);
    BoundaryExtraction out;
    out.b = half.first;
    out.c = half.second;
    out.b_error = std::abs(full.first - half.first);
    out.c_error = std::abs(full.second - half.second);
    const double scale = std::max({std::abs(out.b), std::abs(out.c), 1e-30});
    if (out.b_error > 1e-2 * scale || out.c_error > 1e-2 * scale)
        throw NoConvergence("boundary_values_from_samples: window fits disagree");
    return out;
}

}  // namespace prolate

#endif  // PROLATE_ENDPOINT_FORMS_HPP
