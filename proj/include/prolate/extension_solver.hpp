#ifndef PROLATE_EXTENSION_SOLVER_HPP
#define PROLATE_EXTENSION_SOLVER_HPP

// Spectra of arbitrary self-adjoint extensions by shooting: Frobenius series
// supply exact boundary data at the singular endpoints, an adaptive march
// connects the endpoint accuracy regions through the regular interior, and
// eigenvalues are roots of the 2x2 secular determinant obtained by imposing
// the boundary conditions B(U) on the general solution.
//
// The general solution is x = alpha x1- + beta x2-. Its quadruple of
// generalized boundary values is
//   (b_-, c_-) = (beta, -alpha),  (b_+, c_+) = (c2+, -c1+)
// where (c1+, c2+) = (alpha, beta) T(lambda) are the coefficients in the
// +a fundamental pair after the march.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "prolate/boundary_algebra.hpp"
#include "prolate/endpoint_forms.hpp"
#include "prolate/errors.hpp"
#include "prolate/linalg.hpp"
#include "prolate/ode.hpp"
#include "prolate/quadrature.hpp"

namespace prolate {

// Handoff radius between the endpoint series and the interior march.
inline constexpr double kHandoffFraction = 0.25;

struct ConnectionMatrix {
    Mat2 t;  // rows express (x1-, x2-) in the +a pair (x1+, x2+)
    double lambda = 0.0;
    double half_width = 1.0;
    bool potential_on = true;
    std::size_t steps = 0;
    double wronskian_residual = 0.0;
};

namespace detail {

inline OdeRhs<4> interior_rhs(double lambda, double a, bool potential_on) {
    return [lambda, a, potential_on](double t, const OdeState<4>& y) -> OdeState<4> {
        const double p = 1.0 - t * t / (a * a);
        const double dp = -2.0 * t / (a * a);
        const double v = potential_on ? t * t : 0.0;
        return {y[1], (-dp * y[1] - (lambda - v) * y[0]) / p,
                y[3], (-dp * y[3] - (lambda - v) * y[2]) / p};
    };
}

inline double real_wronskian(const OdeState<4>& y, double t, double a) {
    const double p = 1.0 - t * t / (a * a);
    return p * (y[0] * y[3] - y[1] * y[2]);
}

}  // namespace detail

inline ConnectionMatrix connection_matrix(double lambda, double a, bool potential_on = true) {
    if (!std::isfinite(lambda)) throw ValidationError("connection_matrix: lambda must be finite");
    if (a <= 0) throw ValidationError("connection_matrix: a must be positive");

    const auto [x1m, x2m] = frobenius_pair(lambda, Endpoint::minus_a, a, 40, potential_on);
    const auto [x1p, x2p] = frobenius_pair(lambda, Endpoint::plus_a, a, 40, potential_on);

    const double t_lo = -a + kHandoffFraction * a;
    const double t_hi = a - kHandoffFraction * a;

    const auto [v1, d1] = eval_solution(x1m, t_lo);
    const auto [v2, d2] = eval_solution(x2m, t_lo);
    OdeState<4> y{v1.real(), d1.real(), v2.real(), d2.real()};

    const double w0 = detail::real_wronskian(y, t_lo, a);
    const double scale0 = std::abs(y[0] * y[3]) + std::abs(y[1] * y[2]);
    OdeStats stats;
    y = integrate_dopri5<4>(detail::interior_rhs(lambda, a, potential_on), t_lo, t_hi, y,
                            1e-12, 1e-14, &stats);
    const double w1 = detail::real_wronskian(y, t_hi, a);
    const double scale1 = std::abs(y[0] * y[3]) + std::abs(y[1] * y[2]);

    const auto [p1, q1] = eval_solution(x1p, t_hi);
    const auto [p2, q2] = eval_solution(x2p, t_hi);
    Mat2 match;
    match(0, 0) = p1;
    match(0, 1) = p2;
    match(1, 0) = q1;
    match(1, 1) = q2;
    // analytically det = -2/(a p(t)); a vanishing value signals a series bug
    if (std::abs(match.det()) < 1e-8)
        throw MatchSingular("connection_matrix: +a fundamental pair is numerically degenerate");

    const auto c1 = solve2(match, {cplx(y[0]), cplx(y[1])});
    const auto c2 = solve2(match, {cplx(y[2]), cplx(y[3])});

    ConnectionMatrix cm;
    cm.t(0, 0) = c1[0];
    cm.t(0, 1) = c1[1];
    cm.t(1, 0) = c2[0];
    cm.t(1, 1) = c2[1];
    cm.lambda = lambda;
    cm.half_width = a;
    cm.potential_on = potential_on;
    cm.steps = stats.steps;
    // conservation measured against the size of the products forming the
    // wronskian; for growing solutions the difference cancels catastrophically
    // against |W| itself
    cm.wronskian_residual =
        std::abs(w1 - w0) / std::max({std::abs(w0), scale0, scale1, 1e-300});
    return cm;
}

struct SecularReport {
    double lambda = 0.0;
    cplx det_value{0.0};  // det of the secular system over the growth scale
    double condition = 0.0;
    Mat2 system;          // columns (alpha, beta)
    double growth_scale = 1.0;
};

inline SecularReport secular_from_connection(const UnitaryMatrix2& u, const ConnectionMatrix& cm) {
    const BoundaryConditionMatrix b = boundary_condition_matrix(u);
    const Mat2& t = cm.t;
    Mat2 s;
    for (int r = 0; r < 2; ++r) {
        s(r, 0) = -b.rows[r][1] + b.rows[r][2] * t(0, 1) - b.rows[r][3] * t(0, 0);
        s(r, 1) = b.rows[r][0] + b.rows[r][2] * t(1, 1) - b.rows[r][3] * t(1, 0);
    }
    SecularReport rep;
    rep.lambda = cm.lambda;
    rep.system = s;
    rep.growth_scale = 1.0 + t.frob_norm() * t.frob_norm();
    rep.det_value = s.det() / rep.growth_scale;
    const auto sv = singular_values2(s);
    rep.condition = sv[0] / std::max(sv[1], 1e-300);
    return rep;
}

inline SecularReport secular_det(const UnitaryMatrix2& u, double a, double lambda,
                                 bool potential_on = true) {
    return secular_from_connection(u, connection_matrix(lambda, a, potential_on));
}

struct ScanRoot {
    double lambda = 0.0;
    int multiplicity = 1;
    double det_residual = 0.0;      // |normalized det| at the root
    double boundary_residual = 0.0; // |B(U) q| of the shot null vector
};

namespace detail {

// Secular samples share the per-lambda connection across refinements.
struct SecularSampler {
    const UnitaryMatrix2& u;
    double a;
    bool potential_on;
    cplx operator()(double lambda) const {
        return secular_det(u, a, lambda, potential_on).det_value;
    }
};

inline double rotated_real(cplx z, cplx dir) { return (std::conj(dir) * z).real(); }

// Brent-style root refinement on the rotated real part; falls back to
// golden-section minimization of |d| when the bracket has no sign change.
inline double refine_root(const SecularSampler& f, double lo, double hi, cplx d_lo, cplx d_hi,
                          double tol) {
    cplx dir = d_hi - d_lo;
    const double dn = std::abs(dir);
    if (dn > 0) dir /= dn;
    double g_lo = rotated_real(d_lo, dir), g_hi = rotated_real(d_hi, dir);
    if (g_lo == 0.0) return lo;
    if (g_hi == 0.0) return hi;
    if (g_lo * g_hi < 0.0) {
        // secant steps interleaved with forced bisection; plain regula falsi
        // stagnates on one endpoint when the samples are very asymmetric
        double x0 = lo, x1 = hi, f0 = g_lo, f1 = g_hi;
        for (int it = 0; it < 200 && (x1 - x0) > tol; ++it) {
            double xm = 0.5 * (x0 + x1);
            if (it % 2 == 0 && std::abs(f1 - f0) > 1e-300) {
                const double xs = x1 - f1 * (x1 - x0) / (f1 - f0);
                const double guard = 0.01 * (x1 - x0);
                if (xs > x0 + guard && xs < x1 - guard) xm = xs;
            }
            const double fm = rotated_real(f(xm), dir);
            if (fm == 0.0) return xm;
            if (f0 * fm < 0.0) {
                x1 = xm;
                f1 = fm;
            } else {
                x0 = xm;
                f0 = fm;
            }
        }
        return 0.5 * (x0 + x1);
    }
    // golden-section on |d|
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x0 = lo, x3 = hi;
    double x1 = x3 - gr * (x3 - x0), x2 = x0 + gr * (x3 - x0);
    double m1 = std::abs(f(x1)), m2 = std::abs(f(x2));
    for (int it = 0; it < 300 && (x3 - x0) > tol; ++it) {
        if (m1 <= m2) {
            x3 = x2;
            x2 = x1;
            m2 = m1;
            x1 = x3 - gr * (x3 - x0);
            m1 = std::abs(f(x1));
        } else {
            x0 = x1;
            x1 = x2;
            m1 = m2;
            x2 = x0 + gr * (x3 - x0);
            m2 = std::abs(f(x2));
        }
    }
    return 0.5 * (x0 + x3);
}

}  // namespace detail

// Bracket and refine real eigenvalues of L_U in [lambda_min, lambda_max].
// Candidates are local minima of |normalized det| on the scan grid; a refined
// minimum is accepted as an eigenvalue when the determinant drops at least
// six orders below its bracket scale. Double roots are certified by the rank
// of the secular system.
inline std::vector<ScanRoot> eigenvalues_scan(const UnitaryMatrix2& u, double a,
                                              double lambda_min, double lambda_max, double tol,
                                              std::size_t n_cells = 400,
                                              bool potential_on = true) {
    if (!(lambda_min < lambda_max)) throw ValidationError("eigenvalues_scan: empty range");
    if (!(tol > 0)) throw ValidationError("eigenvalues_scan: tol must be positive");
    if (n_cells < 8) throw ValidationError("eigenvalues_scan: grid too small");

    const detail::SecularSampler f{u, a, potential_on};
    const std::size_t n = n_cells + 1;
    std::vector<double> grid(n);
    std::vector<cplx> d(n);
    std::vector<double> m(n);
    for (std::size_t i = 0; i < n; ++i) {
        grid[i] = lambda_min + (lambda_max - lambda_min) * static_cast<double>(i) /
                                   static_cast<double>(n_cells);
        d[i] = f(grid[i]);
        m[i] = std::abs(d[i]);
    }

    // candidate brackets: directional zero crossings within a cell, interior
    // minima of |d| (double roots touch without crossing), endpoint minima
    struct Bracket {
        std::size_t lo, hi;
    };
    std::vector<Bracket> cands;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const cplx u_dir = d[i + 1] - d[i];
        if (std::abs(u_dir) == 0.0) continue;
        const double g0 = detail::rotated_real(d[i], u_dir);
        const double g1 = detail::rotated_real(d[i + 1], u_dir);
        if (g0 <= 0.0 && g1 >= 0.0) cands.push_back({i, i + 1});
    }
    for (std::size_t i = 1; i + 1 < n; ++i)
        if (m[i] <= m[i - 1] && m[i] <= m[i + 1]) cands.push_back({i - 1, i + 1});
    if (n >= 2 && m[0] < m[1]) cands.push_back({0, 1});
    if (n >= 2 && m[n - 1] < m[n - 2]) cands.push_back({n - 2, n - 1});

    std::vector<ScanRoot> roots;
    const double cell = (lambda_max - lambda_min) / static_cast<double>(n_cells);
    for (const auto& br : cands) {
        const double bracket_scale = std::max(m[br.lo], m[br.hi]);
        if (bracket_scale <= 0) continue;
        const double lam = detail::refine_root(f, grid[br.lo], grid[br.hi], d[br.lo], d[br.hi], tol);
        const SecularReport rep = secular_det(u, a, lam, potential_on);
        const double dv = std::abs(rep.det_value);
        if (dv > 1e-6 * bracket_scale) continue;  // avoided crossing, not a root

        ScanRoot root;
        root.lambda = lam;
        root.det_residual = dv;
        // multiplicity: both singular values of the secular system vanish at
        // a double root; compare against the B,T scales.
        const auto sv = singular_values2(rep.system);
        const double s_scale = std::sqrt(rep.growth_scale) * 4.0;
        root.multiplicity = (sv[0] <= 1e-6 * s_scale) ? 2 : 1;
        root.boundary_residual = sv[1] / std::max(s_scale, 1e-300);
        roots.push_back(root);
    }

    std::sort(roots.begin(), roots.end(),
              [](const ScanRoot& x, const ScanRoot& y) { return x.lambda < y.lambda; });
    std::vector<ScanRoot> unique;
    for (const auto& r : roots) {
        if (!unique.empty()) {
            const double gap = r.lambda - unique.back().lambda;
            const double same_tol = std::max(16.0 * tol, 1e-9 * std::max(1.0, std::abs(r.lambda)));
            if (gap <= same_tol) {
                if (r.det_residual < unique.back().det_residual) unique.back() = r;
                continue;
            }
            if (gap < 2.0 * cell)
                throw ScanTooCoarse("eigenvalues_scan: two roots within two grid cells");
        }
        unique.push_back(r);
    }
    return unique;
}

inline std::vector<double> to_eigenvalue_list(const std::vector<ScanRoot>& roots) {
    std::vector<double> out;
    for (const auto& r : roots)
        for (int k = 0; k < r.multiplicity; ++k) out.push_back(r.lambda);
    return out;
}

// Eigenfunction of a converged eigenvalue, sampled on the graded quadrature
// grid with unit L2 norm. The global phase is fixed so that the first sample
// of appreciable size is positive real.
struct ShootResult {
    GridFunction function;
    cplx alpha{0.0};
    cplx beta{0.0};
    cplx c1_plus{0.0};
    cplx c2_plus{0.0};
    BoundaryValues boundary;
};

inline ShootResult eigenfunction_shoot(const UnitaryMatrix2& u, double a, double lambda,
                                       bool potential_on = true,
                                       std::size_t graded_levels = 30,
                                       std::size_t panel_order = 16) {
    const ConnectionMatrix cm = connection_matrix(lambda, a, potential_on);
    const SecularReport rep = secular_from_connection(u, cm);
    const auto sv = singular_values2(rep.system);
    const double s_scale = std::sqrt(rep.growth_scale) * 4.0;
    if (sv[1] > 1e-5 * s_scale)
        throw NotAnEigenvalue("eigenfunction_shoot: secular system has no null vector here");

    const auto ab = null_vector2(rep.system);
    const cplx alpha = ab[0], beta = ab[1];
    const cplx c1p = alpha * cm.t(0, 0) + beta * cm.t(1, 0);
    const cplx c2p = alpha * cm.t(0, 1) + beta * cm.t(1, 1);

    const auto [x1m, x2m] = frobenius_pair(lambda, Endpoint::minus_a, a, 40, potential_on);
    const auto [x1p, x2p] = frobenius_pair(lambda, Endpoint::plus_a, a, 40, potential_on);

    GridFunction g = make_graded_grid(a, graded_levels, panel_order);
    const double t_lo = -a + kHandoffFraction * a;
    const double t_hi = a - kHandoffFraction * a;

    std::vector<double> interior;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const double t = g.nodes[i];
        if (t < t_lo) {
            g.values[i] = alpha * eval_solution(x1m, t).first + beta * eval_solution(x2m, t).first;
        } else if (t > t_hi) {
            g.values[i] = c1p * eval_solution(x1p, t).first + c2p * eval_solution(x2p, t).first;
        } else {
            interior.push_back(t);
        }
    }

    if (!interior.empty()) {
        const auto [v1, d1] = eval_solution(x1m, t_lo);
        const auto [v2, d2] = eval_solution(x2m, t_lo);
        const cplx x0 = alpha * v1 + beta * v2;
        const cplx u0 = alpha * d1 + beta * d2;
        OdeState<4> y{x0.real(), u0.real(), x0.imag(), u0.imag()};
        const OdeRhs<4> rhs = [lambda, a, potential_on](double t, const OdeState<4>& s) -> OdeState<4> {
            const double p = 1.0 - t * t / (a * a);
            const double dp = -2.0 * t / (a * a);
            const double v = potential_on ? t * t : 0.0;
            return {s[1], (-dp * s[1] - (lambda - v) * s[0]) / p,
                    s[3], (-dp * s[3] - (lambda - v) * s[2]) / p};
        };
        std::size_t cursor = 0;
        std::vector<std::size_t> node_of;
        for (std::size_t i = 0; i < g.nodes.size(); ++i)
            if (g.nodes[i] >= t_lo && g.nodes[i] <= t_hi) node_of.push_back(i);
        integrate_with_stops<4>(rhs, t_lo, t_hi, y, interior,
                                [&](double t, const OdeState<4>& s) {
                                    if (cursor < node_of.size() &&
                                        std::abs(g.nodes[node_of[cursor]] - t) < 1e-12) {
                                        g.values[node_of[cursor]] = cplx(s[0], s[2]);
                                        ++cursor;
                                    }
                                });
    }

    const double nrm = g.norm_l2();
    if (nrm <= 0) throw NotAnEigenvalue("eigenfunction_shoot: null eigenfunction");
    double best = 0.0;
    cplx lead{1.0};
    for (const auto& v : g.values)
        if (std::abs(v) > best) {
            best = std::abs(v);
            lead = v;
        }
    const cplx phase = std::conj(lead) / std::abs(lead);
    for (auto& v : g.values) v = v * phase / nrm;
    for (const auto& v : g.values) {
        if (std::abs(v) > 1e-8 * best / nrm) {
            if (v.real() < 0)
                for (auto& w : g.values) w = -w;
            break;
        }
    }

    ShootResult out;
    out.function = std::move(g);
    out.alpha = alpha * phase / nrm;
    out.beta = beta * phase / nrm;
    out.c1_plus = c1p * phase / nrm;
    out.c2_plus = c2p * phase / nrm;
    const auto [bm, cmv] = boundary_values_series(out.alpha, out.beta);
    const auto [bp, cpv] = boundary_values_series(out.c1_plus, out.c2_plus);
    out.boundary = {bm, cmv, bp, cpv};
    return out;
}

}  // namespace prolate

#endif  // PROLATE_EXTENSION_SOLVER_HPP
