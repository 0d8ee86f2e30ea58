#ifndef PROLATE_FOURIER_COMMUTATOR_HPP
#define PROLATE_FOURIER_COMMUTATOR_HPP

// The truncated Fourier operator on [-a,a], the commutator identity against
// the prolate spheroid operator, and the explicit non-commutation witnesses
// for every extension parameter other than the identity.
//
// With the unit-normalized kernel (2 pi)^{-1/2} e^{i t xi}, the commutator of
// the maximal operator with the truncated Fourier operator is
//   F_E (L x) - L (F_E x) = 2/(a sqrt(2 pi)) (b_a(x) e^{iat} + b_{-a}(x) e^{-iat}).
// The image of F_E is entire, so L is applied to it by differentiating the
// kernel exactly under the integral.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "prolate/boundary_algebra.hpp"
#include "prolate/endpoint_forms.hpp"
#include "prolate/errors.hpp"
#include "prolate/legendre_backend.hpp"
#include "prolate/quadrature.hpp"
#include "prolate/smooth_functions.hpp"

namespace prolate {

// Prefactor of the commutator right-hand side for the unit-normalized kernel.
inline double commutator_prefactor(double a) {
    return 2.0 / (a * std::sqrt(2.0 * std::numbers::pi));
}

// y(t) = (2 pi)^{-1/2} integral e^{i t xi} x(xi) d xi over (-a,a), evaluated
// with the stored quadrature rule of x at each requested t.
inline GridFunction truncated_fourier(const GridFunction& x, const std::vector<double>& t_grid) {
    if (!x.has_weights())
        throw GridMismatch("truncated_fourier: input grid carries no quadrature weights");
    GridFunction y;
    y.half_width = x.half_width;
    y.node_family = NodeFamily::custom;
    y.nodes = t_grid;
    y.values.resize(t_grid.size());
    const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const double t = t_grid[i];
        cplx acc = 0;
        for (std::size_t q = 0; q < x.nodes.size(); ++q) {
            const double ph = t * x.nodes[q];
            acc += x.weights[q] * cplx(std::cos(ph), std::sin(ph)) * x.values[q];
        }
        y.values[i] = norm * acc;
    }
    return y;
}

inline GridFunction truncated_fourier(const GridFunction& x, const GridFunction& t_template) {
    GridFunction y = truncated_fourier(x, t_template.nodes);
    y.weights = t_template.weights;
    y.node_family = t_template.node_family;
    return y;
}

// F_E x as an entire function with exact derivatives.
inline DiffFunction fourier_image(const GridFunction& x) {
    if (!x.has_weights())
        throw GridMismatch("fourier_image: input grid carries no quadrature weights");
    const std::vector<double> nodes = x.nodes;
    const std::vector<double> weights = x.weights;
    const std::vector<cplx> values = x.values;
    return [nodes, weights, values](double t) -> Jet2 {
        const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
        cplx y0 = 0, y1 = 0, y2 = 0;
        for (std::size_t q = 0; q < nodes.size(); ++q) {
            const double xi = nodes[q];
            const cplx e = weights[q] * cplx(std::cos(t * xi), std::sin(t * xi)) * values[q];
            y0 += e;
            y1 += iu * xi * e;
            y2 -= xi * xi * e;
        }
        return {norm * y0, norm * y1, norm * y2};
    };
}

// L applied to F_E x through the kernel: the integrand picks up the factor
// (1 - t^2/a^2) xi^2 + 2 i t xi / a^2 + t^2.
inline GridFunction prolate_of_fourier_image(const GridFunction& x,
                                             const std::vector<double>& t_grid) {
    if (!x.has_weights())
        throw GridMismatch("prolate_of_fourier_image: input grid carries no quadrature weights");
    const double a = x.half_width;
    GridFunction y;
    y.half_width = a;
    y.node_family = NodeFamily::custom;
    y.nodes = t_grid;
    y.values.resize(t_grid.size());
    const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const double t = t_grid[i];
        const double p = 1.0 - t * t / (a * a);
        cplx acc = 0;
        for (std::size_t q = 0; q < x.nodes.size(); ++q) {
            const double xi = x.nodes[q];
            const cplx kernel = cplx(p * xi * xi + t * t, 0.0) + iu * (2.0 * t * xi / (a * a));
            const double ph = t * xi;
            acc += x.weights[q] * kernel * cplx(std::cos(ph), std::sin(ph)) * x.values[q];
        }
        y.values[i] = norm * acc;
    }
    return y;
}

struct CommutatorReport {
    double sup_norm = 0.0;     // sup of |F_E(Lx) - L(F_E x) - rhs| on the grid
    double scale = 0.0;        // sup of the two operator compositions
    cplx b_minus{0.0};
    cplx b_plus{0.0};
    double prefactor = 0.0;
};

// Residual of the commutator identity for a twice-differentiable x in the
// maximal domain, with its endpoint b-values supplied by the caller.
inline std::pair<GridFunction, CommutatorReport> commutator_residual(
    const DiffFunction& x, cplx b_minus, cplx b_plus, double a,
    std::size_t out_points = 64, std::size_t graded_levels = 30) {
    GridFunction xi_grid = make_graded_grid(a, graded_levels, 16);
    GridFunction lx_grid = xi_grid;
    for (std::size_t q = 0; q < xi_grid.nodes.size(); ++q) {
        const double t = xi_grid.nodes[q];
        xi_grid.values[q] = x(t).f;
        lx_grid.values[q] = apply_prolate_operator(x, t, a);
    }

    GridFunction out_template = make_gauss_grid(a, out_points);
    GridFunction fe_lx = truncated_fourier(lx_grid, out_template.nodes);
    GridFunction l_fex = prolate_of_fourier_image(xi_grid, out_template.nodes);

    const double pref = commutator_prefactor(a);
    GridFunction residual = out_template;
    CommutatorReport rep;
    rep.b_minus = b_minus;
    rep.b_plus = b_plus;
    rep.prefactor = pref;
    for (std::size_t i = 0; i < residual.nodes.size(); ++i) {
        const double t = residual.nodes[i];
        const cplx rhs = pref * (b_plus * cplx(std::cos(a * t), std::sin(a * t)) +
                                 b_minus * cplx(std::cos(a * t), -std::sin(a * t)));
        residual.values[i] = fe_lx.values[i] - l_fex.values[i] - rhs;
        rep.sup_norm = std::max(rep.sup_norm, std::abs(residual.values[i]));
        rep.scale = std::max({rep.scale, std::abs(fe_lx.values[i]), std::abs(l_fex.values[i])});
    }
    return {residual, rep};
}

struct FourierEigenCheck {
    cplx gamma{0.0};
    double proportionality_residual = 0.0;
};

// F_E chi_k must be proportional to chi_k for simple eigenfunctions of the
// distinguished extension; returns the Rayleigh coefficient and the relative
// defect of proportionality.
inline FourierEigenCheck pswf_fourier_check(const EigenPair& chi, double a,
                                            std::size_t grid_points = 256) {
    GridFunction grid = make_gauss_grid(a, grid_points);
    GridFunction cg = sample_eigenfunction(chi, grid);
    GridFunction y = truncated_fourier(cg, grid);

    const cplx denom = inner_product(cg, cg);
    const double ynorm = y.norm_l2();
    if (std::abs(denom) < 1e-14 || !std::isfinite(ynorm))
        throw DegenerateEigenvalue("pswf_fourier_check: unstable Rayleigh quotient");
    const cplx gamma = inner_product(y, cg) / denom;

    GridFunction diff = y;
    for (std::size_t i = 0; i < diff.values.size(); ++i)
        diff.values[i] -= gamma * cg.values[i];
    if (ynorm < 1e-14)
        throw DegenerateEigenvalue("pswf_fourier_check: vanishing Fourier image");
    return {gamma, diff.norm_l2() / ynorm};
}

enum class WitnessMode { in_domain, out_of_domain };

struct Witness {
    DiffFunction x;
    Vec4 quadruple;                       // (b-, c-, b+, c+) of the witness
    WitnessMode mode = WitnessMode::in_domain;
    double residual_norm = 0.0;           // L2 norm of the commutator (in_domain)
    double violation = 0.0;               // boundary-condition defect of F_E x (out_of_domain)
    std::array<cplx, 2> bump_amplitudes{};
    std::array<cplx, 2> endpoint_values{};  // achieved (y(-a), y(a))
};

namespace detail {

inline GridFunction sample_diff_function(const DiffFunction& f, const GridFunction& grid) {
    GridFunction g = grid;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) g.values[i] = f(g.nodes[i]).f;
    return g;
}

}  // namespace detail

// Witness of non-commutation for U != I. A boundary quadruple q in
// ker B(U) with nonvanishing b-part is realized with the cutoff basis, and a
// two-bump interior correction prescribes the endpoint values of y = F_E x:
// zero for the in-domain witness (then the commutator itself equals the
// nonzero right-hand side of the identity), or a boundary-condition-violating
// pair for the out-of-domain witness.
inline Witness noncommuting_witness(const UnitaryMatrix2& u, double a,
                                    WitnessMode mode = WitnessMode::in_domain,
                                    std::size_t graded_levels = 30) {
    if (u.is_identity()) throw IsIdentity("noncommuting_witness: U = I commutes");

    const BoundaryConditionMatrix b = boundary_condition_matrix(u);
    const auto ker = boundary_condition_kernel(b);
    // maximize |q_1|^2 + |q_3|^2 (the b-components) over the kernel
    std::vector<cplx> gram = {
        ker[0][0] * std::conj(ker[0][0]) + ker[0][2] * std::conj(ker[0][2]),
        ker[0][0] * std::conj(ker[1][0]) + ker[0][2] * std::conj(ker[1][2]),
        ker[1][0] * std::conj(ker[0][0]) + ker[1][2] * std::conj(ker[0][2]),
        ker[1][0] * std::conj(ker[1][0]) + ker[1][2] * std::conj(ker[1][2])};
    const auto eg = hermitian_eigensolve(gram, 2);
    const cplx c0 = eg.eigenvectors[1][0], c1 = eg.eigenvectors[1][1];
    Vec4 q = c0 * ker[0] + c1 * ker[1];
    const double bmax = std::max(std::abs(q[0]), std::abs(q[2]));
    if (bmax < 1e-9)
        throw NumericalError("noncommuting_witness: kernel has no b-component (unexpected for U != I)");
    const cplx unit = (std::abs(q[0]) >= std::abs(q[2])) ? q[0] : q[2];
    q = (1.0 / unit) * q;  // largest b-component becomes exactly 1

    // realize the quadruple: (b-, c-, b+, c+) = (q0, q1, q2, q3)
    DiffFunction x_main = add(
        add(scale(q[0], psi_minus(a)), scale(-q[1], phi_minus(a))),
        add(scale(q[2], psi_plus(a)), scale(-q[3], phi_plus(a))));

    GridFunction xi_grid = make_graded_grid(a, graded_levels, 16);
    const GridFunction x_main_grid = detail::sample_diff_function(x_main, xi_grid);
    const DiffFunction y_main = fourier_image(x_main_grid);

    // choose targets for (y(-a), y(a))
    std::array<cplx, 2> target{0.0, 0.0};
    if (mode == WitnessMode::out_of_domain) {
        if (std::abs(1.0 - u(0, 0)) > 1e-9)
            target = {1.0, 0.0};
        else
            target = {0.0, 1.0};
    }

    // two translated bumps whose Fourier images prescribe the endpoint values
    const std::array<double, 4> center_fracs{0.5, 1.0 / 3.0, 0.4, 0.6};
    Mat2 bump_sys;
    std::array<DiffFunction, 2> bumps;
    bool solvable = false;
    for (double frac : center_fracs) {
        bumps[0] = bump(-frac * a, 0.25 * a);
        bumps[1] = bump(frac * a, 0.25 * a);
        for (int c = 0; c < 2; ++c) {
            const GridFunction bg = detail::sample_diff_function(bumps[c], xi_grid);
            const DiffFunction by = fourier_image(bg);
            bump_sys(0, c) = by(-a).f;
            bump_sys(1, c) = by(a).f;
        }
        if (std::abs(bump_sys.det()) > 1e-4 * bump_sys.max_norm() * bump_sys.max_norm()) {
            solvable = true;
            break;
        }
    }
    if (!solvable) throw NumericalError("noncommuting_witness: bump system singular for all centers");

    const auto amp = solve2(bump_sys, {target[0] - y_main(-a).f, target[1] - y_main(a).f});
    DiffFunction x = add(x_main, add(scale(amp[0], bumps[0]), scale(amp[1], bumps[1])));

    Witness w;
    w.x = x;
    w.quadruple = q;
    w.mode = mode;
    w.bump_amplitudes = {amp[0], amp[1]};

    const GridFunction x_grid = detail::sample_diff_function(x, xi_grid);
    const DiffFunction y = fourier_image(x_grid);
    w.endpoint_values = {y(-a).f, y(a).f};

    if (mode == WitnessMode::out_of_domain) {
        const cplx r1 = (1.0 - u(0, 0)) * w.endpoint_values[0] - u(0, 1) * w.endpoint_values[1];
        const cplx r2 = u(1, 0) * w.endpoint_values[0] - (1.0 - u(1, 1)) * w.endpoint_values[1];
        w.violation = std::sqrt(std::norm(r1) + std::norm(r2));
        return w;
    }

    // in-domain: the commutator itself, measured in L2
    GridFunction lx_grid = xi_grid;
    for (std::size_t i = 0; i < xi_grid.nodes.size(); ++i)
        lx_grid.values[i] = apply_prolate_operator(x, xi_grid.nodes[i], a);
    GridFunction out = make_gauss_grid(a, 64);
    const GridFunction fe_lx = truncated_fourier(lx_grid, out.nodes);
    const GridFunction l_fex = prolate_of_fourier_image(x_grid, out.nodes);
    double acc = 0.0;
    for (std::size_t i = 0; i < out.nodes.size(); ++i)
        acc += out.weights[i] * std::norm(fe_lx.values[i] - l_fex.values[i]);
    w.residual_norm = std::sqrt(acc);
    return w;
}

}  // namespace prolate

#endif  // PROLATE_FOURIER_COMMUTATOR_HPP
