#ifndef PROLATE_VERIFY_HPP
#define PROLATE_VERIFY_HPP

// Registry of named invariant checks over all modules. The CLI `verify`
// subcommand runs the registry and reports one line per check; the
// acceptance suite drives the same checks under its criteria.

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "prolate/boundary_algebra.hpp"
#include "prolate/endpoint_forms.hpp"
#include "prolate/extension_solver.hpp"
#include "prolate/fourier_commutator.hpp"
#include "prolate/io.hpp"
#include "prolate/legendre_backend.hpp"
#include "prolate/quadrature.hpp"
#include "prolate/smooth_functions.hpp"

namespace prolate {

struct CheckResult {
    std::string id;
    bool pass = false;
    double measured = 0.0;   // worst observed defect
    double tolerance = 0.0;
    std::string detail;
};

struct VerifyConfig {
    double a = 1.0;
    unsigned long long seed = 12345;
    // reduced sample counts for quick smoke runs
    bool quick = false;
};

namespace checks {

inline CheckResult result(const std::string& id, double measured, double tol,
                          const std::string& detail = "") {
    return {id, measured <= tol, measured, tol, detail};
}

// ------------------------------------------------------------ boundary alg.

inline CheckResult j_matrix_identities(const VerifyConfig&) {
    const Mat4 j = j_matrix();
    double worst = (j - j.adjoint()).max_norm();
    worst = std::max(worst, (j * j - Mat4::identity()).max_norm());
    const auto [pp, pm] = projectors();
    worst = std::max(worst, (pp * pp - pp).max_norm());
    worst = std::max(worst, (pm * pm - pm).max_norm());
    worst = std::max(worst, (pp - pp.adjoint()).max_norm());
    worst = std::max(worst, (pm - pm.adjoint()).max_norm());
    worst = std::max(worst, (pp * pm).max_norm());
    worst = std::max(worst, (pp + pm - Mat4::identity()).max_norm());
    // rank J = 4: all four eigenvalues of J^2 = I are 1
    return result("boundary-algebra/j-projector-identities", worst, 1e-14);
}

inline CheckResult subspaces_self_orthogonal(const VerifyConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    const int trials = cfg.quick ? 20 : 100;
    double worst = 0;
    for (int i = 0; i < trials; ++i) {
        const auto u = haar_random_unitary(rng);
        const auto s = subspace_from_unitary(u);
        for (int p = 0; p < 2; ++p)
            for (int q = 0; q < 2; ++q)
                worst = std::max(worst, std::abs(j_pairing(s.row(p), s.row(q))) /
                                            (s.row(p).norm() * s.row(q).norm()));
    }
    return result("boundary-algebra/subspace-self-orthogonality", worst, 1e-10);
}

inline CheckResult unitary_subspace_roundtrip(const VerifyConfig& cfg) {
    std::mt19937_64 rng(cfg.seed + 1);
    const int trials = cfg.quick ? 20 : 100;
    double worst = 0, worst_rank = 0;
    for (int i = 0; i < trials; ++i) {
        const auto u = haar_random_unitary(rng);
        const auto s = subspace_from_unitary(u);
        const auto u2 = unitary_from_subspace(s);
        worst = std::max(worst, (u.matrix() - u2.matrix()).max_norm());
        // dim S_U = 2: smallest singular value of the row pair stays healthy
        const cplx g12 = dot(s.row(0), s.row(1));
        const double n1 = s.row(0).norm(), n2 = s.row(1).norm();
        worst_rank = std::max(worst_rank, std::abs(g12) / (n1 * n2));
    }
    return result("boundary-algebra/unitary-subspace-roundtrip", worst, 1e-10,
                  "row coherence max " + std::to_string(worst_rank));
}

inline CheckResult bc_kernel_matches_subspace(const VerifyConfig& cfg) {
    std::mt19937_64 rng(cfg.seed + 2);
    double worst = 0;
    auto probe = [&](const UnitaryMatrix2& u) {
        const auto b = boundary_condition_matrix(u);
        const auto s = subspace_from_unitary(u.adjoint());
        for (int k = 0; k < 2; ++k) {
            const Vec4 q = quadruple_from_coordinates(s.row(k));
            const auto r = apply_boundary_condition(b, q);
            worst = std::max(worst, std::sqrt(std::norm(r[0]) + std::norm(r[1])) / q.norm());
        }
        const auto ker = boundary_condition_kernel(b);
        for (int k = 0; k < 2; ++k) {
            const auto r = apply_boundary_condition(b, ker[k]);
            worst = std::max(worst, std::sqrt(std::norm(r[0]) + std::norm(r[1])));
        }
    };
    probe(UnitaryMatrix2::identity());
    probe(UnitaryMatrix2::neg_identity());
    probe(UnitaryMatrix2::swap());
    const int trials = cfg.quick ? 5 : 20;
    for (int i = 0; i < trials; ++i) probe(haar_random_unitary(rng));
    return result("boundary-algebra/bc-kernel-matches-subspace", worst, 1e-9);
}

// ------------------------------------------------------------ endpoint forms

inline CheckResult concomitant_skew_hermitian(const VerifyConfig& cfg) {
    std::mt19937_64 rng(cfg.seed + 3);
    std::normal_distribution<double> nd;
    double worst = 0;
    for (int i = 0; i < 50; ++i) {
        const std::pair<cplx, cplx> x{cplx(nd(rng), nd(rng)), cplx(nd(rng), nd(rng))};
        const std::pair<cplx, cplx> y{cplx(nd(rng), nd(rng)), cplx(nd(rng), nd(rng))};
        const double t = std::tanh(nd(rng)) * cfg.a;
        const cplx defect = concomitant(x, y, t, cfg.a) + std::conj(concomitant(y, x, t, cfg.a));
        worst = std::max(worst, std::abs(defect));
    }
    return result("endpoint-forms/concomitant-skew-hermitian", worst, 1e-12);
}

inline CheckResult frobenius_ode_residual(const VerifyConfig& cfg) {
    const double a = cfg.a;
    double worst = 0;
    for (double lam : {0.0, 1.0, 10.0}) {
        for (Endpoint ep : {Endpoint::minus_a, Endpoint::plus_a}) {
            const auto [x1, x2] = frobenius_pair(lam, ep, a, 40, true);
            for (int i = 1; i <= 8; ++i) {
                const double s = 0.5 * a * i / 8.0;
                const double t = (ep == Endpoint::minus_a) ? -a + s : a - s;
                for (const auto& sol : {x1, x2}) {
                    const auto [v, d1] = eval_solution(sol, t);
                    const cplx d2 = eval_solution_d2(sol, t);
                    const double p = 1.0 - t * t / (a * a);
                    const double dp = -2.0 * t / (a * a);
                    const cplx res = -(dp * d1 + p * d2) - (lam - t * t) * v;
                    worst = std::max(worst, std::abs(res));
                }
            }
        }
    }
    return result("endpoint-forms/frobenius-ode-residual", worst, 1e-8);
}

inline CheckResult frobenius_square_integrable(const VerifyConfig& cfg) {
    const double a = cfg.a;
    double worst = 0;
    for (cplx lam : {cplx(0.0), cplx(1.0), cplx(10.0), cplx(0.0, 1.0)}) {
        const auto [x1, x2] = frobenius_pair(lam, Endpoint::minus_a, a, 40, true);
        auto l2 = [&](std::size_t levels) {
            GridFunction g = make_graded_grid(a, levels, 16);
            double s = 0;
            for (std::size_t i = 0; i < g.nodes.size(); ++i) {
                if (g.nodes[i] > -a / 2) continue;
                s += g.weights[i] * (std::norm(eval_solution(x1, g.nodes[i]).first) +
                                     std::norm(eval_solution(x2, g.nodes[i]).first));
            }
            return std::sqrt(s);
        };
        const double n1 = l2(24), n2 = l2(36);
        if (!std::isfinite(n1) || !std::isfinite(n2)) return result("endpoint-forms/solutions-square-integrable", 1.0, 1e-6);
        worst = std::max(worst, std::abs(n1 - n2) / n1);
    }
    return result("endpoint-forms/solutions-square-integrable", worst, 1e-6);
}

inline CheckResult boundary_value_paths_agree(const VerifyConfig& cfg) {
    std::mt19937_64 rng(cfg.seed + 4);
    std::normal_distribution<double> nd;
    const double a = cfg.a;
    double worst = 0;
    const int trials = cfg.quick ? 3 : 8;
    for (int i = 0; i < trials; ++i) {
        const cplx c1(nd(rng), nd(rng)), c2(nd(rng), nd(rng));
        const double lam = 0.3 + 2.0 * std::abs(nd(rng));
        const Endpoint ep = (i % 2) ? Endpoint::plus_a : Endpoint::minus_a;
        const auto [x1, x2] = frobenius_pair(lam, ep, a, 40, true);
        const auto ex = boundary_values_numeric(
            [&, &x1 = x1, &x2 = x2](double t) {
                const auto [v1, d1] = eval_solution(x1, t);
                const auto [v2, d2] = eval_solution(x2, t);
                return std::make_pair(c1 * v1 + c2 * v2, c1 * d1 + c2 * d2);
            },
            ep, a);
        const auto [b, c] = boundary_values_series(c1, c2);
        const double scale = std::abs(c1) + std::abs(c2);
        worst = std::max(worst, std::abs(ex.b - b) / scale);
        worst = std::max(worst, std::abs(ex.c - c) / scale);
    }
    return result("endpoint-forms/series-vs-numeric-boundary-values", worst, 1e-6);
}

inline CheckResult cutoff_boundary_value_matrix(const VerifyConfig& cfg) {
    const double a = cfg.a;
    const std::array<DiffFunction, 4> basis{phi_minus(a), psi_minus(a), phi_plus(a), psi_plus(a)};
    // rows: the quadruple (b-, c-, b+, c+) of each basis function
    const double expect[4][4] = {{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}};
    double worst = 0;
    for (int i = 0; i < 4; ++i) {
        const auto m = boundary_values_numeric(basis[i], Endpoint::minus_a, a);
        const auto p = boundary_values_numeric(basis[i], Endpoint::plus_a, a);
        const cplx got[4] = {m.b, m.c, p.b, p.c};
        for (int j = 0; j < 4; ++j) worst = std::max(worst, std::abs(got[j] - expect[i][j]));
    }
    return result("endpoint-forms/cutoff-boundary-value-matrix", worst, 1e-8);
}

// (a/2) Omega on the cutoff basis reproduces J, through two routes: the
// quadrature of <Mx,y> - <x,My> and the endpoint limits of the concomitant.
// The Green identity (their equality) is checked alongside.
inline CheckResult gram_matrix_reproduces_j(const VerifyConfig& cfg) {
    const double a = cfg.a;
    const std::array<DiffFunction, 4> basis{phi_minus(a), psi_minus(a), phi_plus(a), psi_plus(a)};
    const Mat4 j = j_matrix();
    const GridFunction grid = make_graded_grid(a, 30, 16);

    double worst_quad = 0, worst_limits = 0, worst_green = 0;
    for (int q = 0; q < 4; ++q) {
        for (int r = 0; r < 4; ++r) {
            const DiffFunction& x = basis[q];
            const DiffFunction& y = basis[r];
            cplx green = 0;
            for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
                const double t = grid.nodes[i];
                const cplx mx = apply_prolate_operator(x, t, a, false);
                const cplx my = apply_prolate_operator(y, t, a, false);
                green += grid.weights[i] * (mx * std::conj(y(t).f) - x(t).f * std::conj(my));
            }
            auto bracket_limit = [&](Endpoint ep) {
                std::vector<cplx> seq;
                for (int jj = 10; jj <= 40; ++jj) {
                    const double d = a * std::ldexp(1.0, -jj);
                    const double t = (ep == Endpoint::minus_a) ? -a + d : a - d;
                    const Jet2 jx = x(t), jy = y(t);
                    seq.push_back(concomitant({jx.f, jx.d1}, {jy.f, jy.d1}, t, a));
                }
                return detail::accelerate(seq, {{1, 3}, {2, 3}}).value;
            };
            const cplx bracket =
                bracket_limit(Endpoint::plus_a) - bracket_limit(Endpoint::minus_a);
            const cplx target = (2.0 / a) * j(q, r);  // Omega(b_q, b_r)
            worst_quad = std::max(worst_quad, std::abs((a / 2.0) * (green / iu - target)));
            worst_limits = std::max(worst_limits, std::abs((a / 2.0) * (bracket / iu - target)));
            worst_green = std::max(worst_green, std::abs(green - bracket));
        }
    }
    const double worst = std::max({worst_quad, worst_limits, worst_green});
    return result("endpoint-forms/gram-matrix-reproduces-j", worst, 1e-6,
                  "quad " + fmt_double(worst_quad) + ", limits " + fmt_double(worst_limits) +
                      ", green " + fmt_double(worst_green));
}

// ------------------------------------------------------------ legendre back.

inline CheckResult legendre_diagonal_exact(const VerifyConfig&) {
    double worst = 0;
    for (double a : {0.5, 1.0, 2.0}) {
        const std::size_t n = 32;
        const auto g = galerkin_matrices(n, a);
        const auto e = symmetric_eigensolve(g.m_matrix, n);
        for (std::size_t k = 0; k < n; ++k)
            worst = std::max(worst,
                             std::abs(e.eigenvalues[k] - static_cast<double>(k) * (k + 1.0) / (a * a)));
    }
    return result("legendre-backend/m-spectrum-exact", worst, 1e-10);
}

inline CheckResult galerkin_positive_definite(const VerifyConfig&) {
    double worst = -1e300;
    for (double a : {0.5, 1.0, 2.0}) {
        for (std::size_t n : {16u, 32u, 48u}) {
            const auto g = galerkin_matrices(n, a);
            std::vector<double> sum(n * n);
            for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = g.m_matrix[i] + g.q_matrix[i];
            const auto e = symmetric_eigensolve(sum, n);
            worst = std::max(worst, -e.eigenvalues[0]);
        }
    }
    return result("legendre-backend/operator-positive", worst, 0.0,
                  "negated smallest eigenvalue");
}

inline CheckResult eigenfunction_orthonormality(const VerifyConfig& cfg) {
    const auto modes = prolate_spectrum(40, cfg.a, 6);
    double worst = 0;
    for (std::size_t i = 0; i < modes.size(); ++i)
        for (std::size_t j = 0; j < modes.size(); ++j) {
            double d = 0;
            for (std::size_t k = 0; k < modes[i].eigenfunction.coeffs.size(); ++k)
                d += modes[i].eigenfunction.coeffs[k] * modes[j].eigenfunction.coeffs[k];
            worst = std::max(worst, std::abs(d - (i == j ? 1.0 : 0.0)));
        }
    return result("legendre-backend/eigenfunction-orthonormality", worst, 1e-9);
}

inline CheckResult spectrum_simple_and_positive(const VerifyConfig&) {
    double worst_gap = 1e300, worst_pos = 1e300;
    for (double a : {0.5, 1.0, 2.0}) {
        const auto modes = prolate_spectrum(48, a, 5);
        worst_pos = std::min(worst_pos, modes[0].lambda);
        for (std::size_t k = 1; k < modes.size(); ++k)
            worst_gap = std::min(worst_gap, modes[k].lambda - modes[k - 1].lambda);
    }
    const bool pass = worst_pos > 0 && worst_gap > 1e-8;
    return {"legendre-backend/spectrum-positive-simple", pass, std::min(worst_pos, worst_gap), 1e-8,
            "smallest eigenvalue/gap"};
}

inline CheckResult eigenfunctions_bounded(const VerifyConfig& cfg) {
    const auto modes = prolate_spectrum(40, cfg.a, 3);
    double worst = 0;
    for (const auto& m : modes) {
        auto sup_on = [&](std::size_t n) {
            double sup = 0;
            for (std::size_t i = 0; i <= n; ++i) {
                const double t = -cfg.a + 2.0 * cfg.a * static_cast<double>(i) / static_cast<double>(n);
                sup = std::max(sup, std::abs(m.eigenfunction.eval(t).first));
            }
            return sup;
        };
        const double s1 = sup_on(500), s2 = sup_on(1000);
        worst = std::max(worst, std::abs(s1 - s2) / s1);
    }
    return result("legendre-backend/eigenfunctions-bounded", worst, 1e-3);
}

inline CheckResult spectral_convergence(const VerifyConfig&) {
    const double a = 2.0;
    std::vector<double> errs;
    for (std::size_t n : {16u, 24u, 32u, 48u}) {
        const auto g = galerkin_matrices(n, a);
        std::vector<double> sum(n * n);
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = g.m_matrix[i] + g.q_matrix[i];
        const auto e = symmetric_eigensolve(sum, n);
        const auto g2 = galerkin_matrices(2 * n, a);
        std::vector<double> sum2(4 * n * n);
        for (std::size_t i = 0; i < sum2.size(); ++i) sum2[i] = g2.m_matrix[i] + g2.q_matrix[i];
        const auto e2 = symmetric_eigensolve(sum2, 2 * n);
        errs.push_back(std::abs(e.eigenvalues[2] - e2.eigenvalues[2]));
    }
    double worst_ratio = 0;
    for (std::size_t i = 1; i < errs.size(); ++i) {
        if (errs[i] <= 1e-13) continue;
        worst_ratio = std::max(worst_ratio, errs[i] / errs[i - 1]);
    }
    return result("legendre-backend/spectral-convergence", worst_ratio, 0.25,
                  "worst per-step error ratio");
}

// --------------------------------------------------------- extension solver

inline CheckResult wronskian_transport(const VerifyConfig& cfg) {
    double worst = 0;
    for (double lam : {0.0, 5.0, -20.0, 40.0})
        worst = std::max(worst, connection_matrix(lam, cfg.a).wronskian_residual);
    return result("extension-solver/wronskian-transport", worst, 1e-9);
}

inline CheckResult cross_method_spectrum(const VerifyConfig&) {
    double worst = 0;
    for (double a : {0.5, 1.0, 2.0}) {
        const auto modes = prolate_spectrum(64, a, 5);
        const auto roots =
            eigenvalues_scan(UnitaryMatrix2::identity(), a, 1e-9, modes[4].lambda * 1.05 + 1.0, 1e-11);
        if (roots.size() < 5)
            return {"extension-solver/cross-method-spectrum", false, 1.0, 1e-6, "missing roots"};
        for (int k = 0; k < 5; ++k)
            worst = std::max(worst,
                             std::abs(roots[k].lambda - modes[k].lambda) / std::abs(modes[k].lambda));
    }
    return result("extension-solver/cross-method-spectrum", worst, 1e-6);
}

inline CheckResult negative_eigenvalue_bound(const VerifyConfig& cfg) {
    std::mt19937_64 rng(cfg.seed + 5);
    const int trials = cfg.quick ? 10 : 50;
    const double a = cfg.a;
    int worst_count = 0, worst_mult = 0;
    for (int i = 0; i < trials; ++i) {
        const auto u = haar_random_unitary(rng);
        const auto roots = eigenvalues_scan(u, a, -100.0 / (a * a), -1e-9, 1e-9);
        int count = 0;
        for (const auto& r : roots) {
            count += r.multiplicity;
            worst_mult = std::max(worst_mult, r.multiplicity);
        }
        worst_count = std::max(worst_count, count);
    }
    const bool pass = worst_count <= 2 && worst_mult <= 2;
    return {"extension-solver/negative-count-bound", pass, static_cast<double>(worst_count), 2.0,
            "worst multiplicity " + std::to_string(worst_mult)};
}

inline CheckResult secular_reality(const VerifyConfig& cfg) {
    const auto uI = UnitaryMatrix2::identity();
    double worst = 0;
    for (double lam = 0.1; lam < 40.0; lam += 1.7) {
        const auto rep = secular_det(uI, cfg.a, lam);
        worst = std::max(worst, std::abs(rep.det_value.imag()) /
                                    std::max(std::abs(rep.det_value), 1e-30));
    }
    return result("extension-solver/secular-indicator-real", worst, 1e-10);
}

inline CheckResult domain_omega_orthogonality(const VerifyConfig& cfg) {
    std::mt19937_64 rng(cfg.seed + 6);
    const double a = cfg.a;
    double worst = 0;
    int tested = 0;
    for (int trial = 0; trial < 6 && tested < 3; ++trial) {
        const auto u = haar_random_unitary(rng);
        const auto roots = eigenvalues_scan(u, a, -30.0 / (a * a), 12.0 / (a * a) + 6.0, 1e-11);
        if (roots.size() < 2) continue;
        const auto x = eigenfunction_shoot(u, a, roots[0].lambda);
        const auto y = eigenfunction_shoot(u, a, roots[1].lambda);
        const cplx omega = omega_from_quadruples(x.boundary.quadruple(), y.boundary.quadruple(), a);
        const double scale =
            std::max(1e-6, x.boundary.quadruple().norm() * y.boundary.quadruple().norm());
        worst = std::max(worst, std::abs(omega) / scale);
        ++tested;
    }
    return result("extension-solver/domain-omega-orthogonality", worst, 1e-6,
                  std::to_string(tested) + " extensions tested");
}

inline CheckResult simplicity_with_unit_diagonal(const VerifyConfig& cfg) {
    const double a = cfg.a;
    int worst = 1;
    for (double phi : {0.9, 2.5}) {
        const auto u = make_unitary(1.0, 0.0, 0.0, std::polar(1.0, phi));
        const auto roots = eigenvalues_scan(u, a, -20.0, 20.0, 1e-10);
        for (const auto& r : roots) worst = std::max(worst, r.multiplicity);
        const auto u2 = make_unitary(std::polar(1.0, phi), 0.0, 0.0, 1.0);
        const auto roots2 = eigenvalues_scan(u2, a, -20.0, 20.0, 1e-10);
        for (const auto& r : roots2) worst = std::max(worst, r.multiplicity);
    }
    return {"extension-solver/simplicity-unit-diagonal", worst == 1, static_cast<double>(worst),
            1.0, ""};
}

// ------------------------------------------------------- fourier commutator

namespace detail_fc {

struct NamedFunction {
    DiffFunction f;
    cplx b_minus;
    cplx b_plus;
};

inline std::vector<NamedFunction> smooth_family(double a, std::mt19937_64& rng, int count) {
    std::normal_distribution<double> nd;
    std::vector<NamedFunction> fam;
    for (int i = 0; i < count; ++i) {
        const double c1 = nd(rng), c2 = nd(rng), w = 0.5 + std::abs(nd(rng)) * 2.0 / a;
        const double ctr = 0.4 * a * std::tanh(nd(rng));
        const double wid = a * (0.2 + 0.3 * std::abs(std::tanh(nd(rng))));
        DiffFunction trig = [c1, c2, w](double t) -> Jet2 {
            const double s = std::sin(w * t), c = std::cos(w * t);
            return {c1 * s + c2 * c, w * (c1 * c - c2 * s), -w * w * (c1 * s + c2 * c)};
        };
        fam.push_back({i % 2 ? add(trig, bump(ctr, wid)) : trig, 0.0, 0.0});
    }
    return fam;
}

inline std::vector<NamedFunction> log_singular_family(double a, std::mt19937_64& rng, int count) {
    std::normal_distribution<double> nd;
    std::vector<NamedFunction> fam;
    for (int i = 0; i < count; ++i) {
        const cplx gamma(nd(rng), nd(rng));
        DiffFunction x = add(psi_minus(a), scale(gamma, phi_minus(a)));
        if (i % 2) x = add(x, bump(0.3 * a * std::tanh(nd(rng)), 0.3 * a));
        fam.push_back({x, 1.0, 0.0});
    }
    return fam;
}

}  // namespace detail_fc

inline CheckResult commutator_identity_smooth(const VerifyConfig& cfg) {
    std::mt19937_64 rng(cfg.seed + 7);
    const int count = cfg.quick ? 5 : 20;
    double worst = 0;
    for (const auto& nf : detail_fc::smooth_family(cfg.a, rng, count)) {
        const auto [res, rep] = commutator_residual(nf.f, nf.b_minus, nf.b_plus, cfg.a);
        worst = std::max(worst, rep.sup_norm / std::max(1.0, rep.scale));
        (void)res;
    }
    return result("fourier-commutator/identity-smooth", worst, 1e-6);
}

inline CheckResult commutator_identity_log_singular(const VerifyConfig& cfg) {
    std::mt19937_64 rng(cfg.seed + 8);
    const int count = cfg.quick ? 3 : 10;
    double worst = 0;
    for (const auto& nf : detail_fc::log_singular_family(cfg.a, rng, count)) {
        const auto [res, rep] = commutator_residual(nf.f, nf.b_minus, nf.b_plus, cfg.a);
        worst = std::max(worst, rep.sup_norm);
        (void)res;
    }
    return result("fourier-commutator/identity-log-singular", worst, 1e-3);
}

inline CheckResult fourier_image_in_domain(const VerifyConfig& cfg) {
    const double a = cfg.a;
    double worst = 0;
    GridFunction grid = make_graded_grid(a);
    for (int which = 0; which < 3; ++which) {
        GridFunction x = grid;
        for (std::size_t i = 0; i < x.nodes.size(); ++i) {
            const double t = x.nodes[i];
            x.values[i] = which == 0   ? cplx(std::log(a + t))
                          : which == 1 ? cplx(std::exp(t))
                                       : psi_plus(a)(t).f;
        }
        const DiffFunction y = fourier_image(x);
        for (Endpoint ep : {Endpoint::minus_a, Endpoint::plus_a}) {
            const auto ex = boundary_values_numeric(y, ep, a);
            worst = std::max(worst, std::abs(ex.b));
        }
    }
    return result("fourier-commutator/image-has-zero-b-values", worst, 1e-8);
}

inline CheckResult weighted_endpoint_decay(const VerifyConfig& cfg) {
    const double a = cfg.a;
    double worst = 0;
    for (const DiffFunction& x : {psi_minus(a), psi_plus(a), phi_minus(a), phi_plus(a)}) {
        for (double ep : {-a, a}) {
            const double d = a * std::ldexp(1.0, -40);
            const double t = (ep < 0) ? -a + d : a - d;
            worst = std::max(worst, std::abs((1.0 - t * t / (a * a)) * x(t).f));
        }
    }
    return result("fourier-commutator/weighted-endpoint-decay", worst, 1e-6);
}

inline CheckResult pswf_fourier_transfer(const VerifyConfig& cfg) {
    const auto modes = prolate_spectrum(48, cfg.a, 4);
    double worst = 0, worst_gamma = 0;
    for (const auto& m : modes) {
        const auto chk = pswf_fourier_check(m, cfg.a);
        worst = std::max(worst, chk.proportionality_residual);
        worst_gamma = std::max(worst_gamma, std::abs(chk.gamma));
    }
    GridFunction grid = make_gauss_grid(cfg.a, 256);
    double worst_orth = 0;
    std::vector<GridFunction> ys;
    for (const auto& m : modes)
        ys.push_back(truncated_fourier(sample_eigenfunction(m, grid), grid));
    for (std::size_t i = 0; i < ys.size(); ++i)
        for (std::size_t j = i + 1; j < ys.size(); ++j)
            worst_orth = std::max(worst_orth, std::abs(inner_product(ys[i], ys[j])));
    const bool pass = worst <= 1e-6 && worst_gamma <= 1.0 + 1e-9 && worst_orth <= 1e-8;
    return {"fourier-commutator/pswf-fourier-transfer", pass, worst, 1e-6,
            "max |gamma| " + fmt_double(worst_gamma) + ", image cross-products " +
                fmt_double(worst_orth)};
}

inline CheckResult witness_soundness(const VerifyConfig& cfg) {
    std::mt19937_64 rng(cfg.seed + 9);
    const double a = cfg.a;
    const int trials = cfg.quick ? 5 : 20;
    double worst_margin = 1e300;
    int done = 0;
    while (done < trials) {
        const auto u = haar_random_unitary(rng);
        if (u.is_identity(1e-6)) continue;
        const auto w = noncommuting_witness(u, a);
        const double bmax = std::max(std::abs(w.quadruple[0]), std::abs(w.quadruple[2]));
        worst_margin = std::min(worst_margin, w.residual_norm - 0.1 * (2.0 / a) * bmax);
        ++done;
    }
    const bool pass = worst_margin > 0;
    return {"fourier-commutator/witness-soundness", pass, worst_margin, 0.0,
            "smallest margin over the bound"};
}

}  // namespace checks

using CheckFn = std::function<CheckResult(const VerifyConfig&)>;

struct NamedCheck {
    std::string id;
    CheckFn fn;
};

inline std::vector<NamedCheck> verification_registry() {
    using namespace checks;
    return {
        {"boundary-algebra/j-projector-identities", j_matrix_identities},
        {"boundary-algebra/subspace-self-orthogonality", subspaces_self_orthogonal},
        {"boundary-algebra/unitary-subspace-roundtrip", unitary_subspace_roundtrip},
        {"boundary-algebra/bc-kernel-matches-subspace", bc_kernel_matches_subspace},
        {"endpoint-forms/concomitant-skew-hermitian", concomitant_skew_hermitian},
        {"endpoint-forms/frobenius-ode-residual", frobenius_ode_residual},
        {"endpoint-forms/solutions-square-integrable", frobenius_square_integrable},
        {"endpoint-forms/series-vs-numeric-boundary-values", boundary_value_paths_agree},
        {"endpoint-forms/cutoff-boundary-value-matrix", cutoff_boundary_value_matrix},
        {"endpoint-forms/gram-matrix-reproduces-j", gram_matrix_reproduces_j},
        {"legendre-backend/m-spectrum-exact", legendre_diagonal_exact},
        {"legendre-backend/operator-positive", galerkin_positive_definite},
        {"legendre-backend/eigenfunction-orthonormality", eigenfunction_orthonormality},
        {"legendre-backend/spectrum-positive-simple", spectrum_simple_and_positive},
        {"legendre-backend/eigenfunctions-bounded", eigenfunctions_bounded},
        {"legendre-backend/spectral-convergence", spectral_convergence},
        {"extension-solver/wronskian-transport", wronskian_transport},
        {"extension-solver/cross-method-spectrum", cross_method_spectrum},
        {"extension-solver/negative-count-bound", negative_eigenvalue_bound},
        {"extension-solver/secular-indicator-real", secular_reality},
        {"extension-solver/domain-omega-orthogonality", domain_omega_orthogonality},
        {"extension-solver/simplicity-unit-diagonal", simplicity_with_unit_diagonal},
        {"fourier-commutator/identity-smooth", commutator_identity_smooth},
        {"fourier-commutator/identity-log-singular", commutator_identity_log_singular},
        {"fourier-commutator/image-has-zero-b-values", fourier_image_in_domain},
        {"fourier-commutator/weighted-endpoint-decay", weighted_endpoint_decay},
        {"fourier-commutator/pswf-fourier-transfer", pswf_fourier_transfer},
        {"fourier-commutator/witness-soundness", witness_soundness},
    };
}

}  // namespace prolate

#endif  // PROLATE_VERIFY_HPP
