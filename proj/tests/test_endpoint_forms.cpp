#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "prolate/endpoint_forms.hpp"
#include "prolate/quadrature.hpp"

using namespace prolate;

namespace {

// ODE residual oracle: plug the evaluated series into -(p x')' - (lambda - V) x.
double series_ode_residual(const FrobeniusSolution& sol, double t, cplx lambda) {
    const double a = sol.half_width;
    const auto [v, d1] = eval_solution(sol, t);
    const cplx d2 = eval_solution_d2(sol, t);  // second t-derivative equals the s-derivative
    const double p = 1.0 - t * t / (a * a);
    const double dp = -2.0 * t / (a * a);
    const double pot = sol.potential_on ? t * t : 0.0;
    return std::abs(-(dp * d1 + p * d2) - (lambda - pot) * v);
}

}  // namespace

TEST_CASE("frobenius pair basics") {
    CHECK_THROWS_AS(frobenius_pair(0.0, Endpoint::minus_a, 1.0, 3, false), TruncationTooShort);

    SECTION("lambda=0 without potential: regular solution is the constant 1") {
        const auto [x1, x2] = frobenius_pair(0.0, Endpoint::minus_a, 1.0, 40, false);
        CHECK(x1.analytic_coeffs[0] == cplx(1.0));
        for (std::size_t k = 1; k < x1.analytic_coeffs.size(); ++k)
            CHECK(std::abs(x1.analytic_coeffs[k]) <= 1e-15);
        CHECK(std::abs(x2.analytic_coeffs[0]) == 0.0);  // w(-a) = 0
    }

    SECTION("lambda=0 log solution matches the closed form") {
        const double a = 1.0;
        const auto [x1, x2] = frobenius_pair(0.0, Endpoint::minus_a, a, 40, false);
        const double t = -a + a / 4;
        const auto [v, d] = eval_solution(x2, t);
        const double closed = std::log(a + t) - std::log(a - t) + std::log(2 * a);
        const double closed_d = 1.0 / (a + t) + 1.0 / (a - t);
        CHECK(std::abs(v - closed) <= 1e-10);
        CHECK(std::abs(d - closed_d) <= 1e-10);
    }
}

TEST_CASE("frobenius series satisfy the differential equation") {
    const double a = 1.0;
    for (double lam : {0.0, 1.0, 3.0, 10.0}) {
        const auto [x1, x2] = frobenius_pair(lam, Endpoint::minus_a, a, 40, true);
        for (double s : {a / 64, a / 16, a / 4, a / 2}) {
            CHECK(series_ode_residual(x1, -a + s, lam) <= 1e-9 * (1.0 + lam));
            CHECK(series_ode_residual(x2, -a + s, lam) <= 1e-9 * (1.0 + lam) * std::abs(std::log(s)));
        }
        const auto [y1, y2] = frobenius_pair(lam, Endpoint::plus_a, a, 40, true);
        for (double s : {a / 64, a / 4, a / 2}) {
            CHECK(series_ode_residual(y1, a - s, lam) <= 1e-9 * (1.0 + lam));
            CHECK(series_ode_residual(y2, a - s, lam) <= 1e-9 * (1.0 + lam) * std::abs(std::log(s)));
        }
    }
}

TEST_CASE("eval_solution normalization and guard") {
    const auto [x1, x2] = frobenius_pair(2.0, Endpoint::minus_a, 1.0, 40, true);
    CHECK(eval_solution(x1, -1.0).first == cplx(1.0));  // x1(-a) = 1
    CHECK_THROWS_AS(eval_solution(x1, 0.5), OutOfRadius);

    // leading log term dominates near the endpoint
    const auto [y1m, y2m] = frobenius_pair(0.0, Endpoint::minus_a, 1.0, 40, false);
    const double t = -1.0 + 1e-6;
    const auto [v, d] = eval_solution(y2m, t);
    CHECK(std::abs(v - std::log(1e-6)) <= 1e-4 * std::abs(std::log(1e-6)));
    (void)d;
}

TEST_CASE("square integrability of both solutions near the endpoint") {
    const double a = 1.0;
    for (cplx lam : {cplx(0.0), cplx(1.0), cplx(10.0), cplx(0.0, 1.0)}) {
        const auto [x1, x2] = frobenius_pair(lam, Endpoint::minus_a, a, 40, true);
        auto norm_with = [&](std::size_t levels) {
            GridFunction g = make_graded_grid(a, levels, 16);
            double s = 0;
            for (std::size_t i = 0; i < g.nodes.size(); ++i) {
                const double t = g.nodes[i];
                if (t > -a / 2) continue;  // L2 over (-a, -a/2)
                s += g.weights[i] * (std::norm(eval_solution(x1, t).first) +
                                     std::norm(eval_solution(x2, t).first));
            }
            return std::sqrt(s);
        };
        const double n1 = norm_with(24);
        const double n2 = norm_with(36);
        CHECK(std::isfinite(n1));
        CHECK(std::abs(n1 - n2) <= 1e-6 * n1);
    }
}

TEST_CASE("series and numeric boundary values agree") {
    const double a = 1.0;
    SECTION("pure basis solutions reproduce the endpoint rows") {
        CHECK(boundary_values_series(1.0, 0.0) == std::make_pair(cplx(0.0), cplx(-1.0)));
        CHECK(boundary_values_series(0.0, 1.0) == std::make_pair(cplx(1.0), cplx(0.0)));
    }
    SECTION("random combinations against Richardson extraction") {
        std::mt19937_64 rng(17);
        std::normal_distribution<double> nd;
        for (int trial = 0; trial < 6; ++trial) {
            const cplx c1(nd(rng), nd(rng)), c2(nd(rng), nd(rng));
            const double lam = 0.5 + 2.0 * std::abs(nd(rng));
            const auto [x1, x2] = frobenius_pair(lam, Endpoint::minus_a, a, 40, true);
            const auto ex = boundary_values_numeric(
                [&](double t) {
                    const auto [v1, d1] = eval_solution(x1, t);
                    const auto [v2, d2] = eval_solution(x2, t);
                    return std::make_pair(c1 * v1 + c2 * v2, c1 * d1 + c2 * d2);
                },
                Endpoint::minus_a, a);
            const auto [b, c] = boundary_values_series(c1, c2);
            const double scale = std::abs(c1) + std::abs(c2);
            CHECK(std::abs(ex.b - b) <= 1e-6 * scale);
            CHECK(std::abs(ex.c - c) <= 1e-6 * scale);
        }
    }
    SECTION("the (2, 3i) example from the endpoint-local contract") {
        const auto [x1, x2] = frobenius_pair(1.0, Endpoint::minus_a, a, 40, true);
        const auto ex = boundary_values_numeric(
            [&](double t) {
                const auto [v1, d1] = eval_solution(x1, t);
                const auto [v2, d2] = eval_solution(x2, t);
                return std::make_pair(2.0 * v1 + cplx(0, 3) * v2, 2.0 * d1 + cplx(0, 3) * d2);
            },
            Endpoint::minus_a, a);
        CHECK(std::abs(ex.b - cplx(0, 3)) <= 1e-6);
        CHECK(std::abs(ex.c - cplx(-2, 0)) <= 1e-6);
    }
}

TEST_CASE("numeric boundary values on closed forms") {
    const double a = 1.0;
    SECTION("x = ln(a+t) has (b, c) = (1, 0) at -a") {
        const auto ex = boundary_values_numeric(
            [&](double t) { return std::make_pair(cplx(std::log(a + t)), cplx(1.0 / (a + t))); },
            Endpoint::minus_a, a);
        CHECK(std::abs(ex.b - 1.0) <= 1e-8);
        CHECK(std::abs(ex.c) <= 1e-8);
    }
    SECTION("smooth functions have b = 0 and c = -x(endpoint)") {
        const auto ex = boundary_values_numeric(
            [&](double t) { return std::make_pair(cplx(std::exp(t)), cplx(std::exp(t))); },
            Endpoint::plus_a, a);
        CHECK(std::abs(ex.b) <= 1e-10);
        CHECK(std::abs(ex.c + std::exp(a)) <= 1e-10);
    }
    SECTION("constants give (0, -1)") {
        const auto ex = boundary_values_numeric(
            [&](double t) { (void)t; return std::make_pair(cplx(1.0), cplx(0.0)); },
            Endpoint::minus_a, a);
        CHECK(std::abs(ex.b) <= 1e-12);
        CHECK(std::abs(ex.c + 1.0) <= 1e-12);
    }
}

TEST_CASE("concomitant") {
    const double a = 1.0;
    SECTION("hand value: x = 1, y = t at t = 0") {
        const cplx r = concomitant({1.0, 0.0}, {0.0, 1.0}, 0.0, a);
        CHECK(r == cplx(1.0));
    }
    SECTION("skew-hermitian in its arguments") {
        std::mt19937_64 rng(3);
        std::normal_distribution<double> nd;
        for (int i = 0; i < 30; ++i) {
            const std::pair<cplx, cplx> x{cplx(nd(rng), nd(rng)), cplx(nd(rng), nd(rng))};
            const std::pair<cplx, cplx> y{cplx(nd(rng), nd(rng)), cplx(nd(rng), nd(rng))};
            const double t = std::tanh(nd(rng)) * a;
            const cplx lhs = concomitant(x, y, t, a);
            const cplx rhs = -std::conj(concomitant(y, x, t, a));
            CHECK(std::abs(lhs - rhs) <= 1e-13 * (1.0 + std::abs(lhs)));
        }
    }
    SECTION("equal real arguments vanish") {
        const std::pair<cplx, cplx> x{0.7, -2.1};
        CHECK(std::abs(concomitant(x, x, 0.3, a)) == 0.0);
    }
}

TEST_CASE("green identity on compactly supported smooth pairs") {
    // int_alpha^beta (Mx) conj(y) - x conj(My) = [x,y](beta) - [x,y](alpha)
    const double a = 1.0;
    const DiffFunction x = bump(-0.2, 0.5);
    const DiffFunction y = bump(0.1, 0.4);
    const double alpha = -0.9, beta = 0.85;
    // composite quadrature: the bump support edges are smooth but not
    // analytic, so a single high-order panel converges poorly
    const QuadratureRule r = gauss_legendre(16);
    cplx integral = 0;
    const int panels = 64;
    for (int pnl = 0; pnl < panels; ++pnl) {
        const double lo = alpha + (beta - alpha) * pnl / panels;
        const double hi = alpha + (beta - alpha) * (pnl + 1) / panels;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
            const double t = 0.5 * (hi - lo) * r.nodes[i] + 0.5 * (lo + hi);
            const double w = 0.5 * (hi - lo) * r.weights[i];
            const cplx mx = apply_prolate_operator(x, t, a, false);
            const cplx my = apply_prolate_operator(y, t, a, false);
            integral += w * (mx * std::conj(y(t).f) - x(t).f * std::conj(my));
        }
    }
    auto bracket = [&](double t) {
        const Jet2 jx = x(t), jy = y(t);
        return concomitant({jx.f, jx.d1}, {jy.f, jy.d1}, t, a);
    };
    const cplx rhs = bracket(beta) - bracket(alpha);
    CHECK(std::abs(integral - rhs) <= 1e-8);
}
