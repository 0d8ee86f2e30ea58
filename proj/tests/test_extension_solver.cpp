#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "prolate/extension_solver.hpp"
#include "prolate/legendre_backend.hpp"

using namespace prolate;

TEST_CASE("connection matrix basics") {
    SECTION("constants are global solutions when the potential is off") {
        const auto cm = connection_matrix(0.0, 1.0, false);
        CHECK(std::abs(cm.t(0, 0) - 1.0) <= 1e-10);
        CHECK(std::abs(cm.t(0, 1)) <= 1e-10);
    }
    SECTION("wronskian transport along the march") {
        for (double lam : {0.0, 5.0, -20.0}) {
            const auto cm = connection_matrix(lam, 1.0);
            CHECK(cm.wronskian_residual <= 1e-9);
        }
    }
    SECTION("determinant of T stays away from zero") {
        for (double lam : {0.0, 1.0, 12.0, -3.0}) {
            const auto cm = connection_matrix(lam, 1.0);
            CHECK(std::abs(cm.t.det()) > 1e-8);
        }
    }
}

TEST_CASE("secular determinant at the distinguished extension") {
    const double a = 1.0;
    const auto uI = UnitaryMatrix2::identity();
    const auto modes = prolate_spectrum(48, a, 3);

    SECTION("vanishes at Galerkin eigenvalues") {
        for (const auto& m : modes) {
            const auto rep = secular_det(uI, a, m.lambda);
            // compare against the local scale one cell away
            const auto ref = secular_det(uI, a, m.lambda + 0.05);
            CHECK(std::abs(rep.det_value) <= 1e-6 * std::abs(ref.det_value));
        }
    }
    SECTION("bounded away from zero between eigenvalues, real part changes sign") {
        const double mid = 0.5 * (modes[0].lambda + modes[1].lambda);
        const auto rep_mid = secular_det(uI, a, mid);
        CHECK(std::abs(rep_mid.det_value) > 1e-4);
        const auto lo = secular_det(uI, a, modes[0].lambda - 0.05);
        const auto hi = secular_det(uI, a, modes[0].lambda + 0.05);
        CHECK(lo.det_value.real() * hi.det_value.real() < 0.0);
    }
    SECTION("finite and continuous on a coarse sweep") {
        cplx prev = 0;
        bool first = true;
        for (double lam = 0.0; lam <= 100.0; lam += 2.0) {
            const auto rep = secular_det(uI, a, lam);
            CHECK(std::isfinite(std::abs(rep.det_value)));
            if (!first) CHECK(std::abs(rep.det_value - prev) < 10.0);
            prev = rep.det_value;
            first = false;
        }
    }
}

TEST_CASE("eigenvalue scan matches the Galerkin spectrum for U = I") {
    for (double a : {0.5, 1.0, 2.0}) {
        const auto modes = prolate_spectrum(64, a, 5);
        const double hi = modes[4].lambda * 1.05 + 1.0;
        const auto roots = eigenvalues_scan(UnitaryMatrix2::identity(), a, 1e-9, hi, 1e-11);
        REQUIRE(roots.size() >= 5);
        for (int k = 0; k < 5; ++k) {
            CHECK(roots[k].multiplicity == 1);
            CHECK(std::abs(roots[k].lambda - modes[k].lambda) <=
                  1e-6 * std::abs(modes[k].lambda));
        }
    }
}

TEST_CASE("empty range returns no eigenvalues") {
    // (0, lambda_1) contains no spectrum for U = I
    const auto roots = eigenvalues_scan(UnitaryMatrix2::identity(), 1.0, 1e-6, 0.25, 1e-10, 60);
    CHECK(roots.empty());
}

TEST_CASE("at most two negative eigenvalues for random extensions") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 8; ++trial) {
        const auto u = haar_random_unitary(rng);
        const auto roots = eigenvalues_scan(u, 1.0, -100.0, -1e-9, 1e-9);
        int count = 0;
        for (const auto& r : roots) count += r.multiplicity;
        CHECK(count <= 2);
    }
}

TEST_CASE("eigenfunction shooting") {
    const double a = 1.0;
    const auto uI = UnitaryMatrix2::identity();
    const auto modes = prolate_spectrum(48, a, 2);

    SECTION("U=I ground state matches the Galerkin eigenfunction in L2") {
        const auto roots = eigenvalues_scan(uI, a, 1e-9, modes[1].lambda * 1.1, 1e-11);
        REQUIRE(!roots.empty());
        const auto shot = eigenfunction_shoot(uI, a, roots[0].lambda);
        // log coefficient vanishes at both endpoints for the regular extension
        CHECK(std::abs(shot.beta) <= 1e-6 * std::abs(shot.alpha));
        CHECK(std::abs(shot.c2_plus) <= 1e-6 * std::abs(shot.c1_plus));

        GridFunction ref = shot.function;
        for (std::size_t i = 0; i < ref.nodes.size(); ++i)
            ref.values[i] = modes[0].eigenfunction.eval(ref.nodes[i]).first;
        const double rn = ref.norm_l2();
        double diff_plus = 0, diff_minus = 0;
        for (std::size_t i = 0; i < ref.nodes.size(); ++i) {
            diff_plus += ref.weights[i] * std::norm(shot.function.values[i] - ref.values[i] / rn);
            diff_minus += ref.weights[i] * std::norm(shot.function.values[i] + ref.values[i] / rn);
        }
        CHECK(std::sqrt(std::min(diff_plus, diff_minus)) <= 1e-6);
    }

    SECTION("boundedness of the U=I eigenfunction under refinement") {
        const auto shot_c = eigenfunction_shoot(uI, a, modes[0].lambda, true, 24, 12);
        const auto shot_f = eigenfunction_shoot(uI, a, modes[0].lambda, true, 30, 16);
        double sup_c = 0, sup_f = 0;
        for (const auto& v : shot_c.function.values) sup_c = std::max(sup_c, std::abs(v));
        for (const auto& v : shot_f.function.values) sup_f = std::max(sup_f, std::abs(v));
        CHECK(std::abs(sup_c - sup_f) <= 1e-4 * sup_c);
    }

    SECTION("non-eigenvalue is rejected") {
        CHECK_THROWS_AS(eigenfunction_shoot(uI, a, 0.5 * (modes[0].lambda + modes[1].lambda)),
                        NotAnEigenvalue);
    }

    SECTION("U=-I ground eigenfunction satisfies c = 0 at both endpoints") {
        const auto uN = UnitaryMatrix2::neg_identity();
        const auto roots = eigenvalues_scan(uN, a, -20.0, 10.0, 1e-11);
        REQUIRE(!roots.empty());
        const auto shot = eigenfunction_shoot(uN, a, roots[0].lambda);
        CHECK(std::abs(shot.boundary.c_minus) <= 1e-6);
        CHECK(std::abs(shot.boundary.c_plus) <= 1e-6);
    }
}

TEST_CASE("selected eigenfunction reproduces chi_1 through the secular system") {
    const double a = 1.0;
    const auto modes = prolate_spectrum(48, a, 1);
    const auto shot = eigenfunction_shoot(UnitaryMatrix2::identity(), a, modes[0].lambda);
    // compare samples after matching normalization on the shared grid
    const auto& g = shot.function;
    double num = 0, den = 0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const double ref = modes[0].eigenfunction.eval(g.nodes[i]).first;
        num += g.weights[i] * (g.values[i].real() * ref);
        den += g.weights[i] * ref * ref;
    }
    const double scale = num / den;
    for (std::size_t i = 0; i < g.nodes.size(); i += 97) {
        const double ref = modes[0].eigenfunction.eval(g.nodes[i]).first;
        CHECK(std::abs(g.values[i] - scale * ref) <= 1e-6);
    }
}

TEST_CASE("boundary orthogonality of eigenfunctions under one extension") {
    // members of a self-adjoint domain are mutually Omega-orthogonal
    const double a = 1.0;
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 3; ++trial) {
        const auto u = haar_random_unitary(rng);
        const auto roots = eigenvalues_scan(u, a, -30.0, 12.0, 1e-11);
        if (roots.size() < 2) continue;
        const auto x = eigenfunction_shoot(u, a, roots[0].lambda);
        const auto y = eigenfunction_shoot(u, a, roots[1].lambda);
        const cplx omega = omega_from_quadruples(x.boundary.quadruple(), y.boundary.quadruple(), a);
        const double scale = x.boundary.quadruple().norm() * y.boundary.quadruple().norm();
        CHECK(std::abs(omega) <= 1e-6 * std::max(scale, 1e-6));
    }
}

TEST_CASE("simplicity when a diagonal entry equals one") {
    // u11 = 1 with unitarity forces U = diag(1, e^{i phi})
    const double a = 1.0;
    for (double phi : {0.7, 2.2}) {
        const auto u = make_unitary(1.0, 0.0, 0.0, std::polar(1.0, phi));
        const auto roots = eigenvalues_scan(u, a, -20.0, 25.0, 1e-10);
        CHECK(!roots.empty());
        for (const auto& r : roots) CHECK(r.multiplicity == 1);
    }
}

TEST_CASE("count of eigenvalues grows with the window") {
    const auto uI = UnitaryMatrix2::identity();
    const auto r1 = eigenvalues_scan(uI, 1.0, 1e-9, 10.0, 1e-10, 200);
    const auto r2 = eigenvalues_scan(uI, 1.0, 1e-9, 25.0, 1e-10, 200);
    CHECK(r2.size() > r1.size());
    for (std::size_t i = 1; i < r2.size(); ++i) CHECK(r2[i].lambda > r2[i - 1].lambda);
}
