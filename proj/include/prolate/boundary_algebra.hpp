#ifndef PROLATE_BOUNDARY_ALGEBRA_HPP
#define PROLATE_BOUNDARY_ALGEBRA_HPP

// The 4-dimensional boundary space of the singular Legendre/prolate operator
// on (-a,a), its indefinite Gram form J, and the bijection between 2x2
// unitary matrices and J-self-orthogonal 2-dimensional subspaces.
//
// Vectors of the boundary space are row vectors [alpha-, beta-, alpha+,
// beta+] of coordinates against the cutoff basis (phi-, psi-, phi+, psi+);
// they act on J from the left, and the pairing between two rows is
// v J w^* (conjugate transpose on the right).

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "prolate/errors.hpp"
#include "prolate/linalg.hpp"

namespace prolate {

inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kRankTol = 1e-12;
inline constexpr double kSelfOrthTol = 1e-10;

// Validated 2x2 unitary matrix, the parameter of a self-adjoint extension.
class UnitaryMatrix2 {
  public:
    static UnitaryMatrix2 identity() {
        return UnitaryMatrix2(Mat2::identity());
    }
    static UnitaryMatrix2 neg_identity() {
        Mat2 m;
        m(0, 0) = m(1, 1) = -1.0;
        return UnitaryMatrix2(m);
    }
    static UnitaryMatrix2 swap() {
        Mat2 m;
        m(0, 1) = m(1, 0) = 1.0;
        return UnitaryMatrix2(m);
    }

    const Mat2& matrix() const { return m_; }
    cplx operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

    UnitaryMatrix2 adjoint() const { return UnitaryMatrix2(m_.adjoint()); }

    bool is_identity(double tol = 1e-12) const {
        return (m_ - Mat2::identity()).max_norm() <= tol;
    }

    friend UnitaryMatrix2 make_unitary(const Mat2& entries);

  private:
    explicit UnitaryMatrix2(const Mat2& m) : m_(m) {}
    Mat2 m_;
};

inline UnitaryMatrix2 make_unitary(const Mat2& entries) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (!std::isfinite(entries(i, j).real()) || !std::isfinite(entries(i, j).imag()))
                throw ValidationError("make_unitary: entries must be finite");
    const Mat2 defect = entries * entries.adjoint() - Mat2::identity();
    if (defect.max_norm() > kUnitaryTol)
        throw NotUnitary("make_unitary: ||U U* - I||_max exceeds 1e-10");
    return UnitaryMatrix2(entries);
}

inline UnitaryMatrix2 make_unitary(cplx u11, cplx u12, cplx u21, cplx u22) {
    Mat2 m;
    m(0, 0) = u11;
    m(0, 1) = u12;
    m(1, 0) = u21;
    m(1, 1) = u22;
    return make_unitary(m);
}

// Haar-distributed 2x2 unitary: Ginibre sample, then row orthonormalization
// with the phase fix that makes the distribution invariant.
template <class Rng>
UnitaryMatrix2 haar_random_unitary(Rng& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Mat2 z;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) z(i, j) = cplx(nd(rng), nd(rng));
    // Gram-Schmidt on rows
    double n0 = std::sqrt(std::norm(z(0, 0)) + std::norm(z(0, 1)));
    Mat2 u;
    u(0, 0) = z(0, 0) / n0;
    u(0, 1) = z(0, 1) / n0;
    cplx proj = z(1, 0) * std::conj(u(0, 0)) + z(1, 1) * std::conj(u(0, 1));
    cplx r0 = z(1, 0) - proj * u(0, 0);
    cplx r1 = z(1, 1) - proj * u(0, 1);
    double n1 = std::sqrt(std::norm(r0) + std::norm(r1));
    u(1, 0) = r0 / n1;
    u(1, 1) = r1 / n1;
    // random diagonal phases restore Haar measure after the QR-style step
    std::uniform_real_distribution<double> ud(0.0, 2.0 * std::numbers::pi);
    const cplx p0 = std::polar(1.0, ud(rng)), p1 = std::polar(1.0, ud(rng));
    u(0, 0) *= p0;
    u(0, 1) *= p0;
    u(1, 0) *= p1;
    u(1, 1) *= p1;
    return make_unitary(u);
}

// Coordinates of an element of the boundary space.
struct BoundaryCoordinates4 {
    Vec4 v;
};

// Two rows spanning a 2-dimensional subspace of the boundary space.
class SubspacePair {
  public:
    SubspacePair(const Vec4& v1, const Vec4& v2) : rows_{v1, v2} {
        // rank-2 check via the singular values of the 2x4 row matrix
        const cplx g11 = dot(v1, v1), g12 = dot(v1, v2), g22 = dot(v2, v2);
        std::vector<cplx> g = {g11, g12, std::conj(g12), g22};
        auto e = hermitian_eigensolve(g, 2);
        const double smax = std::sqrt(std::max(0.0, e.eigenvalues[1]));
        const double smin = std::sqrt(std::max(0.0, e.eigenvalues[0]));
        if (smax <= 0.0 || smin <= kRankTol * smax)
            throw RankDeficient("SubspacePair: spanning vectors are not independent");
    }

    const Vec4& row(std::size_t k) const { return rows_[k]; }

  private:
    std::array<Vec4, 2> rows_;
};

// The constant Gram matrix J: rows [0,i,0,0], [-i,0,0,0], [0,0,0,i], [0,0,-i,0].
inline Mat4 j_matrix() {
    Mat4 j;
    j(0, 1) = iu;
    j(1, 0) = -iu;
    j(2, 3) = iu;
    j(3, 2) = -iu;
    return j;
}

// Orthogonal projectors P+- = (I +- J)/2 onto the +-1 eigenspaces of J.
inline std::pair<Mat4, Mat4> projectors() {
    const Mat4 j = j_matrix();
    const Mat4 e = Mat4::identity();
    return {0.5 * (e + j), 0.5 * (e - j)};
}

// Orthogonal bases of the +-1 eigenspaces.
inline Vec4 e_plus(int k) {
    Vec4 v;
    if (k == 1) { v[0] = 1.0; v[1] = iu; }
    else        { v[2] = 1.0; v[3] = iu; }
    return v;
}
inline Vec4 e_minus(int k) {
    Vec4 v;
    if (k == 1) { v[0] = 1.0; v[1] = -iu; }
    else        { v[2] = 1.0; v[3] = -iu; }
    return v;
}

// The subspace S_U spanned by
//   v1(U) = [1+u11, i(1-u11), u21, -i u21]
//   v2(U) = [u12, -i u12, 1+u22, i(1-u22)]
inline SubspacePair subspace_from_unitary(const UnitaryMatrix2& u) {
    Vec4 v1 = e_plus(1) + u(0, 0) * e_minus(1) + u(1, 0) * e_minus(2);
    Vec4 v2 = e_plus(2) + u(0, 1) * e_minus(1) + u(1, 1) * e_minus(2);
    return SubspacePair(v1, v2);
}

inline cplx j_pairing(const Vec4& v, const Vec4& w) {
    return dot(v * j_matrix(), w);
}

inline bool is_j_self_orthogonal(const SubspacePair& s, double tol = kSelfOrthTol) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double scale = s.row(i).norm() * s.row(j).norm();
            if (std::abs(j_pairing(s.row(i), s.row(j))) > tol * scale) return false;
        }
    return true;
}

// Inverse of subspace_from_unitary: project the basis onto the +-1
// eigenspaces, express the projections in the e-bases and solve the 2x2
// linear map from plus-coordinates to minus-coordinates.
inline UnitaryMatrix2 unitary_from_subspace(const SubspacePair& s) {
    if (!is_j_self_orthogonal(s))
        throw NotSelfOrthogonal("unitary_from_subspace: subspace is not J-self-orthogonal");
    auto [pp, pm] = projectors();
    Mat2 plus, minus;
    for (int k = 0; k < 2; ++k) {
        const Vec4 wp = s.row(k) * pp;
        const Vec4 wm = s.row(k) * pm;
        // e-basis vectors have squared norm 2
        plus(k, 0) = dot(wp, e_plus(1)) / 2.0;
        plus(k, 1) = dot(wp, e_plus(2)) / 2.0;
        minus(k, 0) = dot(wm, e_minus(1)) / 2.0;
        minus(k, 1) = dot(wm, e_minus(2)) / 2.0;
    }
    const auto sv = singular_values2(plus);
    if (sv[1] <= 1e-10 * std::max(sv[0], 1e-300))
        throw ProjectionSingular("unitary_from_subspace: projection onto V+ is rank-deficient");
    // minus-row coords q relate to plus-row coords p by q = p U^T, so with
    // row-stacked P, Q: U = (P^{-1} Q)^T.
    const cplx det = plus.det();
    Mat2 pinv;
    pinv(0, 0) = plus(1, 1) / det;
    pinv(0, 1) = -plus(0, 1) / det;
    pinv(1, 0) = -plus(1, 0) / det;
    pinv(1, 1) = plus(0, 0) / det;
    const Mat2 pq = pinv * minus;
    Mat2 u;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) u(i, j) = pq(j, i);
    return make_unitary(u);
}

// 2x4 boundary-condition matrix B(U) acting on the quadruple
// (b_{-a}(x), c_{-a}(x), b_a(x), c_a(x)); x lies in the domain of the
// extension iff B(U) q = 0.
struct BoundaryConditionMatrix {
    std::array<Vec4, 2> rows;
};

inline BoundaryConditionMatrix boundary_condition_matrix(const UnitaryMatrix2& u) {
    BoundaryConditionMatrix b;
    b.rows[0][0] = 1.0 + u(0, 0);
    b.rows[0][1] = -iu * (1.0 - u(0, 0));
    b.rows[0][2] = u(0, 1);
    b.rows[0][3] = iu * u(0, 1);
    b.rows[1][0] = u(1, 0);
    b.rows[1][1] = iu * u(1, 0);
    b.rows[1][2] = 1.0 + u(1, 1);
    b.rows[1][3] = -iu * (1.0 - u(1, 1));
    return b;
}

inline std::array<cplx, 2> apply_boundary_condition(const BoundaryConditionMatrix& b,
                                                    const Vec4& quadruple) {
    std::array<cplx, 2> r{};
    for (int k = 0; k < 2; ++k) {
        cplx s = 0;
        for (int i = 0; i < 4; ++i) s += b.rows[k][i] * quadruple[i];
        r[k] = s;
    }
    return r;
}

// Orthonormal basis of the kernel of B(U) inside C^4 (always 2-dimensional
// for unitary U). Computed from the hermitian 4x4 matrix B^H B.
inline std::array<Vec4, 2> boundary_condition_kernel(const BoundaryConditionMatrix& b) {
    std::vector<cplx> g(16, cplx(0.0));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cplx acc = 0;
            for (int k = 0; k < 2; ++k) acc += std::conj(b.rows[k][i]) * b.rows[k][j];
            g[i * 4 + j] = acc;
        }
    auto e = hermitian_eigensolve(g, 4);
    std::array<Vec4, 2> ker;
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 4; ++i) ker[k][i] = e.eigenvectors[k][i];
    return ker;
}

// Boundary-value quadruple of the boundary-space element with coordinate row
// v against (phi-, psi-, phi+, psi+): q = i v J.
inline Vec4 quadruple_from_coordinates(const Vec4& v) {
    return iu * (v * j_matrix());
}

// Inverse pairing: coordinates from a quadruple, v = -i q J.
inline Vec4 coordinates_from_quadruple(const Vec4& q) {
    return (-iu) * (q * j_matrix());
}

// Boundary form on quadruples: Omega_M(x,y) = (2/a) q_x J q_y^*.
inline cplx omega_from_quadruples(const Vec4& qx, const Vec4& qy, double a) {
    return (2.0 / a) * j_pairing(qx, qy);
}

}  // namespace prolate

#endif  // PROLATE_BOUNDARY_ALGEBRA_HPP
