#ifndef PROLATE_LINALG_HPP
#define PROLATE_LINALG_HPP

// Small dense linear algebra used throughout: fixed-size complex vectors and
// matrices, a cyclic Jacobi eigensolver for real symmetric matrices, and a
// complex hermitian Jacobi eigensolver for the 2x2/4x4 problems arising from
// boundary conditions.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "prolate/errors.hpp"

namespace prolate {

using cplx = std::complex<double>;

inline constexpr cplx iu{0.0, 1.0};

// ---------------------------------------------------------------- Vec4 / Mat

struct Vec4 {
    std::array<cplx, 4> v{};

    cplx& operator[](std::size_t i) { return v[i]; }
    const cplx& operator[](std::size_t i) const { return v[i]; }

    double norm() const {
        double s = 0;
        for (const auto& z : v) s += std::norm(z);
        return std::sqrt(s);
    }
};

inline Vec4 operator+(const Vec4& a, const Vec4& b) {
    Vec4 r;
    for (int i = 0; i < 4; ++i) r[i] = a[i] + b[i];
    return r;
}
inline Vec4 operator-(const Vec4& a, const Vec4& b) {
    Vec4 r;
    for (int i = 0; i < 4; ++i) r[i] = a[i] - b[i];
    return r;
}
inline Vec4 operator*(cplx s, const Vec4& a) {
    Vec4 r;
    for (int i = 0; i < 4; ++i) r[i] = s * a[i];
    return r;
}

// standard hermitian inner product of row vectors, <a,b> = sum a_i conj(b_i)
inline cplx dot(const Vec4& a, const Vec4& b) {
    cplx s = 0;
    for (int i = 0; i < 4; ++i) s += a[i] * std::conj(b[i]);
    return s;
}

struct Mat2 {
    std::array<std::array<cplx, 2>, 2> m{};

    cplx& operator()(std::size_t r, std::size_t c) { return m[r][c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return m[r][c]; }

    static Mat2 identity() {
        Mat2 e;
        e(0, 0) = e(1, 1) = 1.0;
        return e;
    }
    Mat2 adjoint() const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r(i, j) = std::conj(m[j][i]);
        return r;
    }
    cplx det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
    double max_norm() const {
        double mx = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) mx = std::max(mx, std::abs(m[i][j]));
        return mx;
    }
    double frob_norm() const {
        double s = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) s += std::norm(m[i][j]);
        return std::sqrt(s);
    }
};

inline Mat2 operator*(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            cplx s = 0;
            for (int k = 0; k < 2; ++k) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}
inline Mat2 operator-(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}

// Solve a 2x2 linear system A x = rhs.
inline std::array<cplx, 2> solve2(const Mat2& a, const std::array<cplx, 2>& rhs) {
    const cplx d = a.det();
    if (std::abs(d) == 0.0) throw NumericalError("solve2: singular 2x2 system");
    return {(rhs[0] * a(1, 1) - rhs[1] * a(0, 1)) / d,
            (a(0, 0) * rhs[1] - a(1, 0) * rhs[0]) / d};
}

struct Mat4 {
    std::array<std::array<cplx, 4>, 4> m{};

    cplx& operator()(std::size_t r, std::size_t c) { return m[r][c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return m[r][c]; }

    static Mat4 identity() {
        Mat4 e;
        for (int i = 0; i < 4; ++i) e(i, i) = 1.0;
        return e;
    }
    Mat4 adjoint() const {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r(i, j) = std::conj(m[j][i]);
        return r;
    }
    double max_norm() const {
        double mx = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) mx = std::max(mx, std::abs(m[i][j]));
        return mx;
    }
};

inline Mat4 operator*(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cplx s = 0;
            for (int k = 0; k < 4; ++k) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}
inline Mat4 operator-(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}
inline Mat4 operator+(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = a(i, j) + b(i, j);
    return r;
}
inline Mat4 operator*(cplx s, const Mat4& a) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = s * a(i, j);
    return r;
}

// row vector times matrix
inline Vec4 operator*(const Vec4& v, const Mat4& a) {
    Vec4 r;
    for (int j = 0; j < 4; ++j) {
        cplx s = 0;
        for (int i = 0; i < 4; ++i) s += v[i] * a(i, j);
        r[j] = s;
    }
    return r;
}

// --------------------------------------------------- dense symmetric (real)

// Cyclic Jacobi eigensolver for a real symmetric matrix stored row-major.
// Eigenvalues ascending; eigenvectors[k] is the (unit) eigenvector of
// eigenvalues[k]. Input symmetry is checked against 1e-12 * max|A|.
struct SymmetricEigen {
    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> eigenvectors;
};

inline SymmetricEigen symmetric_eigensolve(const std::vector<double>& a_in, std::size_t n) {
    if (a_in.size() != n * n) throw ValidationError("symmetric_eigensolve: bad size");
    double amax = 0;
    for (double x : a_in) amax = std::max(amax, std::abs(x));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(a_in[i * n + j] - a_in[j * n + i]) > 1e-12 * std::max(amax, 1e-300))
                throw NotSymmetric("symmetric_eigensolve: matrix is not symmetric");

    std::vector<double> a = a_in;
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    auto off = [&]() {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += a[i * n + j] * a[i * n + j];
        return std::sqrt(2.0 * s);
    };

    const double tol = 1e-15 * std::max(amax, 1e-300) * static_cast<double>(n);
    for (int sweep = 0; sweep < 64 && off() > tol; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (std::abs(apq) <= 1e-300) continue;
                const double app = a[p * n + p], aqq = a[q * n + q];
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p * n + k], aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k * n + p], vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t i, std::size_t j) { return a[i * n + i] < a[j * n + j]; });

    SymmetricEigen out;
    out.eigenvalues.resize(n);
    out.eigenvectors.assign(n, std::vector<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a[idx[k] * n + idx[k]];
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors[k][i] = v[i * n + idx[k]];
    }
    return out;
}

// ------------------------------------------------ dense hermitian (complex)

// Jacobi eigensolver for a small complex hermitian matrix (n <= 8 in
// practice). Eigenvalues ascending, eigenvectors unitary columns.
struct HermitianEigen {
    std::vector<double> eigenvalues;
    std::vector<std::vector<cplx>> eigenvectors;  // eigenvectors[k][i]
};

inline HermitianEigen hermitian_eigensolve(std::vector<cplx> a, std::size_t n) {
    if (a.size() != n * n) throw ValidationError("hermitian_eigensolve: bad size");
    std::vector<cplx> v(n * n, cplx(0.0));
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    double amax = 0;
    for (const auto& z : a) amax = std::max(amax, std::abs(z));

    auto off = [&]() {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += std::norm(a[i * n + j]);
        return std::sqrt(2.0 * s);
    };

    const double tol = 1e-15 * std::max(amax, 1e-300) * static_cast<double>(n);
    for (int sweep = 0; sweep < 80 && off() > tol; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a[p * n + q];
                if (std::abs(apq) <= 1e-300) continue;
                const double app = a[p * n + p].real(), aqq = a[q * n + q].real();
                const cplx phase = apq / std::abs(apq);
                const double tau = (aqq - app) / (2.0 * std::abs(apq));
                const double t = (tau >= 0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const cplx s = t * c * phase;
                // A <- G^H A G with G = [[c, s],[-conj(s), c]] acting on cols p,q
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = c * akp - std::conj(s) * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a[p * n + k], aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = std::conj(s) * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v[k * n + p], vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - std::conj(s) * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
        return a[i * n + i].real() < a[j * n + j].real();
    });

    HermitianEigen out;
    out.eigenvalues.resize(n);
    out.eigenvectors.assign(n, std::vector<cplx>(n));
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a[idx[k] * n + idx[k]].real();
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors[k][i] = v[i * n + idx[k]];
    }
    return out;
}

// Gaussian elimination with partial pivoting for small complex systems.
inline std::vector<cplx> solve_dense(std::vector<cplx> a, std::vector<cplx> b, std::size_t n) {
    if (a.size() != n * n || b.size() != n) throw ValidationError("solve_dense: bad sizes");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        if (std::abs(a[piv * n + col]) < 1e-300)
            throw NumericalError("solve_dense: singular system");
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
            std::swap(b[piv], b[col]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const cplx f = a[r * n + col] / a[col * n + col];
            if (f == cplx(0.0)) continue;
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
            b[r] -= f * b[col];
        }
    }
    std::vector<cplx> x(n);
    for (std::size_t r = n; r-- > 0;) {
        cplx s = b[r];
        for (std::size_t c = r + 1; c < n; ++c) s -= a[r * n + c] * x[c];
        x[r] = s / a[r * n + r];
    }
    return x;
}

// Singular values of a 2x2 complex matrix, descending.
inline std::array<double, 2> singular_values2(const Mat2& s) {
    std::vector<cplx> g(4);
    // S^H S
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            cplx acc = 0;
            for (int k = 0; k < 2; ++k) acc += std::conj(s(k, i)) * s(k, j);
            g[i * 2 + j] = acc;
        }
    auto e = hermitian_eigensolve(g, 2);
    const double s0 = std::sqrt(std::max(0.0, e.eigenvalues[1]));
    const double s1 = std::sqrt(std::max(0.0, e.eigenvalues[0]));
    return {s0, s1};
}

// Null vector (right singular vector of the smallest singular value) of a 2x2
// complex matrix.
inline std::array<cplx, 2> null_vector2(const Mat2& s) {
    std::vector<cplx> g(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            cplx acc = 0;
            for (int k = 0; k < 2; ++k) acc += std::conj(s(k, i)) * s(k, j);
            g[i * 2 + j] = acc;
        }
    auto e = hermitian_eigensolve(g, 2);
    return {e.eigenvectors[0][0], e.eigenvectors[0][1]};
}

}  // namespace prolate

#endif  // PROLATE_LINALG_HPP
