#pragma once

// Small dense linear algebra for low-dimensional geometry (dim <= 8 in
// practice). Row-major matrices, no allocation tricks, no BLAS.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace mixvol {

using Vec = std::vector<double>;
using CSpan = std::span<const double>;

inline double dot(CSpan a, CSpan b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(CSpan a) { return dot(a, a); }

inline double norm(CSpan a) { return std::sqrt(norm2(a)); }

inline double dist(CSpan a, CSpan b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

/// Row-major dense matrix, fixed shape after construction.
struct Matrix {
    std::size_t rows = 0, cols = 0;
    Vec data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }
    CSpan row(std::size_t r) const { return {data.data() + r * cols, cols}; }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
};

/// Matrix-vector product y = A x for x of length A.cols.
inline Vec mat_vec(const Matrix& a, CSpan x) {
    Vec y(a.rows, 0.0);
    for (std::size_t r = 0; r < a.rows; ++r) y[r] = dot(a.row(r), x);
    return y;
}

/// max_ij |(A^T A - I)_ij|, the row-orthonormality residual of A's rows.
inline double orthonormality_residual(const Matrix& a) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.rows; ++j) {
            const double g = dot(a.row(i), a.row(j)) - (i == j ? 1.0 : 0.0);
            worst = std::max(worst, std::abs(g));
        }
    return worst;
}

/// Determinant by LU with partial pivoting. Destroys a local copy.
inline double lu_det(const Matrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("lu_det: square matrix required");
    const std::size_t n = m.rows;
    Matrix a = m;
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
        if (a(p, k) == 0.0) return 0.0;
        if (p != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(p, c), a(k, c));
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = a(i, k) / a(k, k);
            for (std::size_t c = k; c < n; ++c) a(i, c) -= f * a(k, c);
        }
    }
    return det;
}

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Returns eigenvalues ascending; eigvecs columns (if requested) match order.
inline Vec jacobi_eigenvalues(Matrix a, Matrix* eigvecs = nullptr) {
    if (a.rows != a.cols) throw std::invalid_argument("jacobi: square matrix required");
    const std::size_t n = a.rows;
    Matrix v = Matrix::identity(n);
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off < 1e-300) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t i = 0; i < n; ++i) {
                    const double aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double api = a(p, i), aqi = a(q, i);
                    a(p, i) = c * api - s * aqi;
                    a(q, i) = s * api + c * aqi;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
    Vec evals(n);
    for (std::size_t i = 0; i < n; ++i) evals[i] = a(order[i], order[i]);
    if (eigvecs) {
        *eigvecs = Matrix(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t r = 0; r < n; ++r) (*eigvecs)(r, i) = v(r, order[i]);
    }
    return evals;
}

}  // namespace mixvol
