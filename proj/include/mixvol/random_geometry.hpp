#pragma once

// Haar-uniform orthogonal matrices, uniform points on S^{k-1}, and uniform
// Grassmannian frames, all driven by RandomStream.

#include <stdexcept>

#include "geom.hpp"
#include "rng.hpp"

namespace mixvol {

struct OrthogonalSample {
    Matrix q;  // n x n, rows q_1 ... q_n
};

/// Haar-uniform Q in O(n): a standard Gaussian matrix orthonormalised
/// column-by-column with positive normalisation. Gram-Schmidt produces the
/// triangular factor with a positive diagonal, which is exactly the sign
/// correction that makes the factor Haar; a plain Householder QR without it
/// would be biased (regression-tested).
inline OrthogonalSample haar_orthogonal(int n, RandomStream& stream) {
    if (n < 1) throw std::invalid_argument("haar_orthogonal: n must be >= 1");
    Matrix g(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) g(r, c) = stream.next_gaussian();
    Matrix q(n, n);
    for (int j = 0; j < n; ++j) {
        Vec v(n);
        for (int r = 0; r < n; ++r) v[r] = g(r, j);
        for (int pass = 0; pass < 2; ++pass)  // re-orthogonalisation pass
            for (int i = 0; i < j; ++i) {
                double pr = 0.0;
                for (int r = 0; r < n; ++r) pr += q(r, i) * v[r];
                for (int r = 0; r < n; ++r) v[r] -= pr * q(r, i);
            }
        const double len = norm(v);
        if (len < 1e-200) throw std::runtime_error("haar_orthogonal: degenerate Gaussian column");
        for (int r = 0; r < n; ++r) q(r, j) = v[r] / len;
    }
    return {std::move(q)};
}

/// Uniform unit vector on S^{k-1}: normalised Gaussian vector.
inline Vec uniform_sphere(int k, RandomStream& stream) {
    if (k < 1) throw std::invalid_argument("uniform_sphere: k must be >= 1");
    for (;;) {
        Vec v(k);
        for (int i = 0; i < k; ++i) v[i] = stream.next_gaussian();
        const double len = norm(v);
        if (len > 1e-100) {
            for (int i = 0; i < k; ++i) v[i] /= len;
            return v;
        }
    }
}

/// Uniform d-frame in R^n (rows orthonormal): the first d rows of a Haar
/// orthogonal sample, hence uniformly distributed in G(d,n).
inline Matrix grassmann_frame(int d, int n, RandomStream& stream) {
    if (!(1 <= d && d <= n)) throw std::invalid_argument("grassmann_frame: need 1 <= d <= n");
    OrthogonalSample s = haar_orthogonal(n, stream);
    if (d == n) return std::move(s.q);
    Matrix f(d, n);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < n; ++c) f(r, c) = s.q(r, c);
    return f;
}

}  // namespace mixvol
