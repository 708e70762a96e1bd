#pragma once

// Compact convex bodies as vertex lists (V-polytopes) and the Minkowski
// algebra on them: sum, nonnegative scaling, projection to a frame. Also the
// polytopal two-sided surrogate for the Euclidean ball: an inscribed body
// with unit vertices plus a certified outer scale from its inradius.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hull.hpp"
#include "random_geometry.hpp"
#include "rng.hpp"
#include "special_functions.hpp"

namespace mixvol {

struct ConvexBody {
    int dim = 0;
    Vec verts;  // count x dim, row-major
    std::string label;

    std::size_t count() const { return verts.size() / static_cast<std::size_t>(dim); }
    CSpan vertex(std::size_t i) const {
        return {verts.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
    }

    static ConvexBody from_points(int dim, Vec verts, std::string label = {}) {
        if (dim < 1) throw std::invalid_argument("ConvexBody: dimension must be >= 1");
        if (verts.empty() || verts.size() % static_cast<std::size_t>(dim) != 0)
            throw std::invalid_argument("ConvexBody: vertex list empty or ragged");
        for (const double v : verts)
            if (!std::isfinite(v)) throw std::invalid_argument("ConvexBody: malformed coordinates");
        return {dim, std::move(verts), std::move(label)};
    }
};

enum class BodyKind { vertices, cube, simplex, cross_polytope, segment, point, ball_inscribed };

struct BodySpec {
    BodyKind kind = BodyKind::vertices;
    int dim = 0;
    Vec points;       // explicit coordinates for vertices/segment/point
    int m = 0;        // approximation point count for ball_inscribed
    std::uint64_t seed = 0;
    std::string label;
};

inline const char* body_kind_name(BodyKind k) {
    switch (k) {
        case BodyKind::vertices: return "vertices";
        case BodyKind::cube: return "cube";
        case BodyKind::simplex: return "simplex";
        case BodyKind::cross_polytope: return "cross_polytope";
        case BodyKind::segment: return "segment";
        case BodyKind::point: return "point";
        case BodyKind::ball_inscribed: return "ball_inscribed";
    }
    return "?";
}

namespace detail {

// Deterministic spread of m points on S^{k-1}: the 2k cross-polytope
// vertices are pinned, the remaining m-2k start as seeded uniform points and
// relax under pairwise repulsion with an annealed tangential step. Keeps the
// certified inradius of the hull close to the m-point optimum.
inline Vec sphere_spread_points(int k, int m, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("ball points: dimension must be >= 1");
    if (m < 2 * k)
        throw std::invalid_argument("ball points: m must be >= 2k so the forced "
                                    "cross-polytope vertices fit");
    if (m > 8192) throw std::invalid_argument("ball points: m above desk scale (8192)");
    const int fixed = 2 * k;
    Vec pts(static_cast<std::size_t>(m) * k, 0.0);
    for (int i = 0; i < k; ++i) {
        pts[static_cast<std::size_t>(2 * i) * k + i] = 1.0;
        pts[static_cast<std::size_t>(2 * i + 1) * k + i] = -1.0;
    }
    RandomStream stream(seed, 0x42414C4Cull);  // ball-seeding substream
    for (int i = fixed; i < m; ++i) {
        Vec c = uniform_sphere(k, stream);
        for (int t = 0; t < k; ++t) pts[static_cast<std::size_t>(i) * k + t] = c[t];
    }
    if (m == fixed || k == 1) return pts;

    // typical spacing on the sphere, used to scale the annealed step
    const double area = sphere_area(k);
    const double spacing = (k == 2) ? (2.0 * std::numbers::pi / m)
                                    : std::pow(area / m, 1.0 / (k - 1));
    const int iterations = 240;
    Vec force(static_cast<std::size_t>(m) * k, 0.0);
    for (int it = 0; it < iterations; ++it) {
        const double step = 0.4 * spacing * (1.0 - static_cast<double>(it) / iterations);
        std::fill(force.begin(), force.end(), 0.0);
        for (int i = fixed; i < m; ++i) {
            const double* pi = pts.data() + static_cast<std::size_t>(i) * k;
            double* fi = force.data() + static_cast<std::size_t>(i) * k;
            for (int j = 0; j < m; ++j) {
                if (j == i) continue;
                const double* pj = pts.data() + static_cast<std::size_t>(j) * k;
                double r2 = 1e-12;
                for (int t = 0; t < k; ++t) {
                    const double d = pi[t] - pj[t];
                    r2 += d * d;
                }
                const double w = 1.0 / (r2 * std::sqrt(r2));
                for (int t = 0; t < k; ++t) fi[t] += w * (pi[t] - pj[t]);
            }
        }
        for (int i = fixed; i < m; ++i) {
            double* pi = pts.data() + static_cast<std::size_t>(i) * k;
            const double* fi = force.data() + static_cast<std::size_t>(i) * k;
            const double radial = dot({fi, static_cast<std::size_t>(k)}, {pi, static_cast<std::size_t>(k)});
            Vec tang(k);
            for (int t = 0; t < k; ++t) tang[t] = fi[t] - radial * pi[t];
            const double tl = norm(tang);
            if (tl < 1e-14) continue;
            for (int t = 0; t < k; ++t) pi[t] += step * tang[t] / tl;
            const double len = norm({pi, static_cast<std::size_t>(k)});
            for (int t = 0; t < k; ++t) pi[t] /= len;
        }
    }
    return pts;
}

}  // namespace detail

/// Expands a BodySpec into its vertex list. Deterministic, including the
/// seeded ball approximants.
inline ConvexBody make_body(const BodySpec& spec) {
    const int n = spec.dim;
    std::string label = spec.label.empty() ? body_kind_name(spec.kind) : spec.label;
    switch (spec.kind) {
        case BodyKind::vertices:
            return ConvexBody::from_points(n, spec.points, std::move(label));
        case BodyKind::cube: {
            if (n < 1 || n > kMaxHullDim) throw std::invalid_argument("cube: invalid dimension");
            Vec v;
            v.reserve((std::size_t{1} << n) * n);
            for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask)
                for (int c = 0; c < n; ++c) v.push_back((mask >> c) & 1 ? 1.0 : 0.0);
            return ConvexBody::from_points(n, std::move(v), std::move(label));
        }
        case BodyKind::simplex: {
            if (n < 1 || n > kMaxHullDim) throw std::invalid_argument("simplex: invalid dimension");
            Vec v(static_cast<std::size_t>(n + 1) * n, 0.0);
            for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i + 1) * n + i] = 1.0;
            return ConvexBody::from_points(n, std::move(v), std::move(label));
        }
        case BodyKind::cross_polytope: {
            if (n < 1 || n > kMaxHullDim)
                throw std::invalid_argument("cross_polytope: invalid dimension");
            Vec v(static_cast<std::size_t>(2 * n) * n, 0.0);
            for (int i = 0; i < n; ++i) {
                v[static_cast<std::size_t>(2 * i) * n + i] = 1.0;
                v[static_cast<std::size_t>(2 * i + 1) * n + i] = -1.0;
            }
            return ConvexBody::from_points(n, std::move(v), std::move(label));
        }
        case BodyKind::segment: {
            if (spec.points.size() != static_cast<std::size_t>(n) || n < 1)
                throw std::invalid_argument("segment: endpoint must have ambient dimension");
            Vec v(static_cast<std::size_t>(2) * n, 0.0);
            for (int c = 0; c < n; ++c) v[n + c] = spec.points[c];
            return ConvexBody::from_points(n, std::move(v), std::move(label));
        }
        case BodyKind::point: {
            if (spec.points.size() != static_cast<std::size_t>(n) || n < 1)
                throw std::invalid_argument("point: coordinates must have ambient dimension");
            return ConvexBody::from_points(n, spec.points, std::move(label));
        }
        case BodyKind::ball_inscribed:
            return ConvexBody::from_points(
                n, detail::sphere_spread_points(n, spec.m, spec.seed), std::move(label));
    }
    throw std::invalid_argument("make_body: unknown kind");
}

inline BodySpec cube_spec(int n) { return {BodyKind::cube, n, {}, 0, 0, "cube" + std::to_string(n)}; }
inline BodySpec simplex_spec(int n) {
    return {BodyKind::simplex, n, {}, 0, 0, "simplex" + std::to_string(n)};
}
inline BodySpec cross_spec(int n) {
    return {BodyKind::cross_polytope, n, {}, 0, 0, "cross" + std::to_string(n)};
}
inline BodySpec segment_spec(Vec endpoint, std::string label = "segment") {
    const int n = static_cast<int>(endpoint.size());
    return {BodyKind::segment, n, std::move(endpoint), 0, 0, std::move(label)};
}

/// Segment body [0, c].
inline ConvexBody segment_body(CSpan c, std::string label = "segment") {
    return make_body(segment_spec(Vec(c.begin(), c.end()), std::move(label)));
}

/// Keeps only the extreme points of the body; the hull is unchanged.
inline ConvexBody prune(const ConvexBody& a) {
    if (a.count() <= static_cast<std::size_t>(a.dim) + 1) return a;
    Hull h = convex_hull(a.verts, a.dim);
    Vec v;
    v.reserve(h.hull_vertices.size() * static_cast<std::size_t>(a.dim));
    for (const int i : h.hull_vertices) {
        CSpan p = a.vertex(static_cast<std::size_t>(i));
        v.insert(v.end(), p.begin(), p.end());
    }
    return ConvexBody{a.dim, std::move(v), a.label};
}

/// All pairwise vertex sums {a + b}. With `prune_inputs`, both vertex lists
/// are reduced to their extreme points first; the hull of the result is the
/// same either way.
inline ConvexBody minkowski_sum(const ConvexBody& a, const ConvexBody& b,
                                bool prune_inputs = false) {
    if (a.dim != b.dim) throw std::invalid_argument("minkowski_sum: dimension mismatch");
    ConvexBody pa, pb;
    const ConvexBody* x = &a;
    const ConvexBody* y = &b;
    if (prune_inputs) {
        pa = prune(a);
        pb = prune(b);
        x = &pa;
        y = &pb;
    }
    Vec v;
    v.reserve(x->count() * y->count() * static_cast<std::size_t>(a.dim));
    for (std::size_t i = 0; i < x->count(); ++i)
        for (std::size_t j = 0; j < y->count(); ++j) {
            CSpan p = x->vertex(i), q = y->vertex(j);
            for (int c = 0; c < a.dim; ++c) v.push_back(p[c] + q[c]);
        }
    return ConvexBody{a.dim, std::move(v), a.label + "+" + b.label};
}

/// t A for t >= 0; t = 0 collapses to the single point at the origin.
inline ConvexBody scale(const ConvexBody& a, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("scale: factor must be nonnegative");
    if (t == 0.0) return ConvexBody{a.dim, Vec(static_cast<std::size_t>(a.dim), 0.0), a.label};
    Vec v(a.verts);
    for (double& x : v) x *= t;
    return ConvexBody{a.dim, std::move(v), a.label};
}

/// Image of the body under a row-orthonormal d x n frame.
inline ConvexBody project(const ConvexBody& a, const Matrix& frame) {
    const int d = static_cast<int>(frame.rows);
    const int n = static_cast<int>(frame.cols);
    if (n != a.dim) throw std::invalid_argument("project: frame/body dimension mismatch");
    if (d < 1 || d > n) throw std::invalid_argument("project: need 1 <= d <= n");
    if (orthonormality_residual(frame) > 1e-10)
        throw std::invalid_argument("project: frame rows are not orthonormal");
    Vec v(a.count() * static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < a.count(); ++i) {
        CSpan p = a.vertex(i);
        for (int r = 0; r < d; ++r) v[i * d + r] = dot(frame.row(r), p);
    }
    return ConvexBody{d, std::move(v), a.label};
}

/// Inner polytopal ball approximant plus the certified factor that turns it
/// into an outer one: inner is inscribed in B^k, and B^k lies inside
/// outer_scale * inner because outer_scale = 1 / inradius(inner).
struct BallBracket {
    ConvexBody inner;
    double outer_scale = 1.0;
    int m = 0;
    std::uint64_t seed = 0;
};

inline BallBracket ball_bracket(int k, int m, std::uint64_t seed) {
    BodySpec spec{BodyKind::ball_inscribed, k, {}, m, seed,
                  "ball" + std::to_string(k) + "[m=" + std::to_string(m) + "]"};
    ConvexBody inner = make_body(spec);
    double inr;
    if (k == 1) {
        inr = 1.0;  // {-1, +1} spans [-1, 1] exactly
    } else {
        Hull h = convex_hull(inner.verts, k);
        if (h.affine_dim < k) throw std::runtime_error("ball_bracket: degenerate hull");
        inr = inradius_at_origin(h);
    }
    BallBracket b;
    b.inner = std::move(inner);
    b.outer_scale = 1.0 / inr;
    b.m = m;
    b.seed = seed;
    return b;
}

}  // namespace mixvol
