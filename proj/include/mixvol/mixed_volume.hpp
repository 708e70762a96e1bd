#pragma once

// Mixed volumes of V-polytopes through the polarization identity
//   V(A_1,...,A_n) = (1/n!) sum_{0 != S subset [n]} (-1)^{n-|S|} Vol(sum_{i in S} A_i),
// the finite-difference form of the derivative definition. Repeated bodies
// are grouped, so a subset sum whose multiset is {j_g copies of group g}
// is evaluated once with coefficient prod_g C(m_g, j_g). Ball slots are
// never point-estimated: quermass_bracket sandwiches them between the
// inscribed approximant and its certified outer scaling.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "body.hpp"
#include "hull.hpp"

namespace mixvol {

struct MixedVolumeResult {
    double value = 0.0;
    int n = 0;
    std::uint64_t terms_evaluated = 0;  // inclusion-exclusion subsets, 2^n - 1
    double max_term_volume = 0.0;       // conditioning diagnostic
};

/// Content-addressed memo of hull volumes, for repeated point sets across
/// calls (e.g. the ball-only subset sums of a Monte Carlo loop).
class VolumeCache {
public:
    std::optional<double> find(int dim, const Vec& pts) const {
        auto it = map_.find(hash(dim, pts));
        if (it == map_.end()) return std::nullopt;
        for (const auto& [stored, vol] : it->second)
            if (stored == pts) return vol;
        return std::nullopt;
    }

    void insert(int dim, const Vec& pts, double vol) {
        auto& bucket = map_[hash(dim, pts)];
        for (const auto& [stored, v] : bucket)
            if (stored == pts) return;
        bucket.emplace_back(pts, vol);
    }

private:
    static std::uint64_t hash(int dim, const Vec& pts) {
        std::uint64_t h = 1469598103934665603ull ^ static_cast<std::uint64_t>(dim);
        const unsigned char* bytes = reinterpret_cast<const unsigned char*>(pts.data());
        for (std::size_t i = 0; i < pts.size() * sizeof(double); ++i) {
            h ^= bytes[i];
            h *= 1099511628211ull;
        }
        return h;
    }

    std::unordered_map<std::uint64_t, std::vector<std::pair<Vec, double>>> map_;
};

struct MixedVolumeOptions {
    bool prune = true;           // interior-point pruning of intermediate sums
    VolumeCache* cache = nullptr;
};

namespace detail {

inline Vec prune_points(const Vec& pts, int dim) {
    const std::size_t count = pts.size() / static_cast<std::size_t>(dim);
    if (count <= static_cast<std::size_t>(dim) + 1) return pts;
    Hull h = convex_hull(pts, dim);
    Vec out;
    out.reserve(h.hull_vertices.size() * static_cast<std::size_t>(dim));
    for (const int i : h.hull_vertices)
        out.insert(out.end(), pts.begin() + static_cast<std::size_t>(i) * dim,
                   pts.begin() + static_cast<std::size_t>(i + 1) * dim);
    return out;
}

inline Vec minkowski_points(const Vec& a, const Vec& b, int dim) {
    const std::size_t na = a.size() / dim, nb = b.size() / dim;
    Vec out;
    out.reserve(na * nb * dim);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            for (int c = 0; c < dim; ++c) out.push_back(a[i * dim + c] + b[j * dim + c]);
    return out;
}

inline double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
    return b;
}

struct PolarTerm {
    int size = 0;
    std::vector<int> multiplicities;
    double coeff = 0.0;
    double volume = 0.0;
};

}  // namespace detail

/// Mixed volume of exactly n bodies in R^n. Symmetric in its arguments,
/// equal to Vol(A) on the diagonal, and nonnegative; values below -1e-8
/// (relative to the largest subset-sum volume) abort as a kernel failure,
/// smaller negatives are clamped to zero.
inline MixedVolumeResult mixed_volume(const std::vector<ConvexBody>& bodies,
                                      const MixedVolumeOptions& options = {}) {
    const int n = static_cast<int>(bodies.size());
    if (n < 1) throw std::invalid_argument("mixed_volume: at least one body required");
    if (n > kMaxHullDim) throw std::invalid_argument("mixed_volume: ambient dimension above 8");
    for (const auto& b : bodies)
        if (b.dim != n)
            throw std::invalid_argument(
                "mixed_volume: need exactly n bodies of ambient dimension n");

    // group bitwise-identical bodies; multiplicity j collapses j-fold
    // Minkowski sums to a scaling
    std::vector<const ConvexBody*> reps;
    std::vector<int> mult;
    for (const auto& b : bodies) {
        bool merged = false;
        for (std::size_t g = 0; g < reps.size(); ++g)
            if (reps[g]->verts == b.verts) {
                ++mult[g];
                merged = true;
                break;
            }
        if (!merged) {
            reps.push_back(&b);
            mult.push_back(1);
        }
    }
    const std::size_t groups = reps.size();
    std::vector<Vec> rep_pts(groups);
    for (std::size_t g = 0; g < groups; ++g)
        rep_pts[g] = options.prune ? detail::prune_points(reps[g]->verts, n) : reps[g]->verts;

    std::vector<detail::PolarTerm> terms;
    std::vector<int> jvec(groups, 0);
    double max_term = 0.0;

    auto volume_of = [&](const Vec& pts) {
        if (options.cache) {
            if (auto v = options.cache->find(n, pts)) return *v;
        }
        const double v = convex_hull(pts, n).volume;
        if (options.cache) options.cache->insert(n, pts, v);
        return v;
    };

    // depth-first over multiplicity vectors, sharing accumulated prefixes
    auto rec = [&](auto&& self, std::size_t g, const Vec& acc, int taken, double coeff) -> void {
        if (g == groups) {
            if (taken == 0) return;
            detail::PolarTerm t;
            t.size = taken;
            t.multiplicities = jvec;
            t.coeff = ((n - taken) % 2 == 0 ? 1.0 : -1.0) * coeff;
            t.volume = volume_of(acc);
            max_term = std::max(max_term, t.volume);
            terms.push_back(std::move(t));
            return;
        }
        for (int j = 0; j <= mult[g]; ++j) {
            jvec[g] = j;
            const double c = coeff * detail::binomial(mult[g], j);
            if (j == 0) {
                self(self, g + 1, acc, taken, c);
                continue;
            }
            Vec scaled = rep_pts[g];
            if (j > 1)
                for (double& x : scaled) x *= j;
            Vec next;
            if (acc.empty()) {
                next = std::move(scaled);
            } else {
                Vec lhs = acc;
                if (options.prune && lhs.size() / n * (scaled.size() / n) > 4096)
                    lhs = detail::prune_points(lhs, n);
                next = detail::minkowski_points(lhs, scaled, n);
            }
            self(self, g + 1, next, taken + j, c);
        }
        jvec[g] = 0;
    };
    rec(rec, 0, Vec{}, 0, 1.0);

    // fixed reduction order: subset-size-major, lexicographic within size
    std::sort(terms.begin(), terms.end(), [](const detail::PolarTerm& a, const detail::PolarTerm& b) {
        if (a.size != b.size) return a.size < b.size;
        return a.multiplicities < b.multiplicities;
    });
    double total = 0.0;
    for (const auto& t : terms) total += t.coeff * t.volume;
    double value = total / detail::factorial_cached(n);

    MixedVolumeResult res;
    res.n = n;
    res.terms_evaluated = (std::uint64_t{1} << n) - 1;
    res.max_term_volume = max_term;
    const double tol = 1e-8 * std::max(1.0, max_term);
    if (value < -tol)
        throw std::runtime_error("mixed_volume: negative value beyond tolerance (hull kernel failure)");
    res.value = std::max(value, 0.0);
    return res;
}

inline double mixed_volume_value(const std::vector<ConvexBody>& bodies,
                                 const MixedVolumeOptions& options = {}) {
    return mixed_volume(bodies, options).value;
}

/// Certified two-sided bracket of V(A_1,...,A_d, B^n,...,B^n): the lower
/// value replaces each ball slot by the inscribed approximant, the upper one
/// rescales those slots by the certified outer factor (homogeneity per slot).
struct QuermassBracket {
    double lower = 0.0;
    double upper = 0.0;
    int d = 0;
    int n = 0;
    int m = 0;
    std::uint64_t seed = 0;
    double outer_scale = 1.0;
};

inline QuermassBracket quermass_bracket(const std::vector<ConvexBody>& bodies, int m,
                                        std::uint64_t seed,
                                        const MixedVolumeOptions& options = {}) {
    const int d = static_cast<int>(bodies.size());
    if (d < 1) throw std::invalid_argument("quermass_bracket: at least one body required");
    const int n = bodies[0].dim;
    if (!(d < n)) throw std::invalid_argument("quermass_bracket: need 1 <= d < n");
    for (const auto& b : bodies)
        if (b.dim != n) throw std::invalid_argument("quermass_bracket: dimension mismatch");

    BallBracket bb = ball_bracket(n, m, seed);
    std::vector<ConvexBody> args = bodies;
    for (int i = d; i < n; ++i) args.push_back(bb.inner);
    QuermassBracket q;
    q.d = d;
    q.n = n;
    q.m = m;
    q.seed = seed;
    q.outer_scale = bb.outer_scale;
    q.lower = mixed_volume(args, options).value;
    double f = 1.0;
    for (int i = d; i < n; ++i) f *= bb.outer_scale;
    q.upper = f * q.lower;
    if (q.upper < q.lower - 1e-9)
        throw std::runtime_error("quermass_bracket: inverted bracket");
    return q;
}

/// Quermassintegrals of the unit cube: V(C,...,C (j), B^n,...,B^n (n-j))
/// equals kappa_{n-j}, read off the cube's outer parallel volume
/// Vol(C + sB) = sum_j C(n,j) kappa_{n-j} s^{n-j}.
inline double cube_quermass_reference(int n, int j) {
    if (!(0 <= j && j <= n && n >= 1))
        throw std::invalid_argument("cube_quermass_reference: need 0 <= j <= n");
    return (n - j == 0) ? 1.0 : ball_volume(n - j);
}

/// Both sides of the projection identity
///   d! V(P A_1,...,P A_d) = n! V(A_1,...,A_d, [0,q_{d+1}],...,[0,q_n])
/// for the frame P of the first d rows of Q.
struct ProjectionIdentitySides {
    double left = 0.0;   // d! times the projected mixed volume
    double right = 0.0;  // n! times the segment-slot mixed volume
};

inline ProjectionIdentitySides projection_identity_sides(const std::vector<ConvexBody>& bodies,
                                                         const Matrix& q,
                                                         const MixedVolumeOptions& options = {}) {
    const int d = static_cast<int>(bodies.size());
    const int n = static_cast<int>(q.rows);
    if (q.cols != q.rows) throw std::invalid_argument("projection_identity: Q must be square");
    if (!(1 <= d && d < n)) throw std::invalid_argument("projection_identity: need 1 <= d < n");
    if (orthonormality_residual(q) > 1e-10)
        throw std::invalid_argument("projection_identity: Q is not orthonormal");

    Matrix frame(d, n);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < n; ++c) frame(r, c) = q(r, c);
    std::vector<ConvexBody> projected;
    projected.reserve(d);
    for (const auto& b : bodies) projected.push_back(project(b, frame));
    ProjectionIdentitySides s;
    s.left = detail::factorial_cached(d) * mixed_volume(projected, options).value;

    std::vector<ConvexBody> args = bodies;
    for (int r = d; r < n; ++r) args.push_back(segment_body(q.row(r)));
    s.right = detail::factorial_cached(n) * mixed_volume(args, options).value;
    return s;
}

/// |left - right| of the identity above. Contract: at most 1e-7 relative to
/// max(1, right-hand side).
inline double projection_identity_residual(const std::vector<ConvexBody>& bodies,
                                           const Matrix& q,
                                           const MixedVolumeOptions& options = {}) {
    const ProjectionIdentitySides s = projection_identity_sides(bodies, q, options);
    return std::abs(s.left - s.right);
}

}  // namespace mixvol
