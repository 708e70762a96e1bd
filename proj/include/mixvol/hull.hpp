#pragma once

// Convex hulls of finite point sets in R^k, k <= 8: facet planes, extreme
// points, affine dimension, ambient volume, certified inradius. Farthest
// point incremental (beneath-beyond) construction with numeric degeneracy
// handling: points within eps of a supporting hyperplane are non-extreme.

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "geom.hpp"

namespace mixvol {

inline constexpr int kMaxHullDim = 8;

/// Supporting halfspace a.x <= b with |a| = 1.
struct FacetPlane {
    Vec normal;
    double offset = 0.0;
};

struct Hull {
    int dim = 0;
    int affine_dim = 0;
    std::vector<FacetPlane> facets;   // merged planes; empty when affine_dim < dim
    std::vector<int> hull_vertices;   // indices of extreme input points, ascending
    double volume = 0.0;
    double max_violation = 0.0;       // max over points of a.x - b, all facets

    // simplicial triangulation of the boundary (full-dimensional hulls only):
    // each entry is dim vertex indices; planes[i] is its supporting plane.
    std::vector<std::array<int, kMaxHullDim>> tri_facets;
    std::vector<FacetPlane> tri_planes;
    Vec interior_point;
};

namespace detail {

inline double factorial_cached(int n) {
    static const std::array<double, kMaxHullDim + 1> table = [] {
        std::array<double, kMaxHullDim + 1> t{};
        t[0] = 1.0;
        for (int i = 1; i <= kMaxHullDim; ++i) t[i] = t[i - 1] * i;
        return t;
    }();
    return table[n];
}

struct PointsView {
    const double* p;
    int dim;
    std::size_t n;
    CSpan operator[](std::size_t i) const { return {p + i * dim, static_cast<std::size_t>(dim)}; }
};

inline double max_abs_coord(const PointsView& pts) {
    double m = 0.0;
    const std::size_t total = pts.n * pts.dim;
    for (std::size_t i = 0; i < total; ++i) m = std::max(m, std::abs(pts.p[i]));
    return m;
}

// Unit normal of the hyperplane through the facet's vertices, oriented away
// from `interior`. Basis of edge vectors by modified Gram-Schmidt; normal is
// the largest residual of the standard basis against that span.
inline bool facet_plane(const PointsView& pts, const int* verts, int d, CSpan interior,
                        Vec& normal, double& offset) {
    std::array<Vec, kMaxHullDim> basis;
    int nb = 0;
    for (int e = 1; e < d; ++e) {
        Vec v(d);
        CSpan a = pts[verts[e]], b = pts[verts[0]];
        for (int c = 0; c < d; ++c) v[c] = a[c] - b[c];
        for (int pass = 0; pass < 2; ++pass)
            for (int j = 0; j < nb; ++j) {
                const double pr = dot(v, basis[j]);
                for (int c = 0; c < d; ++c) v[c] -= pr * basis[j][c];
            }
        const double len = norm(v);
        if (len > 1e-100) {
            for (int c = 0; c < d; ++c) v[c] /= len;
            basis[nb++] = std::move(v);
        }
    }
    double best_len = 0.0;
    Vec best;
    for (int cand = 0; cand < d; ++cand) {
        Vec v(d, 0.0);
        v[cand] = 1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (int j = 0; j < nb; ++j) {
                const double pr = dot(v, basis[j]);
                for (int c = 0; c < d; ++c) v[c] -= pr * basis[j][c];
            }
        const double len = norm(v);
        if (len > best_len) {
            best_len = len;
            best = std::move(v);
        }
    }
    if (best_len <= 1e-100) return false;
    for (int c = 0; c < d; ++c) best[c] /= best_len;
    double b = dot(best, pts[verts[0]]);
    if (dot(best, interior) > b) {
        for (int c = 0; c < d; ++c) best[c] = -best[c];
        b = -b;
    }
    normal = std::move(best);
    offset = b;
    return true;
}

struct TriFacet {
    std::array<int, kMaxHullDim> verts{};
    std::array<int, kMaxHullDim> nbrs{};
    Vec normal;
    double offset = 0.0;
    std::vector<int> outside;
    double far_dist = 0.0;
    int far_idx = -1;
    bool alive = false;
    int visit = 0;
};

class HullBuilder {
public:
    HullBuilder(const PointsView& pts, double eps) : pts_(pts), d_(pts.dim), eps_(eps) {}

    // Builds the full-dimensional hull; `seed` holds d+1 affinely independent
    // point indices.
    void run(const std::array<int, kMaxHullDim + 1>& seed) {
        interior_.assign(d_, 0.0);
        for (int i = 0; i <= d_; ++i)
            for (int c = 0; c < d_; ++c) interior_[c] += pts_[seed[i]][c] / (d_ + 1);

        for (int skip = 0; skip <= d_; ++skip) {
            TriFacet f;
            int k = 0;
            for (int i = 0; i <= d_; ++i)
                if (i != skip) f.verts[k++] = seed[i];
            if (!facet_plane(pts_, f.verts.data(), d_, interior_, f.normal, f.offset))
                throw std::runtime_error("convex_hull: degenerate initial simplex");
            f.alive = true;
            facets_.push_back(std::move(f));
        }
        // neighbor across the ridge opposite verts[j] of facet `skip` is the
        // facet omitting that vertex of the seed simplex
        for (int skip = 0; skip <= d_; ++skip) {
            int k = 0;
            for (int i = 0; i <= d_; ++i) {
                if (i == skip) continue;
                facets_[skip].nbrs[k++] = i;
            }
        }

        std::vector<int> pending;
        for (std::size_t i = 0; i < pts_.n; ++i) assign_point(static_cast<int>(i), 0, facets_.size());
        for (std::size_t f = 0; f < facets_.size(); ++f)
            if (!facets_[f].outside.empty()) pending.push_back(static_cast<int>(f));

        std::vector<int> visible, horizon_facet, horizon_ridge;
        while (!pending.empty()) {
            const int fid = pending.back();
            pending.pop_back();
            TriFacet& f = facets_[fid];
            if (!f.alive || f.outside.empty()) continue;
            const int apex = f.far_idx;

            // visible region by DFS over neighbors
            ++epoch_;
            visible.clear();
            horizon_facet.clear();
            horizon_ridge.clear();
            f.visit = epoch_;
            visible.push_back(fid);
            for (std::size_t v = 0; v < visible.size(); ++v) {
                const int gid = visible[v];
                for (int j = 0; j < d_; ++j) {
                    const int hid = facets_[gid].nbrs[j];
                    if (hid < 0) continue;
                    TriFacet& h = facets_[hid];
                    if (h.visit == epoch_) continue;
                    if (signed_dist(h, apex) > eps_) {
                        h.visit = epoch_;
                        visible.push_back(hid);
                    } else {
                        horizon_facet.push_back(gid);
                        horizon_ridge.push_back(j);
                    }
                }
            }

            // one new facet per horizon ridge: ridge vertices plus the apex
            fresh_.clear();
            ridge_map_.clear();
            for (std::size_t hi = 0; hi < horizon_facet.size(); ++hi) {
                const int gid = horizon_facet[hi];
                const int j = horizon_ridge[hi];
                const int hid = facets_[gid].nbrs[j];
                TriFacet nf;
                int k = 0;
                for (int t = 0; t < d_; ++t)
                    if (t != j) nf.verts[k++] = facets_[gid].verts[t];
                nf.verts[d_ - 1] = apex;
                if (!facet_plane(pts_, nf.verts.data(), d_, interior_, nf.normal, nf.offset))
                    throw std::runtime_error("convex_hull: degenerate facet");
                nf.nbrs.fill(-1);
                nf.nbrs[d_ - 1] = hid;
                nf.alive = true;
                const int nid = static_cast<int>(facets_.size());
                // re-point the surviving neighbor at the new facet
                TriFacet& h = facets_[hid];
                for (int t = 0; t < d_; ++t)
                    if (h.nbrs[t] == gid) h.nbrs[t] = nid;
                facets_.push_back(std::move(nf));
                fresh_.push_back(nid);
            }
            // match sibling ridges among the new facets
            for (const int nid : fresh_) link_new_facet(nid, apex);

            // redistribute outside points of the dead region
            for (const int gid : visible) {
                for (const int pi : facets_[gid].outside)
                    if (pi != apex) assign_point_to(pi, fresh_);
                facets_[gid].outside.clear();
                facets_[gid].alive = false;
            }
            for (const int nid : fresh_)
                if (!facets_[nid].outside.empty()) pending.push_back(nid);
        }
    }

    double signed_dist(const TriFacet& f, int pi) const {
        return dot(f.normal, pts_[pi]) - f.offset;
    }

    const std::vector<TriFacet>& facets() const { return facets_; }
    const Vec& interior() const { return interior_; }

private:
    void assign_point(int pi, std::size_t lo, std::size_t hi) {
        for (std::size_t f = lo; f < hi; ++f) {
            TriFacet& fac = facets_[f];
            if (!fac.alive) continue;
            const double dd = signed_dist(fac, pi);
            if (dd > eps_) {
                fac.outside.push_back(pi);
                if (dd > fac.far_dist) {
                    fac.far_dist = dd;
                    fac.far_idx = pi;
                }
                return;
            }
        }
    }

    void assign_point_to(int pi, const std::vector<int>& ids) {
        for (const int f : ids) {
            TriFacet& fac = facets_[f];
            const double dd = signed_dist(fac, pi);
            if (dd > eps_) {
                fac.outside.push_back(pi);
                if (dd > fac.far_dist) {
                    fac.far_dist = dd;
                    fac.far_idx = pi;
                }
                return;
            }
        }
    }

    // Siblings share a ridge made of the apex plus d-2 ridge vertices.
    void link_new_facet(int nid, int apex) {
        TriFacet& nf = facets_[nid];
        for (int skip = 0; skip < d_ - 1; ++skip) {
            if (nf.nbrs[skip] >= 0) continue;
            key_.clear();
            for (int t = 0; t < d_; ++t)
                if (t != skip && nf.verts[t] != apex) key_.push_back(nf.verts[t]);
            std::sort(key_.begin(), key_.end());
            auto it = ridge_map_.find(key_);
            if (it == ridge_map_.end()) {
                ridge_map_.emplace(key_, std::pair<int, int>{nid, skip});
            } else {
                const auto [oid, oslot] = it->second;
                nf.nbrs[skip] = oid;
                facets_[oid].nbrs[oslot] = nid;
                ridge_map_.erase(it);
            }
        }
    }

    const PointsView& pts_;
    int d_;
    double eps_;
    Vec interior_;
    std::vector<TriFacet> facets_;
    std::vector<int> fresh_;
    int epoch_ = 0;
    std::vector<int> key_;
    std::map<std::vector<int>, std::pair<int, int>> ridge_map_;
};

// Greedy affinely-independent seed: farthest point from the current affine
// span, measured by Gram-Schmidt residual. Returns false if the span cannot
// be completed (points are lower-dimensional at tolerance eps).
inline bool pick_seed_simplex(const PointsView& pts, double eps,
                              std::array<int, kMaxHullDim + 1>& seed) {
    const int d = pts.dim;
    Vec mean(d, 0.0);
    for (std::size_t i = 0; i < pts.n; ++i)
        for (int c = 0; c < d; ++c) mean[c] += pts[i][c] / static_cast<double>(pts.n);
    int v0 = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < pts.n; ++i) {
        const double dd = dist(pts[i], mean);
        if (dd > best) {
            best = dd;
            v0 = static_cast<int>(i);
        }
    }
    seed[0] = v0;
    std::array<Vec, kMaxHullDim> basis;
    int nb = 0;
    for (int step = 1; step <= d; ++step) {
        double far = eps;
        int far_i = -1;
        Vec far_res;
        for (std::size_t i = 0; i < pts.n; ++i) {
            Vec v(d);
            for (int c = 0; c < d; ++c) v[c] = pts[i][c] - pts[seed[0]][c];
            for (int j = 0; j < nb; ++j) {
                const double pr = dot(v, basis[j]);
                for (int c = 0; c < d; ++c) v[c] -= pr * basis[j][c];
            }
            const double len = norm(v);
            if (len > far) {
                far = len;
                far_i = static_cast<int>(i);
                far_res = std::move(v);
            }
        }
        if (far_i < 0) return false;
        seed[step] = far_i;
        for (int c = 0; c < d; ++c) far_res[c] /= far;
        for (int pass = 0; pass < 1; ++pass)
            for (int j = 0; j < nb; ++j) {
                const double pr = dot(far_res, basis[j]);
                for (int c = 0; c < d; ++c) far_res[c] -= pr * basis[j][c];
            }
        const double len = norm(far_res);
        for (int c = 0; c < d; ++c) far_res[c] /= len;
        basis[nb++] = std::move(far_res);
    }
    return true;
}

// Affine rank of the centered point matrix: number of singular values above
// 1e-10 times the largest one. Basis columns of the affine span are returned
// through `basis` (top `rank` eigenvectors of the covariance).
inline int affine_rank(const PointsView& pts, Matrix& basis) {
    const int d = pts.dim;
    Vec mean(d, 0.0);
    for (std::size_t i = 0; i < pts.n; ++i)
        for (int c = 0; c < d; ++c) mean[c] += pts[i][c] / static_cast<double>(pts.n);
    Matrix cov(d, d);
    for (std::size_t i = 0; i < pts.n; ++i)
        for (int r = 0; r < d; ++r) {
            const double xr = pts[i][r] - mean[r];
            for (int c = r; c < d; ++c) cov(r, c) += xr * (pts[i][c] - mean[c]);
        }
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < r; ++c) cov(r, c) = cov(c, r);
    Matrix evecs;
    Vec evals = jacobi_eigenvalues(cov, &evecs);  // ascending
    const double smax = std::sqrt(std::max(0.0, evals[d - 1]));
    if (smax <= 0.0) return 0;
    int rank = 0;
    for (int i = 0; i < d; ++i)
        if (std::sqrt(std::max(0.0, evals[i])) > 1e-10 * smax) ++rank;
    basis = Matrix(static_cast<std::size_t>(rank), d);
    for (int j = 0; j < rank; ++j)
        for (int c = 0; c < d; ++c) basis(j, c) = evecs(c, d - 1 - j);
    return rank;
}

}  // namespace detail

inline Hull convex_hull(CSpan flat_points, int dim);

namespace detail {

inline Hull hull_1d(const PointsView& pts, double eps) {
    Hull h;
    h.dim = 1;
    int lo = 0, hi = 0;
    for (std::size_t i = 1; i < pts.n; ++i) {
        if (pts[i][0] < pts[lo][0]) lo = static_cast<int>(i);
        if (pts[i][0] > pts[hi][0]) hi = static_cast<int>(i);
    }
    if (pts[hi][0] - pts[lo][0] <= eps) {
        h.affine_dim = 0;
        h.volume = 0.0;
        h.hull_vertices = {std::min(lo, hi)};
        return h;
    }
    h.affine_dim = 1;
    h.volume = pts[hi][0] - pts[lo][0];
    h.hull_vertices = {std::min(lo, hi), std::max(lo, hi)};
    h.facets.push_back({Vec{1.0}, pts[hi][0]});
    h.facets.push_back({Vec{-1.0}, -pts[lo][0]});
    h.interior_point = {0.5 * (pts[lo][0] + pts[hi][0])};
    return h;
}

// Lower-dimensional input: hull taken in affine-span coordinates just to
// recover the extreme points; ambient volume is zero and no facets exist.
inline Hull hull_degenerate(const PointsView& pts, int rank, const Matrix& basis) {
    Hull h;
    h.dim = pts.dim;
    h.affine_dim = rank;
    h.volume = 0.0;
    if (rank == 0) {
        h.hull_vertices = {0};
        return h;
    }
    Vec reduced(pts.n * rank);
    for (std::size_t i = 0; i < pts.n; ++i)
        for (int j = 0; j < rank; ++j) reduced[i * rank + j] = dot(basis.row(j), pts[i]);
    Hull sub = convex_hull(reduced, rank);
    h.affine_dim = std::min(rank, sub.affine_dim);
    h.hull_vertices = sub.hull_vertices;
    return h;
}

}  // namespace detail

/// Convex hull of `flat_points` (row-major, size divisible by dim).
inline Hull convex_hull(CSpan flat_points, int dim) {
    if (dim < 1 || dim > kMaxHullDim) throw std::invalid_argument("convex_hull: dim out of range");
    if (flat_points.empty() || flat_points.size() % dim != 0)
        throw std::invalid_argument("convex_hull: empty input or ragged dimensions");
    const detail::PointsView pts{flat_points.data(), dim, flat_points.size() / dim};
    const double scale = detail::max_abs_coord(pts);
    const double eps = 1e-10 * std::max(1.0, scale);

    if (dim == 1) return detail::hull_1d(pts, eps);

    Matrix basis;
    const int rank = detail::affine_rank(pts, basis);
    if (rank < dim) return detail::hull_degenerate(pts, rank, basis);

    std::array<int, kMaxHullDim + 1> seed{};
    if (!detail::pick_seed_simplex(pts, eps, seed)) {
        // rank test and greedy span disagree at tolerance; treat as degenerate
        return detail::hull_degenerate(pts, std::max(0, rank - 1), basis);
    }

    detail::HullBuilder builder(pts, eps);
    builder.run(seed);

    Hull h;
    h.dim = dim;
    h.affine_dim = dim;
    h.interior_point = builder.interior();

    std::vector<char> extreme(pts.n, 0);
    for (const auto& f : builder.facets()) {
        if (!f.alive) continue;
        h.tri_facets.push_back(f.verts);
        h.tri_planes.push_back({f.normal, f.offset});
        for (int t = 0; t < dim; ++t) extreme[f.verts[t]] = 1;
    }
    for (std::size_t i = 0; i < pts.n; ++i)
        if (extreme[i]) h.hull_vertices.push_back(static_cast<int>(i));

    // centroid of extreme points: apex of the volume cones
    Vec c(dim, 0.0);
    for (const int vi : h.hull_vertices)
        for (int t = 0; t < dim; ++t) c[t] += pts[vi][t] / static_cast<double>(h.hull_vertices.size());

    Matrix m(dim, dim);
    double vol = 0.0;
    for (const auto& tf : h.tri_facets) {
        for (int r = 0; r < dim; ++r)
            for (int t = 0; t < dim; ++t) m(r, t) = pts.p[tf[r] * dim + t] - c[t];
        vol += std::abs(lu_det(m));
    }
    h.volume = vol / detail::factorial_cached(dim);

    // merge coplanar triangulation planes into the facet list
    const double merge_b = 1e-8 * std::max(1.0, scale);
    for (const auto& pl : h.tri_planes) {
        bool found = false;
        for (const auto& q : h.facets)
            if (dot(pl.normal, q.normal) > 1.0 - 1e-9 && std::abs(pl.offset - q.offset) < merge_b) {
                found = true;
                break;
            }
        if (!found) h.facets.push_back(pl);
    }

    double worst = 0.0;
    for (std::size_t i = 0; i < pts.n; ++i)
        for (const auto& f : h.facets) worst = std::max(worst, dot(f.normal, pts[i]) - f.offset);
    h.max_violation = worst;
    return h;
}

/// Ambient volume of the hull of a point set. Invariant under permutation
/// and duplication of the input.
inline double hull_volume(CSpan flat_points, int dim) { return convex_hull(flat_points, dim).volume; }

/// Largest r such that r B^k fits inside the hull, certified from the facet
/// planes. Requires a full-dimensional hull with the origin strictly inside.
inline double inradius_at_origin(const Hull& h) {
    if (h.affine_dim < h.dim || h.facets.empty())
        throw std::invalid_argument("inradius_at_origin: hull is not full-dimensional");
    double r = std::numeric_limits<double>::infinity();
    for (const auto& f : h.facets) r = std::min(r, f.offset);
    if (r <= 0.0) throw std::invalid_argument("inradius_at_origin: origin is not interior");
    return r;
}

/// True when x satisfies every facet inequality within tol.
inline bool hull_contains(const Hull& h, CSpan x, double tol = 1e-9) {
    if (h.affine_dim < h.dim)
        throw std::invalid_argument("hull_contains: hull is not full-dimensional");
    for (const auto& f : h.facets)
        if (dot(f.normal, x) - f.offset > tol) return false;
    return true;
}

/// Self-check: volume recomputed from the divergence theorem over the
/// simplicial boundary, (1/k) sum b_f area(f). Returns the relative gap
/// against the cone-decomposition volume.
inline double hull_volume_self_check(const Hull& h, CSpan flat_points) {
    if (h.affine_dim < h.dim) return 0.0;
    const int d = h.dim;
    const detail::PointsView pts{flat_points.data(), d, flat_points.size() / static_cast<std::size_t>(d)};
    double vol = 0.0;
    for (std::size_t fi = 0; fi < h.tri_facets.size(); ++fi) {
        const auto& tf = h.tri_facets[fi];
        // Gram determinant area of the (d-1)-simplex
        Matrix g(d - 1, d - 1);
        std::array<Vec, kMaxHullDim> edges;
        for (int e = 1; e < d; ++e) {
            edges[e - 1].resize(d);
            for (int c = 0; c < d; ++c)
                edges[e - 1][c] = pts.p[tf[e] * d + c] - pts.p[tf[0] * d + c];
        }
        for (int r = 0; r < d - 1; ++r)
            for (int c = 0; c < d - 1; ++c) g(r, c) = dot(edges[r], edges[c]);
        const double gram = (d == 1) ? 1.0 : lu_det(g);
        const double area = std::sqrt(std::max(0.0, gram)) / detail::factorial_cached(d - 1);
        vol += h.tri_planes[fi].offset * area;
    }
    vol /= d;
    return std::abs(vol - h.volume) / std::max(1.0, std::abs(h.volume));
}

}  // namespace mixvol
