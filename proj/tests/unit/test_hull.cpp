#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "mixvol/body.hpp"
#include "mixvol/hull.hpp"
#include "mixvol/random_geometry.hpp"
#include "oracles.hpp"

using namespace mixvol;
using Catch::Approx;

namespace {

Vec cube_points(int n) { return make_body(cube_spec(n)).verts; }

Vec apply_rotation(const Vec& pts, const Matrix& q, int n) {
    Vec out(pts.size());
    const std::size_t count = pts.size() / n;
    for (std::size_t i = 0; i < count; ++i) {
        Vec y = mat_vec(q, CSpan{pts.data() + i * n, static_cast<std::size_t>(n)});
        for (int c = 0; c < n; ++c) out[i * n + c] = y[c];
    }
    return out;
}

}  // namespace

TEST_CASE("unit cube hull", "[hull]") {
    const Vec pts = cube_points(3);
    const Hull h = convex_hull(pts, 3);
    CHECK(h.volume == Approx(1.0).epsilon(1e-12));
    CHECK(h.facets.size() == 6);
    CHECK(h.hull_vertices.size() == 8);
    CHECK(h.affine_dim == 3);
    CHECK(h.max_violation <= 1e-9);
    for (const auto& f : h.facets) CHECK(norm(f.normal) == Approx(1.0).epsilon(1e-12));
    CHECK(hull_volume_self_check(h, pts) <= 1e-9);
}

TEST_CASE("coplanar points in R^3 are degenerate", "[hull]") {
    const Vec pts = {0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 1, 0};
    const Hull h = convex_hull(pts, 3);
    CHECK(h.affine_dim == 2);
    CHECK(h.volume == 0.0);
    CHECK(h.facets.empty());
    CHECK(h.hull_vertices.size() == 4);
}

TEST_CASE("standard simplex", "[hull]") {
    const Vec pts = {0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1};
    const Hull h = convex_hull(pts, 3);
    CHECK(h.volume == Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(h.facets.size() == 4);
}

TEST_CASE("cross-polytope volume 2^k/k!", "[hull]") {
    for (int k = 2; k <= 5; ++k) {
        const ConvexBody b = make_body(cross_spec(k));
        const double expect = std::pow(2.0, k) / detail::factorial_cached(k);
        CHECK(hull_volume(b.verts, k) == Approx(expect).epsilon(1e-11));
    }
}

TEST_CASE("single and repeated points", "[hull]") {
    const Hull h = convex_hull(Vec{0.3, -0.7}, 2);
    CHECK(h.affine_dim == 0);
    CHECK(h.volume == 0.0);
    const Hull h2 = convex_hull(Vec{0.3, -0.7, 0.3, -0.7, 0.3, -0.7}, 2);
    CHECK(h2.affine_dim == 0);
}

TEST_CASE("volume invariant under permutation and duplication", "[hull]") {
    RandomStream stream(99, 0);
    const ConvexBody body = test::random_polytope(3, 12, stream);
    const double base = hull_volume(body.verts, 3);
    Vec shuffled = body.verts;
    // rotate vertex order and duplicate a few points
    std::rotate(shuffled.begin(), shuffled.begin() + 3 * 5, shuffled.end());
    Vec dup = shuffled;
    dup.insert(dup.end(), shuffled.begin(), shuffled.begin() + 3 * 4);
    CHECK(hull_volume(shuffled, 3) == Approx(base).epsilon(1e-12));
    CHECK(hull_volume(dup, 3) == Approx(base).epsilon(1e-12));
}

TEST_CASE("volume invariant under rotation and translation", "[hull]") {
    const Vec pts = cube_points(3);
    RandomStream stream(4, 0);
    for (int rep = 0; rep < 20; ++rep) {
        const OrthogonalSample q = haar_orthogonal(3, stream);
        Vec moved = apply_rotation(pts, q.q, 3);
        const double shift[3] = {1.3, -0.2, 0.7};
        for (std::size_t i = 0; i < moved.size(); ++i) moved[i] += shift[i % 3];
        CHECK(std::abs(hull_volume(moved, 3) - 1.0) <= 1e-9);
    }
}

TEST_CASE("volume scales as t^k", "[hull]") {
    RandomStream stream(5, 0);
    const ConvexBody body = test::random_polytope(4, 10, stream);
    const double base = hull_volume(body.verts, 4);
    for (double t : {0.5, 2.0, 3.7}) {
        Vec scaled = body.verts;
        for (double& x : scaled) x *= t;
        const double expect = std::pow(t, 4) * base;
        CHECK(hull_volume(scaled, 4) == Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("volume monotone under inclusion", "[hull]") {
    RandomStream stream(6, 0);
    for (int rep = 0; rep < 10; ++rep) {
        const ConvexBody outer = test::random_polytope(3, 14, stream);
        const Hull ho = convex_hull(outer.verts, 3);
        if (ho.affine_dim < 3) continue;
        // subset of the outer vertices is inside the outer hull
        Vec inner(outer.verts.begin(), outer.verts.begin() + 3 * 6);
        CHECK(hull_volume(inner, 3) <= ho.volume + 1e-9);
    }
}

TEST_CASE("cone and divergence volumes agree", "[hull]") {
    RandomStream stream(7, 0);
    for (int n = 2; n <= 4; ++n)
        for (int rep = 0; rep < 5; ++rep) {
            const ConvexBody body = test::random_polytope(n, 4 * n, stream);
            const Hull h = convex_hull(body.verts, n);
            if (h.affine_dim < n) continue;
            CHECK(hull_volume_self_check(h, body.verts) <= 1e-9);
        }
}

TEST_CASE("inradius about the origin", "[hull]") {
    // cube centered at the origin
    Vec pts = cube_points(3);
    for (double& x : pts) x -= 0.5;
    const Hull h = convex_hull(pts, 3);
    CHECK(inradius_at_origin(h) == Approx(0.5).epsilon(1e-12));

    const ConvexBody cross2 = make_body(cross_spec(2));
    const Hull h2 = convex_hull(cross2.verts, 2);
    CHECK(inradius_at_origin(h2) == Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

    // homogeneity
    Vec scaled = pts;
    for (double& x : scaled) x *= 3.25;
    CHECK(inradius_at_origin(convex_hull(scaled, 3)) == Approx(3.25 * 0.5).epsilon(1e-12));
}

TEST_CASE("inradius rejects non-interior origin", "[hull]") {
    const Vec pts = cube_points(3);  // [0,1]^3: origin on the boundary
    CHECK_THROWS_AS(inradius_at_origin(convex_hull(pts, 3)), std::invalid_argument);
    const Vec flat = {0, 0, 0, 1, 0, 0, 0, 1, 0};
    CHECK_THROWS_AS(inradius_at_origin(convex_hull(flat, 3)), std::invalid_argument);
}

TEST_CASE("one-dimensional hulls", "[hull]") {
    const Hull h = convex_hull(Vec{0.5, -1.25, 3.0, 2.0}, 1);
    CHECK(h.volume == Approx(4.25).epsilon(1e-14));
    CHECK(h.affine_dim == 1);
    REQUIRE(h.facets.size() == 2);
    CHECK(h.hull_vertices == std::vector<int>{1, 2});
}

TEST_CASE("input validation", "[hull]") {
    CHECK_THROWS_AS(convex_hull(Vec{}, 2), std::invalid_argument);
    CHECK_THROWS_AS(convex_hull(Vec{1.0, 2.0, 3.0}, 2), std::invalid_argument);
    CHECK_THROWS_AS(convex_hull(Vec{1.0}, 0), std::invalid_argument);
    CHECK_THROWS_AS(convex_hull(Vec(18, 0.0), 9), std::invalid_argument);
}

TEST_CASE("4-cube hull", "[hull]") {
    const Vec pts = cube_points(4);
    const Hull h = convex_hull(pts, 4);
    CHECK(h.volume == Approx(1.0).epsilon(1e-11));
    CHECK(h.facets.size() == 8);
    CHECK(h.hull_vertices.size() == 16);
    CHECK(h.max_violation <= 1e-9);
}

TEST_CASE("interior points do not disturb the hull", "[hull]") {
    Vec pts = cube_points(3);
    // face centers, edge midpoints, centroid
    const double extras[][3] = {{0.5, 0.5, 0.5}, {0.5, 0.5, 0.0}, {0.5, 0.0, 0.5},
                                {0.0, 0.5, 0.5}, {0.5, 0.0, 0.0}, {0.5, 1.0, 1.0},
                                {1.0, 0.5, 1.0}};
    for (const auto& e : extras) pts.insert(pts.end(), {e[0], e[1], e[2]});
    const Hull h = convex_hull(pts, 3);
    CHECK(h.volume == Approx(1.0).epsilon(1e-12));
    CHECK(h.facets.size() == 6);
    CHECK(h.hull_vertices.size() == 8);
    CHECK(h.max_violation <= 1e-9);
}

TEST_CASE("hull_contains matches the facet description", "[hull]") {
    const Hull h = convex_hull(cube_points(3), 3);
    CHECK(hull_contains(h, Vec{0.5, 0.5, 0.5}));
    CHECK(hull_contains(h, Vec{1.0, 1.0, 1.0}));
    CHECK_FALSE(hull_contains(h, Vec{1.2, 0.5, 0.5}));
}
