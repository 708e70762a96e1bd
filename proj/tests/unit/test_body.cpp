#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "mixvol/body.hpp"
#include "oracles.hpp"

using namespace mixvol;
using Catch::Approx;

TEST_CASE("make_body catalog", "[body]") {
    const ConvexBody c2 = make_body(cube_spec(2));
    std::set<std::pair<double, double>> got;
    for (std::size_t i = 0; i < c2.count(); ++i) got.insert({c2.vertex(i)[0], c2.vertex(i)[1]});
    const std::set<std::pair<double, double>> expect = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    CHECK(got == expect);

    const ConvexBody seg = segment_body(Vec{0, 0, 1});
    REQUIRE(seg.count() == 2);
    CHECK(seg.vertex(0)[2] == 0.0);
    CHECK(seg.vertex(1)[2] == 1.0);

    const ConvexBody s3 = make_body(simplex_spec(3));
    CHECK(s3.count() == 4);
    CHECK(hull_volume(s3.verts, 3) == Approx(1.0 / 6.0).epsilon(1e-12));

    const ConvexBody x3 = make_body(cross_spec(3));
    CHECK(x3.count() == 6);

    const ConvexBody pt = make_body({BodyKind::point, 2, {0.25, -1.0}, 0, 0, ""});
    CHECK(pt.count() == 1);
}

TEST_CASE("make_body validation", "[body]") {
    CHECK_THROWS_AS(make_body({BodyKind::cube, 0, {}, 0, 0, ""}), std::invalid_argument);
    CHECK_THROWS_AS(make_body({BodyKind::segment, 3, {1.0, 0.0}, 0, 0, ""}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_body({BodyKind::ball_inscribed, 3, {}, 5, 0, ""}),
                    std::invalid_argument);  // m < 2k
    Vec bad = {0.0, std::nan("")};
    CHECK_THROWS_AS(ConvexBody::from_points(2, bad), std::invalid_argument);
    CHECK_THROWS_AS(ConvexBody::from_points(2, Vec{1.0}), std::invalid_argument);
}

TEST_CASE("minkowski sum basics", "[body]") {
    const ConvexBody s1 = segment_body(Vec{1, 0});
    const ConvexBody s2 = segment_body(Vec{0, 1});
    const ConvexBody square = minkowski_sum(s1, s2);
    CHECK(square.count() == 4);
    CHECK(hull_volume(square.verts, 2) == Approx(1.0).epsilon(1e-12));

    const ConvexBody c2 = make_body(cube_spec(2));
    const ConvexBody origin = make_body({BodyKind::point, 2, {0.0, 0.0}, 0, 0, "origin"});
    const ConvexBody same = minkowski_sum(c2, origin);
    CHECK(hull_volume(same.verts, 2) == Approx(1.0).epsilon(1e-12));
    CHECK(convex_hull(same.verts, 2).hull_vertices.size() == 4);

    const ConvexBody doubled = minkowski_sum(c2, c2);
    CHECK(hull_volume(doubled.verts, 2) == Approx(4.0).epsilon(1e-12));

    const ConvexBody c3 = make_body(cube_spec(3));
    CHECK_THROWS_AS(minkowski_sum(c2, c3), std::invalid_argument);
}

TEST_CASE("pruning never changes the hull", "[body]") {
    RandomStream stream(21, 0);
    for (int rep = 0; rep < 8; ++rep) {
        const ConvexBody a = test::random_polytope(3, 16, stream);
        const ConvexBody b = test::random_polytope(3, 16, stream);
        const double plain = hull_volume(minkowski_sum(a, b, false).verts, 3);
        const double pruned = hull_volume(minkowski_sum(a, b, true).verts, 3);
        CHECK(pruned == Approx(plain).epsilon(1e-12));
    }
}

TEST_CASE("scaling", "[body]") {
    const ConvexBody c3 = make_body(cube_spec(3));
    CHECK(scale(c3, 1.0).verts == c3.verts);
    CHECK(hull_volume(scale(c3, 2.0).verts, 3) == Approx(8.0).epsilon(1e-12));
    const ConvexBody half = scale(segment_body(Vec{1, 0, 0}), 0.5);
    CHECK(hull_volume(half.verts, 3) == 0.0);  // segment is degenerate in R^3
    CHECK(dist(half.vertex(1), half.vertex(0)) == Approx(0.5).epsilon(1e-14));
    const ConvexBody zero = scale(c3, 0.0);
    CHECK(zero.count() == 1);
    CHECK(norm(zero.vertex(0)) == 0.0);
    CHECK_THROWS_AS(scale(c3, -0.1), std::invalid_argument);
}

TEST_CASE("scale distributes over Minkowski sum on convex bodies", "[body]") {
    RandomStream stream(22, 0);
    for (int rep = 0; rep < 6; ++rep) {
        const ConvexBody a = test::random_polytope(3, 10, stream);
        const double s = 0.6, t = 1.7;
        const double lhs = hull_volume(scale(a, s + t).verts, 3);
        const double rhs = hull_volume(minkowski_sum(scale(a, s), scale(a, t)).verts, 3);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, lhs));
    }
}

TEST_CASE("minkowski sum commutative and associative at hull level", "[body]") {
    RandomStream stream(23, 0);
    const ConvexBody a = test::random_polytope(3, 8, stream);
    const ConvexBody b = test::random_polytope(3, 8, stream);
    const ConvexBody c = test::random_polytope(3, 8, stream);
    const double ab = hull_volume(minkowski_sum(a, b).verts, 3);
    const double ba = hull_volume(minkowski_sum(b, a).verts, 3);
    CHECK(std::abs(ab - ba) <= 1e-10 * std::max(1.0, ab));
    const double abc1 = hull_volume(minkowski_sum(minkowski_sum(a, b), c).verts, 3);
    const double abc2 = hull_volume(minkowski_sum(a, minkowski_sum(b, c)).verts, 3);
    CHECK(std::abs(abc1 - abc2) <= 1e-10 * std::max(1.0, abc1));
}

TEST_CASE("projection", "[body]") {
    const ConvexBody c3 = make_body(cube_spec(3));
    Matrix axes(2, 3);
    axes(0, 0) = 1.0;
    axes(1, 1) = 1.0;
    const ConvexBody shadow = project(c3, axes);
    CHECK(shadow.dim == 2);
    CHECK(hull_volume(shadow.verts, 2) == Approx(1.0).epsilon(1e-12));

    const ConvexBody e3seg = segment_body(Vec{0, 0, 1});
    const ConvexBody collapsed = project(e3seg, axes);
    CHECK(convex_hull(collapsed.verts, 2).affine_dim == 0);

    const double th = std::numbers::pi / 4.0;
    Matrix dir(1, 2);
    dir(0, 0) = std::cos(th);
    dir(0, 1) = std::sin(th);
    const ConvexBody c2 = make_body(cube_spec(2));
    CHECK(hull_volume(project(c2, dir).verts, 1) == Approx(std::sqrt(2.0)).epsilon(1e-12));

    Matrix bad(2, 3);
    bad(0, 0) = 1.0;
    bad(1, 0) = 1.0;
    CHECK_THROWS_AS(project(c3, bad), std::invalid_argument);
    CHECK_THROWS_AS(project(c2, axes), std::invalid_argument);
}

TEST_CASE("projection commutes with taking hulls", "[body]") {
    RandomStream stream(24, 0);
    Matrix frame = grassmann_frame(2, 4, stream);
    const ConvexBody a = test::random_polytope(4, 20, stream);
    const double direct = hull_volume(project(a, frame).verts, 2);
    const double pruned = hull_volume(project(prune(a), frame).verts, 2);
    CHECK(std::abs(direct - pruned) <= 1e-12 * std::max(1.0, direct));
}

TEST_CASE("ball bracket at the forced cross-polytope", "[body]") {
    const BallBracket b = ball_bracket(2, 4, 123);
    CHECK(b.inner.count() == 4);
    CHECK(b.outer_scale == Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("ball bracket certification", "[body]") {
    for (const auto& [k, m] : std::vector<std::pair<int, int>>{{2, 16}, {2, 64}, {3, 64}, {4, 32}}) {
        const BallBracket b = ball_bracket(k, m, 7);
        CHECK(b.outer_scale >= 1.0);
        for (std::size_t i = 0; i < b.inner.count(); ++i)
            CHECK(std::abs(norm(b.inner.vertex(i)) - 1.0) <= 1e-12);
        // sandwich: Vol(inner) <= kappa_k <= outer^k Vol(inner)
        const double vin = hull_volume(b.inner.verts, k);
        const double kap = ball_volume(k);
        CHECK(vin <= kap + 1e-12);
        CHECK(kap <= std::pow(b.outer_scale, k) * vin + 1e-12);
    }
}

TEST_CASE("ball bracket tightens: m=64 in the plane is within 1%", "[body]") {
    const BallBracket b = ball_bracket(2, 64, 3);
    CHECK(b.outer_scale <= 1.01);
    const BallBracket fine = ball_bracket(2, 256, 3);
    CHECK(fine.outer_scale < b.outer_scale);
}

TEST_CASE("ball points are deterministic per seed", "[body]") {
    const BallBracket a = ball_bracket(3, 48, 99);
    const BallBracket b = ball_bracket(3, 48, 99);
    CHECK(a.inner.verts == b.inner.verts);
    CHECK(a.outer_scale == b.outer_scale);
    const BallBracket c = ball_bracket(3, 48, 100);
    CHECK(a.inner.verts != c.inner.verts);
}
