#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mixvol/mixed_volume.hpp"
#include "mixvol/random_geometry.hpp"
#include "oracles.hpp"

using namespace mixvol;
using Catch::Approx;

TEST_CASE("diagonal equals the volume", "[mixed_volume]") {
    const ConvexBody c3 = make_body(cube_spec(3));
    const MixedVolumeResult r = mixed_volume({c3, c3, c3});
    CHECK(r.value == Approx(1.0).epsilon(1e-12));
    CHECK(r.n == 3);
    CHECK(r.terms_evaluated == 7);
    CHECK(r.max_term_volume == Approx(27.0).epsilon(1e-12));
}

TEST_CASE("segment pairs and triples", "[mixed_volume]") {
    const ConvexBody s1 = segment_body(Vec{1, 0});
    const ConvexBody s2 = segment_body(Vec{0, 1});
    CHECK(mixed_volume_value({s1, s2}) == Approx(0.5).epsilon(1e-12));

    const ConvexBody t1 = segment_body(Vec{1, 0, 0});
    const ConvexBody t2 = segment_body(Vec{0, 1, 0});
    const ConvexBody t3 = segment_body(Vec{0, 0, 1});
    CHECK(mixed_volume_value({t1, t2, t3}) == Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("flat square with an orthogonal needle", "[mixed_volume]") {
    const ConvexBody sq = ConvexBody::from_points(3, {0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 1, 0}, "sq");
    const ConvexBody e3 = segment_body(Vec{0, 0, 1});
    const double v = mixed_volume_value({sq, sq, e3});
    CHECK(v == Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(test::interpolated_mixed_volume({sq, sq, e3}) == Approx(v).epsilon(1e-9));
}

TEST_CASE("interpolation oracle agrees on random bodies", "[mixed_volume]") {
    RandomStream stream(31, 0);
    for (int n = 2; n <= 3; ++n)
        for (int rep = 0; rep < 4; ++rep) {
            std::vector<ConvexBody> bodies;
            for (int i = 0; i < n; ++i) bodies.push_back(test::random_polytope(n, n + 4, stream));
            const double polar = mixed_volume_value(bodies);
            const double interp = test::interpolated_mixed_volume(bodies);
            CHECK(std::abs(polar - interp) <= 1e-8 * std::max(1.0, polar));
        }
}

TEST_CASE("normalization over the catalog", "[mixed_volume]") {
    for (int n = 2; n <= 5; ++n) {
        for (const BodySpec& spec : {cube_spec(n), simplex_spec(n), cross_spec(n)}) {
            const ConvexBody b = make_body(spec);
            const double vol = hull_volume(b.verts, n);
            const std::vector<ConvexBody> args(static_cast<std::size_t>(n), b);
            const double mv = mixed_volume_value(args);
            INFO(spec.label << " n=" << n);
            CHECK(std::abs(mv - vol) <= 1e-9 * std::max(1.0, vol));
        }
    }
}

TEST_CASE("symmetry under permutations", "[mixed_volume]") {
    const ConvexBody a = make_body(cube_spec(3));
    const ConvexBody b = make_body(simplex_spec(3));
    const ConvexBody c = make_body(cross_spec(3));
    const double base = mixed_volume_value({a, b, c});
    for (const auto& perm : std::vector<std::vector<ConvexBody>>{
             {a, c, b}, {b, a, c}, {b, c, a}, {c, a, b}, {c, b, a}})
        CHECK(std::abs(mixed_volume_value(perm) - base) <= 1e-9 * base);
}

TEST_CASE("homogeneity per slot", "[mixed_volume]") {
    RandomStream stream(32, 0);
    const ConvexBody x = test::random_polytope(3, 8, stream);
    const ConvexBody a = test::random_polytope(3, 8, stream);
    const ConvexBody b = test::random_polytope(3, 8, stream);
    const double base = mixed_volume_value({x, a, b});
    for (double t : {0.3, 2.0, 5.5}) {
        const double scaled = mixed_volume_value({scale(x, t), a, b});
        CHECK(std::abs(scaled - t * base) <= 1e-9 * std::max(1.0, t * base));
    }
}

TEST_CASE("multilinearity in the first slot", "[mixed_volume]") {
    RandomStream stream(33, 0);
    for (int rep = 0; rep < 5; ++rep) {
        const ConvexBody x = test::random_polytope(3, 7, stream);
        const ConvexBody y = test::random_polytope(3, 7, stream);
        const ConvexBody a = test::random_polytope(3, 7, stream);
        const ConvexBody b = test::random_polytope(3, 7, stream);
        const double t1 = 0.4, t2 = 1.7;
        const ConvexBody mix = minkowski_sum(scale(x, t1), scale(y, t2), true);
        const double lhs = mixed_volume_value({mix, a, b});
        const double rhs = t1 * mixed_volume_value({x, a, b}) + t2 * mixed_volume_value({y, a, b});
        CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, rhs));
    }
}

TEST_CASE("monotone under inclusion", "[mixed_volume]") {
    RandomStream stream(34, 0);
    for (int rep = 0; rep < 5; ++rep) {
        const ConvexBody y = test::random_polytope(3, 14, stream);
        Vec sub(y.verts.begin(), y.verts.begin() + 3 * 7);
        const ConvexBody x = ConvexBody::from_points(3, sub, "sub");
        const ConvexBody a = test::random_polytope(3, 8, stream);
        const ConvexBody b = test::random_polytope(3, 8, stream);
        CHECK(mixed_volume_value({x, a, b}) <= mixed_volume_value({y, a, b}) + 1e-8);
    }
}

TEST_CASE("argument validation", "[mixed_volume]") {
    const ConvexBody c2 = make_body(cube_spec(2));
    const ConvexBody c3 = make_body(cube_spec(3));
    CHECK_THROWS_AS(mixed_volume({c2, c2, c2}), std::invalid_argument);  // arity != dim
    CHECK_THROWS_AS(mixed_volume({c2, c3}), std::invalid_argument);
    CHECK_THROWS_AS(mixed_volume(std::vector<ConvexBody>{}), std::invalid_argument);
}

TEST_CASE("volume cache does not change values", "[mixed_volume]") {
    const ConvexBody c3 = make_body(cube_spec(3));
    const ConvexBody s3 = make_body(simplex_spec(3));
    const ConvexBody x3 = make_body(cross_spec(3));
    VolumeCache cache;
    const double without = mixed_volume_value({c3, s3, x3});
    const double with1 = mixed_volume_value({c3, s3, x3}, {true, &cache});
    const double with2 = mixed_volume_value({c3, s3, x3}, {true, &cache});
    CHECK(without == with1);
    CHECK(with1 == with2);
}

TEST_CASE("prune flag is semantics-free", "[mixed_volume]") {
    RandomStream stream(35, 0);
    std::vector<ConvexBody> bodies;
    for (int i = 0; i < 3; ++i) bodies.push_back(test::random_polytope(3, 10, stream));
    const double pruned = mixed_volume_value(bodies, {true, nullptr});
    const double plain = mixed_volume_value(bodies, {false, nullptr});
    CHECK(std::abs(pruned - plain) <= 1e-12 * std::max(1.0, plain));
}

TEST_CASE("cube quermass reference values", "[mixed_volume]") {
    CHECK(cube_quermass_reference(3, 3) == 1.0);
    CHECK(cube_quermass_reference(3, 2) == Approx(2.0).epsilon(1e-14));
    CHECK(cube_quermass_reference(3, 1) == Approx(std::numbers::pi).epsilon(1e-14));
    CHECK(cube_quermass_reference(3, 0) == Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(cube_quermass_reference(3, 4), std::invalid_argument);
    CHECK_THROWS_AS(cube_quermass_reference(3, -1), std::invalid_argument);
}

TEST_CASE("quermass brackets enclose the cube references", "[mixed_volume]") {
    const ConvexBody c3 = make_body(cube_spec(3));
    const ConvexBody c2 = make_body(cube_spec(2));

    const QuermassBracket q1 = quermass_bracket({c3, c3}, 256, 11);
    CHECK(q1.lower <= cube_quermass_reference(3, 2) + 1e-12);
    CHECK(cube_quermass_reference(3, 2) <= q1.upper + 1e-12);

    const QuermassBracket q2 = quermass_bracket({c3}, 256, 11);
    CHECK(q2.lower <= cube_quermass_reference(3, 1) + 1e-12);
    CHECK(cube_quermass_reference(3, 1) <= q2.upper + 1e-12);

    const QuermassBracket q3 = quermass_bracket({c2}, 256, 11);
    CHECK(q3.lower <= 2.0 + 1e-12);
    CHECK(2.0 <= q3.upper + 1e-12);
}

TEST_CASE("bracket width shrinks with m and stays under 5% at m=256", "[mixed_volume]") {
    const ConvexBody c3 = make_body(cube_spec(3));
    for (int d : {1, 2}) {
        std::vector<ConvexBody> bodies(static_cast<std::size_t>(d), c3);
        const QuermassBracket coarse = quermass_bracket(bodies, 64, 5);
        const QuermassBracket fine = quermass_bracket(bodies, 256, 5);
        const double ref = cube_quermass_reference(3, d);
        CHECK((fine.upper - fine.lower) / ref < 0.05);
        CHECK(fine.upper - fine.lower < coarse.upper - coarse.lower);
    }
}

TEST_CASE("projection identity, axis-aligned and rotated", "[mixed_volume]") {
    const ConvexBody c2 = make_body(cube_spec(2));
    CHECK(projection_identity_residual({c2}, Matrix::identity(2)) <= 1e-12);

    const double th = std::numbers::pi / 4.0;
    Matrix rot(2, 2);
    rot(0, 0) = std::cos(th);
    rot(0, 1) = std::sin(th);
    rot(1, 0) = -std::sin(th);
    rot(1, 1) = std::cos(th);
    const ProjectionIdentitySides sides = projection_identity_sides({c2}, rot);
    CHECK(sides.left == Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(sides.right == Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("projection identity over seeded Haar draws", "[mixed_volume]") {
    const ConvexBody c3 = make_body(cube_spec(3));
    RandomStream stream(17, 0);
    for (int rep = 0; rep < 25; ++rep) {
        const OrthogonalSample q = haar_orthogonal(3, stream);
        const ProjectionIdentitySides s = projection_identity_sides({c3, c3}, q.q);
        CHECK(std::abs(s.left - s.right) <= 1e-7 * std::max(1.0, s.right));
    }
}
