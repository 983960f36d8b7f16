#include <catch2/catch_amalgamated.hpp>

#include <polymem/polytope.hpp>
#include <polymem/rng.hpp>

using namespace polymem;

namespace {

const HPolytope E = standard_simplex(2, 1);

HPolytope pyramid() {
    std::vector<Facet> fs;
    fs.push_back(Facet{{0, 0, 1}, Rational(-1)});
    fs.push_back(Facet{{2, 0, 1}, Rational(-1)});
    fs.push_back(Facet{{-2, 0, 1}, Rational(-1)});
    fs.push_back(Facet{{0, 2, 1}, Rational(-1)});
    fs.push_back(Facet{{0, -2, 1}, Rational(-1)});
    return HPolytope(3, fs);
}

}  // namespace

TEST_CASE("dilate") {
    const HPolytope sq = box({{-1, 1}, {-1, 1}});
    REQUIRE(polytope_equal(dilate(sq, 2), box({{-2, 2}, {-2, 2}})));
    REQUIRE(polytope_equal(dilate(sq, 1), sq));
    REQUIRE_THROWS_AS(dilate(sq, 0), NonPositiveFactor);

    // homothety scales vertices: triangle with the origin interior
    const HPolytope tri = translate(standard_simplex(2, 3), Point{-1, -1});
    auto v1 = tri.vertices();
    auto v3 = dilate(tri, 3).vertices();
    REQUIRE(v1.size() == v3.size());
    for (std::size_t i = 0; i < v1.size(); ++i)
        for (std::size_t j = 0; j < 2; ++j) REQUIRE(v3[i][j] == 3 * v1[i][j]);
}

TEST_CASE("erode") {
    REQUIRE(polytope_equal(*erode(box({{0, 2}, {0, 2}}), box({{0, 1}, {0, 1}})),
                           box({{0, 1}, {0, 1}})));
    REQUIRE(polytope_equal(*erode(standard_simplex(2, 3), E), standard_simplex(2, 2)));
    REQUIRE_FALSE(erode(E, standard_simplex(2, 2)));
    REQUIRE_THROWS_AS(erode(E, standard_simplex(3, 1)), DimensionMismatch);
}

TEST_CASE("erode_iter") {
    REQUIRE(polytope_equal(*erode_iter(standard_simplex(2, 3), E, 2), E));
    auto pt = erode_iter(standard_simplex(2, 2), E, 2);
    REQUIRE(pt);
    REQUIRE(pt->affine_dim() == 0);  // a single point, flagged lower-dimensional
    REQUIRE(lattice_points(*pt) == PointSet(2, {{0, 0}}));
    REQUIRE_FALSE(erode_iter(standard_simplex(2, 2), E, 3));
}

TEST_CASE("minkowski sum") {
    REQUIRE(polytope_equal(minkowski_sum(box({{0, 1}}), box({{0, 1}})), box({{0, 2}})));
    REQUIRE(polytope_equal(minkowski_sum(E, E), standard_simplex(2, 2)));

    // B + (X (-) B) is contained in X, with equality exactly for "chain-like" X
    const HPolytope sq = box({{-1, 1}, {-1, 1}});
    const HPolytope x = HPolytope(2, {Facet{{1, 0}, Rational(-1)}, Facet{{-1, 0}, Rational(-3)},
                                      Facet{{0, 1}, Rational(-1)}, Facet{{0, -1}, Rational(-1)},
                                      Facet{{1, 1}, Rational(-3, 2)}});
    auto er = erode(x, sq);
    REQUIRE(er);
    const HPolytope back = minkowski_sum(sq, *er);
    for (const auto& v : back.vertices()) REQUIRE(x.contains(v));
}

TEST_CASE("vertices") {
    auto sq = box({{-1, 1}, {-1, 1}}).vertices();
    REQUIRE(sq.size() == 4);
    auto tri = E.vertices();
    REQUIRE(tri.size() == 3);
    REQUIRE(pyramid().vertices().size() == 5);

    std::vector<Facet> slab = {Facet{{1, 0}, Rational(0)}, Facet{{-1, 0}, Rational(-1)}};
    REQUIRE_THROWS_AS(HPolytope(2, slab).vertices(), Unbounded);
}

TEST_CASE("lattice points") {
    REQUIRE(lattice_points(standard_simplex(2, 2)).size() == 6);
    REQUIRE(lattice_points(box({{-1, 1}, {-1, 1}})).size() == 9);
    // monotone under inclusion
    REQUIRE(lattice_points(E).is_subset_of(lattice_points(standard_simplex(2, 2))));
}

TEST_CASE("face") {
    auto f = face(box({{0, 1}, {0, 1}}), {0, 1});
    REQUIRE(f == PointSet(2, {{0, 0}, {1, 0}}));
    REQUIRE(face(E, {1, 1}) == PointSet(2, {{0, 0}}));
    REQUIRE(face(E, {1, 1}).is_subset_of(lattice_points(E)));
    REQUIRE_THROWS_AS(face(E, {0, 0}), ZeroDirection);
}

TEST_CASE("bernstein number") {
    const HPolytope sq = box({{0, 1}, {0, 1}});
    REQUIRE(bernstein_number_2d(E, E) == 1);
    REQUIRE(bernstein_number_2d(sq, sq) == 2);
    REQUIRE(bernstein_number_2d(standard_simplex(2, 2), standard_simplex(2, 3)) == 6);
    // symmetry and bilinearity under integer dilation
    Rng rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        const std::int64_t a = 1 + static_cast<std::int64_t>(rng.below(3));
        const std::int64_t b = 1 + static_cast<std::int64_t>(rng.below(3));
        REQUIRE(bernstein_number_2d(standard_simplex(2, a), sq) ==
                bernstein_number_2d(sq, standard_simplex(2, a)));
        REQUIRE(bernstein_number_2d(dilate(E, a), dilate(sq, b)) ==
                a * b * bernstein_number_2d(E, sq));
    }
}

TEST_CASE("min enclosing factor") {
    REQUIRE(min_enclosing_factor(lattice_points(standard_simplex(2, 2)), E) == 2);
    REQUIRE(min_enclosing_factor(PointSet(2, {{0, 0}}), E) == 0);
    PointSet outlier = lattice_points(standard_simplex(2, 3));
    outlier.insert({3, 3});
    REQUIRE(min_enclosing_factor(outlier, E) == 6);

    HPolytope away = translate(E, Point{5, 5});
    REQUIRE_THROWS_AS(min_enclosing_factor(PointSet(2, {{0, 0}}), away), OriginNotInterior);
}

TEST_CASE("erode of dilation is a dilation") {
    // erode(tB, B) = (t-1)B for B with the origin interior, t >= 1
    const std::vector<HPolytope> bodies = {box({{-1, 1}, {-1, 1}}),
                                           translate(standard_simplex(2, 3), Point{-1, -1})};
    const std::vector<Rational> factors = {Rational(1), Rational(3, 2), Rational(2),
                                           Rational(7, 3)};
    for (const auto& b : bodies)
        for (const auto& t : factors) {
            auto er = erode(dilate(b, t), b);
            if (t == 1) {
                REQUIRE(er);
                REQUIRE(er->affine_dim() == 0);
                continue;
            }
            REQUIRE(polytope_equal(*er, dilate(b, t - 1)));
        }
}

TEST_CASE("lattice erosion identity for integral bodies") {
    // Z(Y (-) B) = Z(Y) (-) Z(B) whenever B has integer vertices
    const HPolytope b = box({{0, 1}, {0, 1}});
    const std::vector<HPolytope> containers = {
        standard_simplex(2, 3), box({{-1, 2}, {0, 3}}),
        HPolytope(2, {Facet{{1, 0}, Rational(0)}, Facet{{0, 1}, Rational(0)},
                      Facet{{-2, -3}, Rational(-13, 2)}})};
    for (const auto& y : containers) {
        auto er = erode(y, b);
        const PointSet lhs = er ? lattice_points(*er) : PointSet(2);
        const PointSet rhs = erode_points(lattice_points(y), lattice_points(b));
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("support function equality after vertex round trip") {
    const std::vector<HPolytope> bodies = {E, standard_simplex(2, 2), box({{-1, 1}, {-1, 1}}),
                                           pyramid()};
    for (const auto& x : bodies) {
        const HPolytope canon = x.pruned();
        auto verts = canon.vertices();
        for (const auto& f : canon.facets()) {
            Rational mn = dot(f.normal, verts[0]);
            for (const auto& v : verts) mn = std::min(mn, dot(f.normal, v));
            REQUIRE(mn == f.offset);  // every facet tight
        }
        REQUIRE(polytope_equal(canon, x));
    }
}

TEST_CASE("convex hull of planar lattice sets") {
    REQUIRE(polytope_equal(conv_hull_2d(lattice_points(standard_simplex(2, 2))),
                           standard_simplex(2, 2)));
    // degenerate hulls keep their lattice content
    const PointSet seg(2, {{0, 0}, {1, 0}, {2, 0}});
    REQUIRE(lattice_points(conv_hull_2d(seg)) == seg);
    const PointSet pt(2, {{3, 4}});
    REQUIRE(lattice_points(conv_hull_2d(pt)) == pt);
}

TEST_CASE("duplicate facet normals merge to the tighter offset") {
    HPolytope x(2, {Facet{{1, 0}, Rational(0)}, Facet{{2, 0}, Rational(1)},
                    Facet{{-1, 0}, Rational(-3)}, Facet{{0, 1}, Rational(0)},
                    Facet{{0, -1}, Rational(-1)}});
    // (2,0)/1 normalizes to (1,0)/(1/2), which beats (1,0)/0
    REQUIRE(x.facet_count() == 4);
    REQUIRE(polytope_equal(x, HPolytope(2, {Facet{{1, 0}, Rational(1, 2)},
                                            Facet{{-1, 0}, Rational(-3)},
                                            Facet{{0, 1}, Rational(0)},
                                            Facet{{0, -1}, Rational(-1)}})));
}
