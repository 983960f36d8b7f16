#include <catch2/catch_amalgamated.hpp>

#include <polymem/chain.hpp>
#include <polymem/rng.hpp>

using namespace polymem;

namespace {

const HPolytope SQUARE = box({{-1, 1}, {-1, 1}});
const HPolytope TRIANGLE = translate(standard_simplex(2, 3), Point{-1, -1});

HPolytope pyramid() {
    return HPolytope(3, {Facet{{0, 0, 1}, Rational(-1)}, Facet{{2, 0, 1}, Rational(-1)},
                         Facet{{-2, 0, 1}, Rational(-1)}, Facet{{0, 2, 1}, Rational(-1)},
                         Facet{{0, -2, 1}, Rational(-1)}});
}

// independent scan oracle for the critical dilation factor: smallest factor
// that captures a new lattice point, scanned over the box of 2X
Rational scan_t_crit(const HPolytope& x) {
    auto verts = dilate(x, 2).vertices();
    std::vector<std::int64_t> lo(x.dim()), hi(x.dim());
    for (std::size_t j = 0; j < x.dim(); ++j) {
        Rational mn = verts[0][j], mx = verts[0][j];
        for (const auto& v : verts) {
            mn = std::min(mn, v[j]);
            mx = std::max(mx, v[j]);
        }
        lo[j] = to_i64(floor_int(mn));
        hi[j] = to_i64(ceil_int(mx));
    }
    std::optional<Rational> best;
    Point q(x.dim());
    std::vector<std::int64_t> cur(lo);
    while (true) {
        for (std::size_t j = 0; j < x.dim(); ++j) q[j] = cur[j];
        if (!x.contains(q)) {
            Rational s = 0;
            for (const auto& f : x.facets()) s = std::max(s, Rational(dot(f.normal, q)) / f.offset);
            if (!best || s < *best) best = s;
        }
        std::size_t j = 0;
        while (j < x.dim() && ++cur[j] > hi[j]) {
            cur[j] = lo[j];
            ++j;
        }
        if (j == x.dim()) break;
    }
    return best.value_or(Rational(2));
}

}  // namespace

TEST_CASE("epsilon0") {
    SECTION("square: scan oracle gives t_crit = 2, eps0 = 3/2") {
        auto [e0, tc] = epsilon0(SQUARE);
        REQUIRE(tc == scan_t_crit(SQUARE));
        REQUIRE(tc == 2);
        REQUIRE(e0 == Rational(3, 2));
    }
    SECTION("rationally recentered 2E keeps its lattice content") {
        const HPolytope x = translate(standard_simplex(2, 2), QPoint{Rational(-1, 2), Rational(-1, 2)});
        auto [e0, tc] = epsilon0(x);
        REQUIRE(e0 > 1);
        REQUIRE(e0 < tc);
        REQUIRE(lattice_points(dilate(x, e0)) == lattice_points(x));
    }
    SECTION("lattice count is preserved for every base") {
        for (const auto& b : {SQUARE, TRIANGLE, pyramid()}) {
            auto [e0, tc] = epsilon0(b);
            REQUIRE(lattice_points(dilate(b, e0)).size() == lattice_points(b).size());
        }
    }
    REQUIRE_THROWS_AS(epsilon0(standard_simplex(2, 1)), OriginNotInterior);
}

TEST_CASE("shift_facet") {
    // facets of the square sort by normal; find x >= -1
    std::size_t m = 0;
    for (std::size_t i = 0; i < SQUARE.facet_count(); ++i)
        if (SQUARE.facets()[i].normal == Point{1, 0}) m = i;
    const HPolytope shifted = shift_facet(SQUARE, m, Rational(1, 2));
    REQUIRE(polytope_equal(shifted, HPolytope(2, {Facet{{1, 0}, Rational(-3, 2)},
                                                  Facet{{-1, 0}, Rational(-1)},
                                                  Facet{{0, 1}, Rational(-1)},
                                                  Facet{{0, -1}, Rational(-1)}})));
    REQUIRE(polytope_equal(shift_facet(SQUARE, m, Rational(0)), SQUARE));
    REQUIRE_THROWS_AS(shift_facet(SQUARE, 9, Rational(1)), InvalidFacet);
}

TEST_CASE("validate_step") {
    SECTION("homothety round on the square passes on every facet") {
        HPolytope cur = dilate(SQUARE, Rational(3, 2));
        for (std::size_t m = 0; m < 4; ++m) {
            HPolytope nxt = shift_facet(cur, m, Rational(1, 4));
            auto rep = validate_step(SQUARE, cur, nxt, m);
            REQUIRE(rep.passed());
            cur = nxt;
        }
        REQUIRE(polytope_equal(cur, dilate(SQUARE, Rational(15, 8))));
    }
    SECTION("small pyramid shift passes, including the erosion identity") {
        const HPolytope b = pyramid();
        auto [e0, tc] = epsilon0(b);
        const HPolytope start = dilate(b, e0);
        for (std::size_t m = 0; m < b.facet_count(); ++m) {
            const HPolytope nxt = shift_facet(start, m, Rational(1, 16));
            const auto rep = validate_step(b, start, nxt, m);
            REQUIRE(rep.single_facet_shift);
            REQUIRE(rep.facet_count);
            REQUIRE(rep.erosion_identity);
        }
    }
    SECTION("oversized shift on a simplex loses a facet") {
        const HPolytope start = dilate(TRIANGLE, Rational(3, 2));
        std::size_t m = 0;
        for (std::size_t i = 0; i < start.facet_count(); ++i)
            if (start.facets()[i].normal == Point{1, 0}) m = i;
        const HPolytope nxt = shift_facet(start, m, Rational(50));
        const auto rep = validate_step(TRIANGLE, start, nxt, m);
        REQUIRE_FALSE(rep.facet_count);
        REQUIRE_FALSE(rep.passed());
    }
}

TEST_CASE("build_normal_chain on the square") {
    const NormalChain chain = build_normal_chain(SQUARE, Rational(3));
    REQUIRE(chain.base.facet_count() == 4);
    REQUIRE(validate_chain(chain).empty());
    // every 4th term after the eps0 dilation is a pure dilation of the base
    for (std::size_t i = 1; i < chain.terms.size(); i += 4) {
        auto t = chain.homothety_factor(i);
        REQUIRE(t);
        REQUIRE(polytope_equal(chain.terms[i], dilate(SQUARE, *t)));
    }
    auto last = chain.homothety_factor(chain.terms.size() - 1);
    REQUIRE(last);
    REQUIRE(*last >= 3);  // the chain covers dilate(B, t_max)
}

TEST_CASE("build_normal_chain on the triangle") {
    const NormalChain chain = build_normal_chain(TRIANGLE, Rational(4));
    REQUIRE(validate_chain(chain).empty());
    for (std::size_t i = 1; i < chain.terms.size(); i += 3) REQUIRE(chain.homothety_factor(i));
    REQUIRE(*chain.homothety_factor(chain.terms.size() - 1) >= 4);
}

TEST_CASE("equidistant chains have constant factor gaps") {
    ChainOptions opts;
    opts.equidistant_gap = Rational(1, 4);
    const NormalChain chain = build_normal_chain(SQUARE, Rational(3), opts);
    REQUIRE(validate_chain(chain).empty());
    std::vector<Rational> factors;
    for (std::size_t i = 1; i < chain.terms.size(); i += 4)
        factors.push_back(*chain.homothety_factor(i));
    REQUIRE(factors.size() >= 3);
    const Rational gap = factors[1] - factors[0];
    REQUIRE(gap > 0);
    for (std::size_t i = 1; i + 1 < factors.size(); ++i)
        REQUIRE(factors[i + 1] - factors[i] == gap);
}

TEST_CASE("slab erosion identities along a chain") {
    // (X_{i+1} (-) B) \ (X_i (-) B) has the lattice of (slab (-) face(B, alpha)),
    // and the eroded lattices are nested
    for (const auto& b : {SQUARE, TRIANGLE}) {
        const NormalChain chain = build_normal_chain(b, Rational(3));
        const PointSet zb = lattice_points(b);
        for (std::size_t i = 1; i + 1 < chain.terms.size(); ++i) {
            const int m = chain.steps[i].facet;
            auto eprev = erode(chain.terms[i], b);
            auto enext = erode(chain.terms[i + 1], b);
            REQUIRE(eprev);
            REQUIRE(enext);
            const PointSet zprev = lattice_points(*eprev);
            const PointSet znext = lattice_points(*enext);
            REQUIRE(zprev.is_subset_of(znext));
            const PointSet slab =
                set_difference(lattice_points(chain.terms[i + 1]), lattice_points(chain.terms[i]));
            const PointSet fb = face_points(zb, b.facets()[static_cast<std::size_t>(m)].normal);
            REQUIRE(set_difference(znext, zprev) == erode_points(slab, fb));
        }
    }
}

TEST_CASE("eroded chain terms are chain-insertable") {
    // for brackets with t1 >= 1 + eps0, X (-) B validates as a chain step again
    const NormalChain chain = build_normal_chain(SQUARE, Rational(4));
    const Rational threshold = 1 + chain.epsilon0;
    bool checked = false;
    for (std::size_t i = 1; i + 1 < chain.terms.size(); ++i) {
        if (chain.term_bracket(i).first < threshold) continue;
        if (chain.steps[i].facet < 0) continue;
        auto ei = erode(chain.terms[i], chain.base);
        auto en = erode(chain.terms[i + 1], chain.base);
        REQUIRE(ei);
        REQUIRE(en);
        const auto rep = validate_step(chain.base, *ei, *en,
                                       static_cast<std::size_t>(chain.steps[i].facet));
        REQUIRE(rep.single_facet_shift);
        REQUIRE(rep.facet_count);
        REQUIRE(rep.erosion_identity);
        checked = true;
    }
    REQUIRE(checked);
}

TEST_CASE("negative chain") {
    const NormalChain neg = negative_chain(SQUARE);
    REQUIRE(neg.descending);
    REQUIRE(neg.terms.size() == 5);  // B and one un-shift per facet
    REQUIRE(neg.epsilon0 < 1);
    REQUIRE(lattice_points(neg.terms.back()) == PointSet(2, {{0, 0}}));
    for (const auto& t : neg.terms) REQUIRE(t.pruned().facet_count() == 4);
    // steps follow the dual-form facet order
    const auto order = psi_facet_order(SQUARE);
    for (std::size_t j = 0; j < order.size(); ++j)
        REQUIRE(static_cast<std::size_t>(neg.steps[j].facet) == order[j]);
}

TEST_CASE("classify_erosion") {
    ChainOptions opts;
    opts.equidistant_gap = Rational(1, 4);  // factors 3/2, 7/4, 2, 9/4, ...
    const NormalChain chain = build_normal_chain(SQUARE, Rational(4), opts);
    REQUIRE(chain.epsilon0 == Rational(3, 2));

    auto dilation_index = [&](const Rational& t) {
        for (std::size_t i = 0; i < chain.terms.size(); ++i)
            if (auto f = chain.homothety_factor(i); f && *f == t) return i;
        FAIL("dilation term not found");
        return std::size_t(0);
    };

    // exact 3B eroded once: still a chain element (it is 2B)
    REQUIRE(classify_erosion(chain, dilation_index(Rational(3)), 1) == ErosionClass::ChainElement);

    // the eps0 term (3/2)B eroded twice: infeasible
    REQUIRE(classify_erosion(chain, 1, 2) == ErosionClass::Empty);

    // a term bracketed in [2, 2 + 1/4] eroded once: its lattice is Z(B)
    std::optional<std::size_t> idx;
    for (std::size_t i = 0; i < chain.terms.size(); ++i) {
        const auto [t1, t2] = chain.term_bracket(i);
        if (t1 == 2 && t2 > t1 && t2 - 1 <= chain.epsilon0) idx = i;
    }
    REQUIRE(idx);
    REQUIRE(classify_erosion(chain, *idx, 1) == ErosionClass::LatticeEqualsB);

    // (7/4)B eroded once: (3/4)B, strictly interior to the base
    REQUIRE(classify_erosion(chain, dilation_index(Rational(7, 4)), 1) ==
            ErosionClass::StrictlyInterior);
}

TEST_CASE("pyramid chain validates") {
    const NormalChain chain = build_normal_chain(pyramid(), Rational(2));
    REQUIRE(validate_chain(chain).empty());
}

TEST_CASE("chain input validation") {
    REQUIRE_THROWS_AS(build_normal_chain(standard_simplex(2, 1), Rational(3)), OriginNotInterior);
    REQUIRE_THROWS_AS(build_normal_chain(SQUARE, Rational(1)), InputError);
}
