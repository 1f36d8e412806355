#include <catch2/catch_amalgamated.hpp>

#include "hypcone/companion.hpp"
#include "hypcone/roots.hpp"

using namespace hypcone;

namespace {
UniPoly from_int_roots(std::initializer_list<int> rs) {
    std::vector<Rational> roots;
    for (int r : rs) roots.emplace_back(r);
    return UniPoly::from_roots(roots);
}
}  // namespace

TEST_CASE("real_roots isolates and labels multiplicities", "[roots]") {
    const UniPoly lin = UniPoly(std::vector<Rational>{Rational(-1, 2), Rational(1)});
    const UniPoly p = lin * lin * from_int_roots({-3, 2});  // (t-1/2)^2 (t+3)(t-2)
    const RootSet rs = real_roots(p);
    REQUIRE(rs.roots.size() == 3);
    CHECK(rs.roots[0].iv.contains(Rational(-3)));
    CHECK(rs.roots[0].multiplicity == 1);
    CHECK(rs.roots[1].multiplicity == 2);
    CHECK(rs.roots[2].iv.contains(Rational(2)));
    // Rational roots snap to exact point intervals.
    CHECK(rs.roots[1].iv.is_point());
    CHECK(rs.roots[1].iv.lo == Rational(1, 2));
}

TEST_CASE("real_roots finds nothing for definite quadratics", "[roots]") {
    const UniPoly p(std::vector<Rational>{Rational(1), Rational(0), Rational(1)});  // t^2+1
    CHECK(real_roots(p).roots.empty());
    CHECK_FALSE(is_real_rooted(p));
}

TEST_CASE("is_real_rooted counts multiplicity", "[roots]") {
    CHECK(is_real_rooted(from_int_roots({0, 1, 2, 3})));
    const UniPoly lin = from_int_roots({5});
    CHECK(is_real_rooted(lin * lin * lin));
    // (t^2+1)(t-1): one real root of a cubic, not real-rooted.
    const UniPoly mixed =
        UniPoly(std::vector<Rational>{Rational(1), Rational(0), Rational(1)}) * from_int_roots({1});
    CHECK_FALSE(is_real_rooted(mixed));
    CHECK_THROWS_AS(is_real_rooted(UniPoly()), std::domain_error);
}

TEST_CASE("float companion oracle agrees with the exact count", "[roots][oracle]") {
    Rng rng(2024);
    int compared = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const int deg = 2 + static_cast<int>(rng.next_below(5));
        const UniPoly q = random_distinct_root_poly(rng, deg);
        const RootSet rs = real_roots(q);
        const auto oracle = real_root_count_float(q);
        if (!oracle) continue;  // oracle abstains near coincident roots
        ++compared;
        CHECK(static_cast<int>(rs.roots.size()) == *oracle);
    }
    CHECK(compared > 30);
}

TEST_CASE("refinement shrinks enclosures below the requested width", "[roots]") {
    const UniPoly q(std::vector<Rational>{Rational(-2), Rational(0), Rational(1)});  // t^2 - 2
    Tolerance tol;
    tol.root_width = Rational(1, Integer(1) << 80);
    const RootSet rs = real_roots(q, tol);
    REQUIRE(rs.roots.size() == 2);
    for (const RootInterval& r : rs.roots) {
        CHECK(r.iv.width() <= tol.root_width);
        CHECK(q(r.iv.lo) * q(r.iv.hi) <= 0);
    }
}

TEST_CASE("lambda_max returns the largest root", "[roots]") {
    const UniPoly q = from_int_roots({-7, -1, 4});
    const RootInterval top = lambda_max(q);
    CHECK(top.iv.contains(Rational(4)));
    CHECK(top.iv.is_point());
    CHECK_THROWS_AS(lambda_max(UniPoly(std::vector<Rational>{Rational(1), Rational(0), Rational(1)})),
                    std::domain_error);
}

TEST_CASE("gap_to_boundary is exactly zero at a repeated root", "[roots]") {
    const UniPoly lin = from_int_roots({1});
    const UniPoly p = lin * lin;  // critical point sits on the root
    const RatInterval g = gap_to_boundary(p);
    CHECK(g.lo == 0);
    CHECK(g.hi == 0);

    // Distinct roots: the polynomial is nonzero at its critical points.
    const UniPoly q = from_int_roots({0, 2});
    CHECK(gap_to_boundary(q).certainly_positive());

    CHECK_THROWS_AS(gap_to_boundary(from_int_roots({3})), std::domain_error);
}

TEST_CASE("interlacing check accepts distinct-root inputs and rejects others", "[roots]") {
    const InterlacingReport rep = interlacing_ratio_check(from_int_roots({-2, 0, 1, 5}));
    CHECK(rep.ok);
    CHECK(rep.pairs_checked == 3);
    CHECK(rep.violations.empty());
    // Observed ratios live inside the open band.
    CHECK(rep.min_ratio.lo > Rational(1, 4));
    CHECK(rep.max_ratio.hi < Rational(3, 4));

    const UniPoly lin = from_int_roots({1});
    CHECK_THROWS_AS(interlacing_ratio_check(lin * lin * from_int_roots({0})), std::domain_error);
    CHECK_THROWS_AS(interlacing_ratio_check(from_int_roots({0})), std::domain_error);
    const UniPoly notreal =
        UniPoly(std::vector<Rational>{Rational(1), Rational(0), Rational(1)}) * from_int_roots({0, 9});
    CHECK_THROWS_AS(interlacing_ratio_check(notreal), std::domain_error);
}

TEST_CASE("random_distinct_root_poly produces certified distinct real roots", "[roots][property]") {
    Rng rng(5);
    for (int trial = 0; trial < 25; ++trial) {
        const int deg = 2 + static_cast<int>(rng.next_below(9));
        const UniPoly q = random_distinct_root_poly(rng, deg);
        CHECK(q.degree() == deg);
        CHECK(q.leading() == 1);
        CHECK(gcd(q, q.derivative()).degree() == 0);
        CHECK(is_real_rooted(q));
    }
}
