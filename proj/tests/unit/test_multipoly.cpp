#include <catch2/catch_amalgamated.hpp>

#include "hypcone/multipoly.hpp"
#include "hypcone/rng.hpp"

using namespace hypcone;

TEST_CASE("elementary symmetric polynomials evaluate correctly", "[multipoly]") {
    const MultiPoly e2 = elementary_symmetric(3, 2);
    CHECK(e2.degree() == 2);
    CHECK(e2.term_count() == 3);

    const std::vector<Rational> x{Rational(1), Rational(2), Rational(3)};
    CHECK(e2(x) == Rational(1 * 2 + 1 * 3 + 2 * 3));

    const MultiPoly e1 = elementary_symmetric(4, 1);
    const std::vector<Rational> y{Rational(1), Rational(-1), Rational(5), Rational(1, 2)};
    CHECK(e1(y) == Rational(11, 2));

    const MultiPoly e4 = elementary_symmetric(4, 4);
    CHECK(e4(y) == Rational(-5, 2));
}

TEST_CASE("homogeneity is enforced on insertion", "[multipoly]") {
    MultiPoly p(3, 2);
    CHECK_THROWS_AS(p.add_term({1, 0, 0}, Rational(1)), std::invalid_argument);
    CHECK_THROWS_AS(p.add_term({1, 1}, Rational(1)), std::invalid_argument);
    p.add_term({1, 1, 0}, Rational(2));
    p.add_term({1, 1, 0}, Rational(-2));
    CHECK(p.is_zero());  // cancelling coefficients drop the term
}

TEST_CASE("Euler identity holds for homogeneous polynomials", "[multipoly][property]") {
    // <grad p(x), x> = deg(p) * p(x) for every homogeneous p.
    for (int d = 1; d <= 3; ++d) {
        const MultiPoly p = elementary_symmetric(5, d);
        Rng rng = rng_stream(17, "euler", static_cast<std::uint64_t>(d));
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<Rational> x;
            for (int i = 0; i < 5; ++i)
                x.emplace_back(Integer(rng.next_below(41)) - 20, Integer(1 + rng.next_below(5)));
            Rational dot(0);
            const auto g = p.gradient(x);
            for (int i = 0; i < 5; ++i) dot += g[i] * x[i];
            CHECK(dot == Rational(d) * p(x));
        }
    }
}

TEST_CASE("partial derivatives match finite differences on monomials", "[multipoly]") {
    MultiPoly p(2, 3);
    p.add_term({2, 1}, Rational(4));  // 4 x^2 y
    const MultiPoly px = p.partial(0);
    const MultiPoly py = p.partial(1);
    const std::vector<Rational> at{Rational(3), Rational(-2)};
    CHECK(px(at) == Rational(8 * 3 * -2));
    CHECK(py(at) == Rational(4 * 9));
}

TEST_CASE("interval evaluation encloses rational evaluation", "[multipoly]") {
    const MultiPoly p = elementary_symmetric(4, 2);
    std::vector<RatInterval> box;
    std::vector<Rational> mid;
    for (int i = 0; i < 4; ++i) {
        box.emplace_back(Rational(i - 2), Rational(i - 1));
        mid.push_back(box.back().mid());
    }
    CHECK(p(box).contains(p(mid)));
}

TEST_CASE("restrict_line matches direct substitution", "[multipoly]") {
    const MultiPoly p = elementary_symmetric(4, 2);
    const std::vector<Rational> e(4, Rational(1));
    const std::vector<Rational> x{Rational(1), Rational(0), Rational(1), Rational(0)};
    const UniPoly r = restrict_line(p, e, x);
    CHECK(r.degree() == 2);
    for (int t = -3; t <= 3; ++t) {
        std::vector<Rational> pt;
        for (int i = 0; i < 4; ++i) pt.push_back(x[i] + Rational(t) * e[i]);
        CHECK(r(Rational(t)) == p(pt));
    }
}

TEST_CASE("max_monomial picks the largest degree-d product", "[multipoly]") {
    const std::vector<Rational> x{Rational(3), Rational(-4), Rational(1, 2)};
    CHECK(max_monomial(x, 1) == 4);
    CHECK(max_monomial(x, 2) == 12);
    CHECK(max_monomial(x, 3) == 6);
}
