#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "hypcone/matching.hpp"

using namespace hypcone;

TEST_CASE("matching counts", "[matching]") {
    // d disjoint edges on n labelled vertices: C(n,2)C(n-2,2).../d!
    CHECK(count_matchings(4, 1) == 6);
    CHECK(count_matchings(4, 2) == 3);
    CHECK(count_matchings(6, 2) == 45);
    CHECK(count_matchings(6, 3) == 15);
    CHECK(count_matchings(8, 2) == 210);
}

TEST_CASE("enumerate_matchings is exhaustive and duplicate-free", "[matching]") {
    const auto all = enumerate_matchings(6, 2);
    CHECK(Integer(static_cast<long>(all.size())) == count_matchings(6, 2));
    std::set<std::vector<std::pair<int, int>>> seen;
    for (const Matching& m : all) {
        CHECK(m.size() == 2);
        Matching c = m;
        c.canonicalize();
        CHECK(c.edges == m.edges);  // enumeration emits canonical form
        seen.insert(m.edges);
    }
    CHECK(seen.size() == all.size());
}

TEST_CASE("unrank agrees with enumeration", "[matching]") {
    const auto all = enumerate_matchings(6, 2);
    for (std::size_t i = 0; i < all.size(); ++i) {
        const Matching m = unrank_matching(6, 2, Integer(static_cast<long>(i)));
        CHECK(m.edges == all[i].edges);
    }
    CHECK_THROWS_AS(unrank_matching(6, 2, count_matchings(6, 2)), std::out_of_range);
}

TEST_CASE("validate rejects malformed matchings", "[matching]") {
    Matching overlap{{{1, 2}, {2, 3}}};
    CHECK_THROWS_AS(overlap.validate(6), std::invalid_argument);
    Matching range{{{1, 7}}};
    CHECK_THROWS_AS(range.validate(6), std::invalid_argument);
    Matching zero{{{0, 3}}};  // vertices are 1-based
    CHECK_THROWS_AS(zero.validate(6), std::invalid_argument);
    Matching loop{{{2, 2}}};
    CHECK_THROWS_AS(loop.validate(6), std::invalid_argument);
    Matching fine{{{1, 2}, {3, 4}}};
    CHECK_NOTHROW(fine.validate(6));
}

TEST_CASE("fully_crosses requires exactly one endpoint per edge", "[matching]") {
    const Matching m{{{1, 2}, {3, 4}}};
    CHECK(fully_crosses(m, {1, 3}));
    CHECK(fully_crosses(m, {2, 4}));
    CHECK_FALSE(fully_crosses(m, {1, 2}));  // both endpoints of one edge
    CHECK_FALSE(fully_crosses(m, {1, 5}));  // misses the second edge
    CHECK_FALSE(fully_crosses(m, {5, 6}));
}

TEST_CASE("crossing_count matches brute force", "[matching]") {
    // Number of d-matchings fully crossed by a fixed d-set.
    for (auto [n, d] : {std::pair{4, 2}, {6, 2}, {6, 3}, {8, 2}}) {
        std::vector<int> s;
        for (int i = 1; i <= d; ++i) s.push_back(i);
        int brute = 0;
        for (const Matching& m : enumerate_matchings(n, d))
            if (fully_crosses(m, s)) ++brute;
        CHECK(crossing_count(n, d) == brute);
    }
}

TEST_CASE("matching polynomial expands the edge differences", "[matching]") {
    const Matching m{{{1, 2}, {3, 4}}};
    const MultiPoly q = matching_poly(m, 4);
    CHECK(q.degree() == 2);

    const std::vector<Rational> x{Rational(2), Rational(-1), Rational(5), Rational(1)};
    CHECK(q(x) == Rational(3) * Rational(4));

    // On a fully crossing indicator the value is +-1.
    CHECK(q(indicator({1, 3}, 4)) == 1);
    CHECK(q(indicator({2, 3}, 4)) == -1);
    // On a non-crossing indicator it vanishes.
    CHECK(q(indicator({1, 2}, 4)) == 0);
}

TEST_CASE("indicator builds 0/1 vectors", "[matching]") {
    const auto v = indicator({2, 4}, 5);
    REQUIRE(v.size() == 5);
    CHECK(v[0] == 0);
    CHECK(v[1] == 1);
    CHECK(v[2] == 0);
    CHECK(v[3] == 1);
    CHECK(v[4] == 0);
    CHECK_THROWS_AS(indicator({0, 2}, 5), std::invalid_argument);
}
