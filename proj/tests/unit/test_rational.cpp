#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hypcone/rational.hpp"

using namespace hypcone;

TEST_CASE("parse_rational handles integer, fraction and decimal forms", "[rational]") {
    CHECK(parse_rational("7") == Rational(7));
    CHECK(parse_rational("-3/4") == Rational(-3, 4));
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-0.125") == Rational(-1, 8));
    CHECK(parse_rational("2.50") == Rational(5, 2));

    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
}

TEST_CASE("to_string round trips through parse_rational", "[rational]") {
    for (const char* s : {"0", "-17", "22/7", "-355/113"}) {
        const Rational r = parse_rational(s);
        CHECK(parse_rational(to_string(r)) == r);
    }
    CHECK(to_string(Rational(4, 2)) == "2");
}

TEST_CASE("pow_rat matches repeated multiplication", "[rational]") {
    CHECK(pow_rat(Rational(2, 3), 3) == Rational(8, 27));
    CHECK(pow_rat(Rational(-2), 4) == Rational(16));
    CHECK(pow_rat(Rational(5, 7), 0) == Rational(1));
    CHECK(pow_rat(Rational(2), -3) == Rational(1, 8));
    CHECK(pow_rat(Rational(0), 5) == Rational(0));
    CHECK_THROWS_AS(pow_rat(Rational(0), -1), std::domain_error);
}

TEST_CASE("binomial spot values", "[rational]") {
    CHECK(binomial(6, 2) == 15);
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(10, 0) == 1);
    CHECK(binomial(12, 6) == 924);
}

TEST_CASE("sqrt bounds bracket the true square root tightly", "[rational]") {
    for (const Rational v : {Rational(2), Rational(6), Rational(1, 4), Rational(1000000),
                             Rational(17, 5)}) {
        const Rational lo = sqrt_lower(v);
        const Rational hi = sqrt_upper(v);
        CHECK(lo > 0);
        CHECK(lo * lo <= v);
        CHECK(hi * hi >= v);
        // 40 fractional bits: the bracket is far tighter than 1e-10 relative.
        CHECK(hi - lo <= v * Rational(1, Integer(1) << 30) + Rational(1, Integer(1) << 30));
    }
}

TEST_CASE("euler_upper overestimates e by less than 1e-8", "[rational]") {
    const double e = 2.718281828459045;
    const double up = euler_upper().convert_to<double>();
    CHECK(up > e);
    CHECK(up < e + 1e-8);
}

TEST_CASE("log2 bounds bracket the float log2", "[rational]") {
    for (const Rational v : {Rational(1), Rational(2), Rational(3, 7), Rational(1024),
                             pow_rat(Rational(6), 48), pow_rat(Rational(10), -30)}) {
        const double lo = log2_lower(v);
        const double hi = log2_upper(v);
        const double mid = log2_approx(v);
        CHECK(lo <= mid);
        CHECK(mid <= hi);
        CHECK(hi - lo < 1e-9 + 1e-10 * std::abs(mid));
    }
    // Moderate values can be checked against the double log directly.
    CHECK(log2_lower(Rational(1024)) <= 10.0);
    CHECK(log2_upper(Rational(1024)) >= 10.0);
    CHECK(std::abs(log2_approx(Rational(3)) - std::log2(3.0)) < 1e-12);
}
