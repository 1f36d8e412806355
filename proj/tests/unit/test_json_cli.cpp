#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "hypcone/hdist.hpp"
#include "hypcone/json_io.hpp"

using namespace hypcone;

TEST_CASE("sha1 known vectors", "[json]") {
    CHECK(sha1_hex("") == "da39a3ee5e6b4b0d3255bfef95601890afd80709");
    CHECK(sha1_hex("abc") == "a9993e364706816aba3e25717850c26c9cd0d89d");
    CHECK(sha1_hex("The quick brown fox jumps over the lazy dog") ==
          "2fd4e1c67a2d28fced849ee1bb76e7391b93eb12");
}

TEST_CASE("rational strings round trip", "[json]") {
    CHECK(to_string(Rational(-5, 7)) == "-5/7");
    CHECK(to_string(Rational(4)) == "4");
    CHECK(parse_rational("-5/7") == Rational(-5, 7));
    CHECK(parse_rational("42") == Rational(42));
    CHECK(parse_rational("0.125") == Rational(1, 8));
    CHECK(parse_rational(to_string(Rational(123456789, 987654321))) ==
          Rational(123456789, 987654321));
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
}

TEST_CASE("matching family round trips through json", "[json]") {
    const MatchingFamily fam = sample_family(6, 2, 4);
    const MatchingFamily back = family_from_json(family_to_json(fam));
    CHECK(back == fam);
    CHECK(back.seed == fam.seed);
    CHECK(back.crossing_count == fam.crossing_count);
}

TEST_CASE("polynomials round trip with rational coefficients", "[json]") {
    const MatchingFamily fam = sample_family(4, 2, 9);
    const std::vector<std::uint8_t> all(fam.matchings.size(), 1);
    const MultiPoly p = make_perturbed(fam, all, Rational(1, 1000)).poly;
    const MultiPoly back = poly_from_json(poly_to_json(p));
    CHECK(back == p);
    CHECK(poly_from_json(poly_to_json(elementary_symmetric(5, 3))) ==
          elementary_symmetric(5, 3));
}

TEST_CASE("float rep round trips bit-exactly", "[json]") {
    const SpectraRep a = random_normalized_rep(3, 3, 5);
    REQUIRE_FALSE(a.exact.has_value());
    const json j = rep_to_json(a);
    const SpectraRep back = rep_from_json(j);
    CHECK(mdist(a, back) == 0.0);
    CHECK(back.normalized == a.normalized);
    CHECK_FALSE(back.exact.has_value());
    // Serialization to text and back preserves every double.
    const SpectraRep back2 = rep_from_json(json::parse(j.dump()));
    CHECK(mdist(a, back2) == 0.0);
}

TEST_CASE("exact rep keeps its rational mirror through json", "[json]") {
    const SpectraRep a = diagonal_rep(3);
    const json j = rep_to_json(a);
    CHECK(j.at("mats")[0][0].is_string());
    const SpectraRep back = rep_from_json(j);
    REQUIRE(back.exact.has_value());
    CHECK(*back.exact == *a.exact);
    CHECK(mdist(a, back) == 0.0);

    json broken = j;
    broken["mats"].erase(2);  // drop one matrix: count no longer matches n
    CHECK_THROWS_AS(rep_from_json(broken), std::invalid_argument);
}

TEST_CASE("interval serialization carries exact and float forms", "[json]") {
    const RatInterval iv(Rational(1, 3), Rational(1, 2));
    const json j = interval_to_json(iv);
    CHECK(j.at("lo") == "1/3");
    CHECK(j.at("hi") == "1/2");
    CHECK(j.at("lo_f").get<double>() == Catch::Approx(1.0 / 3.0));
    CHECK(j.at("hi_f").get<double>() == 0.5);
}

TEST_CASE("report envelope is stable and self-hashing", "[json]") {
    json params;
    params["n"] = 6;
    params["d"] = 2;
    json body;
    body["ok"] = true;
    const json rep = make_report("family", params, body);
    CHECK(rep.at("op") == "family");
    CHECK(rep.at("norm_convention") == "l2");
    CHECK(rep.at("input_sha1") == sha1_hex(params.dump()));
    CHECK(rep.at("params") == params);
    CHECK(rep.at("report").at("ok") == true);
    // ordered_json: the envelope serializes with a fixed key order.
    CHECK(rep.dump().rfind("{\"op\":", 0) == 0);
    CHECK(make_report("family", params, body) == rep);
}

TEST_CASE("bound chain serialization exposes the full entry table", "[json]") {
    const json j = chain_to_json(packing_bound(6, 2, 3, 1));
    CHECK(j.at("n") == 6);
    CHECK(j.at("B") == 3);
    REQUIRE(j.at("entries").size() == 7);
    const json& r = j.at("entries")[0];
    CHECK(r.at("name") == "R");
    CHECK(r.at("source") == "closed-form");
    CHECK(r.contains("exact"));
    CHECK(r.at("log2").contains("lo"));
    CHECK(r.at("log2").contains("hi"));
    for (const char* key : {"packing_count_log2", "b_min", "headline_exponent_log2",
                            "family_exceeds_packing", "floor_ge_gamma",
                            "log2_consistency_rel_err", "log2_consistent"})
        CHECK(j.contains(key));
}
