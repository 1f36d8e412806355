#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypcone/matching.hpp"
#include "hypcone/multipoly.hpp"
#include "hypcone/rational.hpp"
#include "hypcone/rng.hpp"

namespace hypcone {

// The sampled pair (matchings, good sets): every good set is fully crossed
// by exactly one matching of the family, and every matching fully crosses
// at least one good set.
struct MatchingFamily {
    int n = 0;
    int d = 0;
    std::uint64_t seed = 0;
    std::vector<Matching> matchings;
    std::vector<std::vector<int>> good_sets;  // sorted d-subsets of 1..n
    Integer crossing_count = 0;               // matchings crossing a fixed d-set
    int attempts = 0;                         // sampling rounds until nonempty

    int size() const { return static_cast<int>(matchings.size()); }

    friend bool operator==(const MatchingFamily& a, const MatchingFamily& b) {
        return a.n == b.n && a.d == b.d && a.matchings == b.matchings &&
               a.good_sets == b.good_sets;
    }
};

struct FamilyCheck {
    bool ok = false;
    std::vector<std::string> violations;
};

namespace detail {

inline std::string set_to_string(const std::vector<int>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "}";
}

}  // namespace detail

/// Exhaustive verification of the family invariants, reported rather than
/// thrown: unique crossing per good set, coverage of every matching, and a
/// nonzero q_M value at the unique crosser's indicator point.
inline FamilyCheck verify_family(const MatchingFamily& fam) {
    FamilyCheck out;
    auto fail = [&out](std::string msg) { out.violations.push_back(std::move(msg)); };

    if (fam.n < 2 || fam.d < 1 || 2 * fam.d > fam.n) fail("parameters infeasible");
    if (fam.matchings.empty()) fail("no matchings");
    if (fam.good_sets.empty()) fail("no good sets");

    for (std::size_t i = 0; i < fam.matchings.size(); ++i) {
        try {
            fam.matchings[i].validate(fam.n);
            if (fam.matchings[i].size() != fam.d) throw std::invalid_argument("wrong edge count");
        } catch (const std::exception& e) {
            fail("matching " + std::to_string(i) + " invalid: " + e.what());
        }
        for (std::size_t j = i + 1; j < fam.matchings.size(); ++j) {
            if (fam.matchings[i] == fam.matchings[j])
                fail("duplicate matchings " + std::to_string(i) + ", " + std::to_string(j));
        }
    }
    for (std::size_t i = 0; i < fam.good_sets.size(); ++i) {
        const auto& s = fam.good_sets[i];
        if (static_cast<int>(s.size()) != fam.d || !std::is_sorted(s.begin(), s.end()) ||
            std::adjacent_find(s.begin(), s.end()) != s.end() || s.front() < 1 || s.back() > fam.n) {
            fail("good set " + detail::set_to_string(s) + " malformed");
            continue;
        }
        for (std::size_t j = i + 1; j < fam.good_sets.size(); ++j) {
            if (s == fam.good_sets[j]) fail("duplicate good set " + detail::set_to_string(s));
        }
    }
    if (!out.violations.empty()) return out;

    std::vector<int> coverage(fam.matchings.size(), 0);
    for (const auto& s : fam.good_sets) {
        int crossers = 0;
        std::size_t who = 0;
        for (std::size_t m = 0; m < fam.matchings.size(); ++m) {
            if (fully_crosses(fam.matchings[m], s)) {
                ++crossers;
                who = m;
            }
        }
        if (crossers != 1) {
            fail("good set " + detail::set_to_string(s) + " crossed by " +
                 std::to_string(crossers) + " matchings, expected 1");
            continue;
        }
        ++coverage[who];
        // The unique crosser must also witness a nonzero polynomial value.
        const Rational v = matching_poly(fam.matchings[who], fam.n)(indicator(s, fam.n));
        if (v == 0)
            fail("q_M vanishes at the indicator of " + detail::set_to_string(s));
    }
    for (std::size_t m = 0; m < fam.matchings.size(); ++m) {
        if (coverage[m] == 0) fail("matching " + std::to_string(m) + " crosses no good set");
    }
    out.ok = out.violations.empty();
    return out;
}

struct SampleOptions {
    Integer enumeration_cap = 10000000;  // enumerate when the matching count fits
    int max_attempts = 1000;
};

/// Randomized construction: include every d-matching independently with
/// probability 1/(2E) where E counts the matchings crossing a fixed d-set,
/// keep the d-sets crossed exactly once, prune matchings that cross none of
/// them, and retry with fresh randomness until something survives.
inline MatchingFamily sample_family(int n, int d, std::uint64_t seed, const SampleOptions& opts = {}) {
    if (d < 1 || 2 * d > n)
        throw std::invalid_argument("sample_family: need 1 <= 2d <= n");
    const Integer total = count_matchings(n, d);
    const Integer e_count = crossing_count(n, d);
    const auto subsets = enumerate_subsets(n, d);
    const bool enumerate = total <= opts.enumeration_cap;
    std::vector<Matching> universe;
    if (enumerate) universe = enumerate_matchings(n, d);

    Rng rng = rng_stream(seed, "family-sample");
    // Inclusion test, exact: a 64-bit draw x includes a matching iff
    // x * 2E < 2^64, i.e. with probability floor-free 1/(2E).
    const Integer two64 = Integer(1) << 64;
    auto include = [&]() { return Integer(rng.next_u64()) * (2 * e_count) < two64; };

    for (int attempt = 1; attempt <= opts.max_attempts; ++attempt) {
        std::vector<Matching> sampled;
        if (enumerate) {
            for (const Matching& m : universe) {
                if (include()) sampled.push_back(m);
            }
        } else {
            // Skip-sampling over the enumeration index space: geometric gaps
            // between successes of Bernoulli(1/(2E)). Matches the independent
            // inclusion model up to double-precision rounding of the gap law;
            // only reachable above the enumeration cap.
            const double p = (Rational(1, 2 * e_count)).convert_to<double>();
            const double denom = std::log1p(-p);
            Integer idx = 0;
            for (;;) {
                double u = rng.next_double();
                if (u <= 0.0) u = 0x1.0p-53;
                const double gap = std::floor(std::log(u) / denom);
                if (gap > 1e18) break;
                idx += Integer(static_cast<std::uint64_t>(gap));
                if (idx >= total) break;
                sampled.push_back(unrank_matching(n, d, idx));
                idx += 1;
            }
        }

        std::vector<std::vector<int>> good;
        for (const auto& s : subsets) {
            int deg = 0;
            for (const Matching& m : sampled) {
                if (fully_crosses(m, s) && ++deg > 1) break;
            }
            if (deg == 1) good.push_back(s);
        }
        std::vector<Matching> kept;
        for (const Matching& m : sampled) {
            for (const auto& s : good) {
                if (fully_crosses(m, s)) {
                    kept.push_back(m);
                    break;
                }
            }
        }
        if (!kept.empty() && !good.empty()) {
            MatchingFamily fam;
            fam.n = n;
            fam.d = d;
            fam.seed = seed;
            fam.matchings = std::move(kept);
            fam.good_sets = std::move(good);
            fam.crossing_count = e_count;
            fam.attempts = attempt;
            return fam;
        }
    }
    throw std::runtime_error("sample_family: no nonempty family after " +
                             std::to_string(opts.max_attempts) + " attempts (n=" +
                             std::to_string(n) + ", d=" + std::to_string(d) + ")");
}

/// The floor the probabilistic argument guarantees in expectation-land:
/// C(n,d)/(4*2^d). Often below 1 at desk scale; reported, never asserted.
inline Rational family_size_floor(int n, int d) {
    return Rational(binomial(n, d), 4 * pow_int(2, d));
}

}  // namespace hypcone
