#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypcone/hyperbolicity.hpp"
#include "hypcone/rational.hpp"

namespace hypcone {

/// Directed enclosure of a base-2 logarithm.
struct LogPair {
    double lo = 0.0;
    double hi = 0.0;
};

inline LogPair log_pair(const Rational& v) { return {log2_lower(v), log2_upper(v)}; }

inline LogPair operator+(const LogPair& a, const LogPair& b) { return {a.lo + b.lo, a.hi + b.hi}; }
inline LogPair operator-(const LogPair& a, const LogPair& b) { return {a.lo - b.hi, a.hi - b.lo}; }
inline LogPair operator*(double c, const LogPair& a) {
    if (c < 0) return {c * a.hi, c * a.lo};
    return {c * a.lo, c * a.hi};
}

struct ChainEntry {
    std::string name;
    bool has_exact = false;
    Rational exact = 0;       // the constant itself, when representable
    double exact_log2 = 0.0;  // log2 of the exact value
    LogPair composed;         // log2 assembled from factor logs, directed
    std::string source;       // "closed-form" or "stated"
};

struct BoundChain {
    int n = 0, d = 0, b = 0;
    int family_size = 0;
    std::vector<ChainEntry> entries;
    LogPair packing_count_log2;         // log2 of (sqrt(B)/eta)^(n B^2)
    int b_min = -1;                     // smallest B certified to satisfy the packing inequality
    double headline_exponent_log2 = 0;  // leading log2-exponent of the implied size bound
    bool family_exceeds_packing = false;  // 2^family_size > packing count, certified
    bool floor_ge_gamma = false;          // separation floor >= the stated gamma target
    double max_rel_err = 0.0;             // composed vs exact log2 agreement
    bool consistent = false;              // max_rel_err <= 1e-12
};

namespace detail {

inline ChainEntry exact_entry(std::string name, Rational exact, LogPair composed,
                              std::string source) {
    ChainEntry e;
    e.name = std::move(name);
    e.has_exact = true;
    e.exact = std::move(exact);
    e.exact_log2 = log2_approx(e.exact);
    e.composed = composed;
    e.source = std::move(source);
    return e;
}

}  // namespace detail

/// Every constant of the packing argument, evaluated twice: exactly as a
/// rational wherever representable, and in log2 space composed from factor
/// logarithms with directed rounding. The two paths cross-check each other;
/// verdicts use only the directed bounds.
inline BoundChain packing_bound(int n, int d, int b, int family_size) {
    if (n < 2 || d < 1 || d >= n || b < 1 || family_size < 1)
        throw std::invalid_argument("packing_bound: inputs must be positive with 1 <= d < n");

    BoundChain chain;
    chain.n = n;
    chain.d = d;
    chain.b = b;
    chain.family_size = family_size;

    const LogPair log_n = log_pair(Rational(n));
    const LogPair log_c = log_pair(Rational(binomial(n, d)));
    const LogPair log_d = log_pair(Rational(d));
    const LogPair log_nfam = log_pair(Rational(family_size));
    const LogPair log_b = log_pair(Rational(b));

    // R = C(n,d) / (2^n * n^{(d+1)(n-d)})
    const Rational r_exact = perturbation_budget(n, d).value;
    const LogPair r_log = log_c - LogPair{static_cast<double>(n), static_cast<double>(n)} -
                          static_cast<double>((d + 1) * (n - d)) * log_n;
    chain.entries.push_back(detail::exact_entry("R", r_exact, r_log, "closed-form"));

    // R_2 = 1 / (4 * n^{d(n-d)} * N * d * sqrt(n)). The composed path uses
    // the same rational sqrt replacement as the exact path, so the two
    // describe one constant.
    const Rational r2_exact = separation_budget(n, d, family_size).value;
    const LogPair r2_log = LogPair{0, 0} - LogPair{2, 2} -
                           static_cast<double>(d * (n - d)) * log_n - log_nfam - log_d -
                           log_pair(sqrt_upper(Rational(n)));
    chain.entries.push_back(detail::exact_entry("R2", r2_exact, r2_log, "closed-form"));

    // eps = min(R, R_2) / 2
    const Rational eps_exact = default_epsilon(n, d, family_size);
    const LogPair eps_log = {std::min(r_log.lo, r2_log.lo) - 1, std::min(r_log.hi, r2_log.hi) - 1};
    chain.entries.push_back(detail::exact_entry("eps", eps_exact, eps_log, "closed-form"));

    // Delta = eps / (C(n,d) * d * e), composed with the same rational
    // replacement for e as the exact path.
    const Rational delta_exact = separation_threshold(n, d, eps_exact);
    const LogPair delta_log = eps_log - log_c - log_d - log_pair(euler_upper());
    chain.entries.push_back(detail::exact_entry("Delta", delta_exact, delta_log, "closed-form"));

    // floor = Delta / (18 * n^{d(n-d)} * N * n)
    const Rational floor_exact =
        delta_exact /
        (Rational(18) * pow_int(n, static_cast<unsigned>(d * (n - d))) * family_size * n);
    const LogPair floor_log = delta_log - log_pair(Rational(18)) -
                              static_cast<double>(d * (n - d)) * log_n - log_nfam - log_n;
    chain.entries.push_back(detail::exact_entry("floor", floor_exact, floor_log, "closed-form"));

    // gamma = 1/n^{3nd}, eta = 1/n^{4nd}: the stated separation and
    // approximation targets.
    const Rational gamma_exact =
        Rational(1) / pow_int(n, static_cast<unsigned>(3 * n * d));
    const LogPair gamma_log = -static_cast<double>(3 * n * d) * log_n;
    chain.entries.push_back(detail::exact_entry("gamma", gamma_exact, gamma_log, "stated"));

    const Rational eta_exact = Rational(1) / pow_int(n, static_cast<unsigned>(4 * n * d));
    const LogPair eta_log = -static_cast<double>(4 * n * d) * log_n;
    chain.entries.push_back(detail::exact_entry("eta", eta_exact, eta_log, "stated"));

    // Packing count (sqrt(B)/eta)^{n B^2}: log2 space only, the value is
    // astronomically large.
    const double npow = static_cast<double>(n) * b * b;
    chain.packing_count_log2 = npow * (0.5 * log_b + LogPair{0, 0} - eta_log);

    chain.family_exceeds_packing =
        static_cast<double>(family_size) > chain.packing_count_log2.hi;

    chain.floor_ge_gamma = log2_lower(floor_exact) >= gamma_log.hi;

    // Smallest B certified to satisfy B^2 log2(B) >= N / log2(n^{3/2}/gamma);
    // the right side is rounded up so the reported B provably suffices.
    const double rhs_hi = family_size / ((1.5 + 3.0 * n * d) * log_n.lo);
    for (int cand = 2; cand <= (1 << 20); ++cand) {
        const double lhs = static_cast<double>(cand) * cand * log2_lower(Rational(cand));
        if (lhs >= rhs_hi) {
            chain.b_min = cand;
            break;
        }
    }

    chain.headline_exponent_log2 = 0.5 * log2_approx(Rational(family_size));

    for (const ChainEntry& e : chain.entries) {
        const double mid = (e.composed.lo + e.composed.hi) / 2;
        const double err = std::abs(mid - e.exact_log2) / std::max(1.0, std::abs(e.exact_log2));
        chain.max_rel_err = std::max(chain.max_rel_err, err);
    }
    chain.consistent = chain.max_rel_err <= 1e-12;
    return chain;
}

}  // namespace hypcone
