#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hypcone/multipoly.hpp"
#include "hypcone/rational.hpp"

namespace hypcone {

// A d-matching on the vertex set {1, ..., n}: d pairwise disjoint edges
// (i, j) with i < j. Kept sorted by first endpoint so equal matchings
// compare equal structurally.
struct Matching {
    std::vector<std::pair<int, int>> edges;

    Matching() = default;
    explicit Matching(std::vector<std::pair<int, int>> e) : edges(std::move(e)) { canonicalize(); }

    int size() const { return static_cast<int>(edges.size()); }

    void canonicalize() {
        for (auto& [a, b] : edges) {
            if (a > b) std::swap(a, b);
        }
        std::sort(edges.begin(), edges.end());
    }

    /// Throws unless this is a valid matching on {1, ..., n}.
    void validate(int n) const {
        std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
        for (const auto& [a, b] : edges) {
            if (a < 1 || b < 1 || a > n || b > n)
                throw std::invalid_argument("Matching: endpoint outside 1..n");
            if (a == b) throw std::invalid_argument("Matching: self-loop");
            if (seen[a] || seen[b]) throw std::invalid_argument("Matching: shared endpoint");
            seen[a] = seen[b] = 1;
        }
    }

    friend bool operator==(const Matching&, const Matching&) = default;
    friend auto operator<=>(const Matching&, const Matching&) = default;
};

/// True iff every edge of M has exactly one endpoint in S.
/// S must be a d-set matching the edge count.
inline bool fully_crosses(const Matching& m, const std::vector<int>& s) {
    if (static_cast<int>(s.size()) != m.size())
        throw std::invalid_argument("fully_crosses: |S| must equal the edge count");
    auto in_s = [&s](int v) { return std::binary_search(s.begin(), s.end(), v); };
    for (const auto& [a, b] : m.edges) {
        if (in_s(a) == in_s(b)) return false;
    }
    return true;
}

/// q_M = prod over edges (i,j) of (x_i - x_j); multilinear of degree d,
/// coefficients in {-1, 0, +1}, and translation invariant along 1.
inline MultiPoly matching_poly(const Matching& m, int n) {
    m.validate(n);
    if (m.size() == 0) throw std::invalid_argument("matching_poly: empty matching");
    MultiPoly acc(n, 0);
    acc.add_term(std::vector<int>(n, 0), 1);
    for (const auto& [a, b] : m.edges) {
        MultiPoly factor(n, 1);
        std::vector<int> e(n, 0);
        e[a - 1] = 1;
        factor.add_term(e, 1);
        e[a - 1] = 0;
        e[b - 1] = 1;
        factor.add_term(e, -1);
        acc = acc * factor;
    }
    return acc;
}

/// Number of d-matchings on n vertices: C(n, 2d) * (2d)! / (2^d * d!).
inline Integer count_matchings(int n, int d) {
    if (d < 0 || 2 * d > n) return 0;
    return binomial(n, 2 * d) * factorial(2 * d) / (pow_int(2, d) * factorial(d));
}

/// Matchings fully crossing a fixed d-set: each edge pairs an S-vertex with
/// a distinct outside vertex, giving C(n-d, d) * d! of them.
inline Integer crossing_count(int n, int d) {
    if (d < 0 || 2 * d > n) return 0;
    return binomial(n - d, d) * factorial(d);
}

/// All d-matchings on {1, ..., n}, in a fixed deterministic order: edges are
/// listed with strictly increasing first endpoints, and branches explored in
/// lexicographic endpoint order.
inline std::vector<Matching> enumerate_matchings(int n, int d) {
    std::vector<Matching> out;
    if (d < 0 || 2 * d > n) return out;
    std::vector<std::pair<int, int>> edges;
    std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
    auto rec = [&](auto&& self, int start, int remaining) -> void {
        if (remaining == 0) {
            out.emplace_back();
            out.back().edges = edges;
            return;
        }
        for (int a = start; a <= n; ++a) {
            if (used[a]) continue;
            used[a] = 1;
            for (int b = a + 1; b <= n; ++b) {
                if (used[b]) continue;
                used[b] = 1;
                edges.emplace_back(a, b);
                self(self, a + 1, remaining - 1);
                edges.pop_back();
                used[b] = 0;
            }
            used[a] = 0;
        }
    };
    rec(rec, 1, d);
    return out;
}

/// The matching at position `rank` in enumerate_matchings(n, d) order,
/// computed without enumerating. Lets the sampler run the independent
/// inclusion model over an index space too large to materialize.
inline Matching unrank_matching(int n, int d, const Integer& rank) {
    if (rank < 0 || rank >= count_matchings(n, d))
        throw std::out_of_range("unrank_matching: rank outside the enumeration");
    // State: available vertices in increasing order. Once an edge with first
    // endpoint a is placed, vertices below a can never be used again, so the
    // completion count depends only on how many vertices remain.
    std::vector<int> avail(n);
    for (int i = 0; i < n; ++i) avail[i] = i + 1;
    Integer r = rank;
    std::vector<std::pair<int, int>> edges;
    int remaining = d;
    while (remaining > 0) {
        const int m = static_cast<int>(avail.size());
        bool placed = false;
        for (int i = 0; i < m && !placed; ++i) {
            for (int j = i + 1; j < m; ++j) {
                const Integer subtree = count_matchings(m - i - 2, remaining - 1);
                if (r < subtree) {
                    edges.emplace_back(avail[i], avail[j]);
                    std::vector<int> next(avail.begin() + i + 1, avail.end());
                    next.erase(next.begin() + (j - i - 1));
                    avail = std::move(next);
                    placed = true;
                    break;
                }
                r -= subtree;
            }
        }
        if (!placed) throw std::logic_error("unrank_matching: rank arithmetic out of sync");
        --remaining;
    }
    Matching out;
    out.edges = std::move(edges);
    return out;
}

/// All d-subsets of {1, ..., n} in lexicographic order.
inline std::vector<std::vector<int>> enumerate_subsets(int n, int d) {
    std::vector<std::vector<int>> out;
    if (d < 0 || d > n) return out;
    std::vector<int> pick(d);
    for (int i = 0; i < d; ++i) pick[i] = i + 1;
    for (;;) {
        out.push_back(pick);
        if (d == 0) break;
        int j = d - 1;
        while (j >= 0 && pick[j] == n - d + j + 1) --j;
        if (j < 0) break;
        ++pick[j];
        for (int k = j + 1; k < d; ++k) pick[k] = pick[k - 1] + 1;
    }
    return out;
}

/// Indicator vector of S as a rational point (1-based S over n coordinates).
inline std::vector<Rational> indicator(const std::vector<int>& s, int n) {
    std::vector<Rational> x(n, Rational(0));
    for (const int v : s) {
        if (v < 1 || v > n) throw std::invalid_argument("indicator: vertex outside 1..n");
        x[v - 1] = 1;
    }
    return x;
}

}  // namespace hypcone
