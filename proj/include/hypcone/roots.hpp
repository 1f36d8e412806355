#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypcone/interval.hpp"
#include "hypcone/rational.hpp"
#include "hypcone/rng.hpp"
#include "hypcone/unipoly.hpp"

namespace hypcone {

struct Tolerance {
    // Maximum width of an isolating interval after refinement.
    Rational root_width = Rational(1, Integer(1) << 48);
    // Slack used only when comparing against floating-point oracles.
    Rational realroot_slack = Rational(1, 100000000);

    void validate() const {
        if (root_width <= 0 || realroot_slack <= 0)
            throw std::invalid_argument("Tolerance: fields must be positive");
    }
};

// One real root: an enclosing interval (a point interval when the root is
// known exactly) plus its multiplicity in the original polynomial.
struct RootInterval {
    RatInterval iv;
    int multiplicity = 1;
    bool exact = false;

    const Rational& lo() const { return iv.lo; }
    const Rational& hi() const { return iv.hi; }
    Rational mid() const { return iv.mid(); }
};

struct RootSet {
    std::vector<RootInterval> roots;  // ascending, pairwise disjoint intervals
    int total_count = 0;              // with multiplicity
    bool certified = false;
};

namespace detail {

/// Sturm chain of a squarefree polynomial. Signs may be scaled by positive
/// rationals without changing variation counts, so every remainder is
/// renormalized to unit leading magnitude to keep coefficients small.
class SturmChain {
public:
    explicit SturmChain(const UniPoly& f) {
        if (f.is_zero()) throw std::domain_error("SturmChain: zero polynomial");
        chain_.push_back(f);
        if (f.degree() == 0) return;
        chain_.push_back(f.derivative());
        for (;;) {
            const UniPoly& a = chain_[chain_.size() - 2];
            const UniPoly& b = chain_.back();
            UniPoly r = divmod(a, b).second;
            if (r.is_zero()) break;
            r *= Rational(-1) / abs(r.leading());
            chain_.push_back(std::move(r));
        }
    }

    int variations_at(const Rational& x) const {
        int v = 0, prev = 0;
        for (const UniPoly& p : chain_) {
            const Rational val = p(x);
            const int s = val == 0 ? 0 : (val > 0 ? 1 : -1);
            if (s != 0) {
                if (prev != 0 && s != prev) ++v;
                prev = s;
            }
        }
        return v;
    }

    int variations_at_infinity(int direction) const {
        int v = 0, prev = 0;
        for (const UniPoly& p : chain_) {
            int s = p.leading() > 0 ? 1 : -1;
            if (direction < 0 && p.degree() % 2 == 1) s = -s;
            if (prev != 0 && s != prev) ++v;
            prev = s;
        }
        return v;
    }

    /// Number of distinct real roots in (a, b]; endpoints must not be roots
    /// of the squarefree polynomial (callers arrange this).
    int count_interval(const Rational& a, const Rational& b) const {
        return variations_at(a) - variations_at(b);
    }

    int count_all() const { return variations_at_infinity(-1) - variations_at_infinity(+1); }

    int count_above(const Rational& a) const {
        return variations_at(a) - variations_at_infinity(+1);
    }

private:
    std::vector<UniPoly> chain_;
};

/// All real roots lie strictly inside (-bound, bound).
inline Rational cauchy_bound(const UniPoly& f) {
    Rational m(0);
    const Rational lead = abs(f.leading());
    for (int i = 0; i < f.degree(); ++i) m = std::max(m, Rational(abs(f.coeff(i)) / lead));
    return m + 1;
}

inline std::optional<Integer> exact_isqrt(const Integer& x) {
    if (x < 0) return std::nullopt;
    const Integer r = boost::multiprecision::sqrt(x);
    if (r * r == x) return r;
    return std::nullopt;
}

/// sqrt of a nonnegative rational when it is itself rational.
inline std::optional<Rational> exact_sqrt(const Rational& x) {
    if (x < 0) return std::nullopt;
    const auto num = exact_isqrt(numerator(x));
    if (!num) return std::nullopt;
    const auto den = exact_isqrt(denominator(x));
    if (!den) return std::nullopt;
    return Rational(*num, *den);
}

/// Divisors of |x| not exceeding `limit`. Candidate numerators and
/// denominators for the best-effort rational-root snap; large divisors are
/// deliberately not searched (a snap miss costs exactness, not correctness).
inline std::vector<Integer> small_divisors(Integer x, unsigned limit) {
    std::vector<Integer> out;
    if (x < 0) x = -x;
    if (x == 0) return out;
    for (Integer i = 1; i <= limit && i <= x; ++i) {
        if (x % i == 0) out.push_back(i);
    }
    return out;
}

/// Finds rational roots of f (squarefree) and divides them out of f.
/// Exhaustive for deg <= 2; best-effort divisor search above that, so a
/// miss only costs exactness, never correctness.
inline std::vector<Rational> snap_rational_roots(UniPoly& f) {
    std::vector<Rational> found;
    // Factor t^k.
    while (!f.is_zero() && f.degree() >= 1 && f.coeff(0) == 0) {
        found.push_back(0);
        std::vector<Rational> c(f.coeffs().begin() + 1, f.coeffs().end());
        f = UniPoly(std::move(c));
    }
    if (f.degree() == 1) {
        found.push_back(-f.coeff(0) / f.coeff(1));
        f = UniPoly::constant(f.leading());
        std::sort(found.begin(), found.end());
        return found;
    }
    if (f.degree() == 2) {
        const Rational a = f.coeff(2), b = f.coeff(1), c = f.coeff(0);
        const auto sq = exact_sqrt(b * b - 4 * a * c);
        if (sq) {
            found.push_back((-b - *sq) / (2 * a));
            if (*sq != 0) found.push_back((-b + *sq) / (2 * a));
            f = UniPoly::constant(f.leading());
        }
        std::sort(found.begin(), found.end());
        return found;
    }
    if (f.degree() >= 3) {
        for (bool again = true; again && f.degree() >= 3;) {
            again = false;
            // Clear denominators to an integer polynomial.
            Integer den_lcm = 1;
            for (const Rational& c : f.coeffs())
                den_lcm = boost::multiprecision::lcm(den_lcm, denominator(c));
            std::vector<Integer> ic;
            ic.reserve(f.coeffs().size());
            for (const Rational& c : f.coeffs()) ic.push_back(numerator(Rational(c * den_lcm)));
            const int deg = f.degree();
            // Candidate p/q with p | ic[0], q | ic[deg]; tested with integer
            // Horner on q^deg * f(p/q), far cheaper than rational evaluation.
            auto is_root = [&](const Integer& p, const Integer& q) {
                Integer acc = ic[deg];
                Integer qpow = 1;
                for (int i = deg - 1; i >= 0; --i) {
                    qpow *= q;
                    acc = acc * p + ic[i] * qpow;
                }
                return acc == 0;
            };
            for (const Integer& p : small_divisors(ic.front(), 512)) {
                for (const Integer& q : small_divisors(ic.back(), 512)) {
                    if (boost::multiprecision::gcd(p, q) != 1) continue;
                    for (const int sign : {1, -1}) {
                        if (is_root(sign * p, q)) {
                            const Rational r(sign * p, q);
                            found.push_back(r);
                            f = divmod(f, UniPoly({-r, Rational(1)})).first;
                            again = true;
                        }
                        if (again) break;
                    }
                    if (again) break;
                }
                if (again) break;
            }
        }
        // The quotient may have dropped to a snappable degree.
        if (f.degree() >= 1 && f.degree() <= 2) {
            auto rest = snap_rational_roots(f);
            found.insert(found.end(), rest.begin(), rest.end());
        }
    }
    std::sort(found.begin(), found.end());
    return found;
}

struct IsolatedRoot {
    RatInterval iv;
    bool exact;
};

/// Bisection refinement of [lo, hi] with f(lo)*f(hi) < 0 down to `width`,
/// switching to an exact root if a midpoint lands on it.
inline IsolatedRoot bisect_root(const UniPoly& f, Rational lo, Rational hi, const Rational& width) {
    Rational flo = f(lo);
    while (hi - lo > width) {
        const Rational mid = (lo + hi) / 2;
        const Rational fm = f(mid);
        if (fm == 0) return {RatInterval(mid), true};
        if ((flo > 0) != (fm > 0)) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return {RatInterval(lo, hi), false};
}

/// Isolating intervals for all real roots of a squarefree polynomial with
/// no rational roots left to snap. Certified by Sturm counts.
inline std::vector<IsolatedRoot> isolate_squarefree(const UniPoly& f, const Rational& width) {
    std::vector<IsolatedRoot> out;
    if (f.degree() < 1) return out;
    const SturmChain chain(f);
    const Rational bound = cauchy_bound(f);
    struct Seg {
        Rational lo, hi;
        int count;
    };
    std::vector<Seg> work;
    const int total = chain.count_interval(-bound, bound);
    if (total > 0) work.push_back({-bound, bound, total});
    while (!work.empty()) {
        Seg seg = work.back();
        work.pop_back();
        if (seg.count == 1) {
            // One sign change inside; refine by plain bisection.
            out.push_back(bisect_root(f, seg.lo, seg.hi, width));
            continue;
        }
        Rational mid = (seg.lo + seg.hi) / 2;
        if (f(mid) == 0) {
            // Exact hit: record it and carve a root-free gap around it so
            // the Sturm counts on both sides stay valid.
            out.push_back({RatInterval(mid), true});
            Rational delta = (seg.hi - seg.lo) / 1024;
            for (;;) {
                const Rational l = mid - delta, r = mid + delta;
                if (f(l) != 0 && f(r) != 0) {
                    const int left = chain.count_interval(seg.lo, l);
                    const int right = chain.count_interval(r, seg.hi);
                    if (left + right + 1 == seg.count) {
                        if (left > 0) work.push_back({seg.lo, l, left});
                        if (right > 0) work.push_back({r, seg.hi, right});
                        break;
                    }
                }
                delta /= 2;
            }
            continue;
        }
        const int left = chain.count_interval(seg.lo, mid);
        if (left > 0) work.push_back({seg.lo, mid, left});
        if (seg.count - left > 0) work.push_back({mid, seg.hi, seg.count - left});
    }
    std::sort(out.begin(), out.end(),
              [](const IsolatedRoot& a, const IsolatedRoot& b) { return a.iv.lo < b.iv.lo; });
    return out;
}

}  // namespace detail

/// Shrinks a non-exact isolating interval below `width`. The interval must
/// bracket a sign change of f (the invariant every isolated root carries).
inline void refine_root(const UniPoly& f, RootInterval& r, const Rational& width) {
    if (r.exact || r.iv.width() <= width) return;
    const auto refined = detail::bisect_root(f, r.iv.lo, r.iv.hi, width);
    r.iv = refined.iv;
    r.exact = refined.exact;
}

/// Certified real roots of q with multiplicity: Yun decomposition, exact
/// rational snapping, Sturm isolation, then cross-factor disjointness.
inline RootSet real_roots(const UniPoly& q, const Tolerance& tol = {}) {
    tol.validate();
    if (q.is_zero()) throw std::domain_error("real_roots: zero polynomial");
    RootSet out;
    out.certified = true;
    if (q.degree() == 0) return out;

    struct Pending {
        RootInterval root;
        UniPoly factor;  // squarefree factor owning this root (for refinement)
    };
    std::vector<Pending> all;
    const std::vector<UniPoly> factors = yun_decomposition(q);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const int mult = static_cast<int>(i) + 1;
        if (factors[i].degree() < 1) continue;
        UniPoly f = factors[i];
        for (const Rational& r : detail::snap_rational_roots(f)) {
            all.push_back({{RatInterval(r), mult, true}, UniPoly()});
        }
        // Isolated intervals carry the deflated factor: its sign change over
        // the interval is the invariant refinement relies on.
        for (const auto& iso : detail::isolate_squarefree(f, tol.root_width)) {
            all.push_back({{iso.iv, mult, iso.exact}, f});
        }
    }

    std::sort(all.begin(), all.end(),
              [](const Pending& a, const Pending& b) { return a.root.iv.lo < b.root.iv.lo; });

    // Roots of distinct squarefree factors are distinct, so overlapping
    // enclosures can always be separated by refinement.
    bool overlap = true;
    Rational width = tol.root_width;
    while (overlap) {
        overlap = false;
        for (std::size_t i = 0; i + 1 < all.size(); ++i) {
            if (all[i].root.iv.hi >= all[i + 1].root.iv.lo) {
                overlap = true;
                refine_root(all[i].factor, all[i].root, width);
                refine_root(all[i + 1].factor, all[i + 1].root, width);
            }
        }
        if (overlap) {
            std::sort(all.begin(), all.end(),
                      [](const Pending& a, const Pending& b) { return a.root.iv.lo < b.root.iv.lo; });
            width /= 1024;
        }
    }

    for (auto& p : all) {
        out.total_count += p.root.multiplicity;
        out.roots.push_back(std::move(p.root));
    }
    return out;
}

/// Exact decision: does q have deg(q) real roots counted with multiplicity?
/// Uses Sturm counts on the Yun factors; no isolation, no tolerance.
inline bool is_real_rooted(const UniPoly& q) {
    if (q.is_zero()) throw std::domain_error("is_real_rooted: zero polynomial");
    if (q.degree() == 0) return true;
    int count = 0;
    const std::vector<UniPoly> factors = yun_decomposition(q);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i].degree() < 1) continue;
        count += static_cast<int>(i + 1) * detail::SturmChain(factors[i]).count_all();
    }
    return count == q.degree();
}

/// Largest real root with its multiplicity.
inline RootInterval lambda_max(const UniPoly& q, const Tolerance& tol = {}) {
    const RootSet rs = real_roots(q, tol);
    if (rs.roots.empty()) throw std::domain_error("lambda_max: no real roots");
    return rs.roots.back();
}

/// Minimum of |q| over the real critical points of q: the distance of q to
/// the repeated-root boundary along vertical perturbation. Exactly zero iff
/// q has a repeated root.
inline RatInterval gap_to_boundary(const UniPoly& q, const Tolerance& tol = {}) {
    if (q.degree() < 2) throw std::domain_error("gap_to_boundary: need degree >= 2");
    if (gcd(q, q.derivative()).degree() > 0) return RatInterval(Rational(0));
    const RootSet crit = real_roots(q.derivative(), tol);
    if (crit.roots.empty())
        throw std::domain_error("gap_to_boundary: no real critical points");
    std::optional<RatInterval> best;
    for (const RootInterval& r : crit.roots) {
        const RatInterval v = r.exact ? RatInterval(abs(q(r.iv.lo))) : abs(q(r.iv));
        if (!best) {
            best = v;
        } else {
            best = RatInterval(std::min(best->lo, v.lo), std::min(best->hi, v.hi));
        }
    }
    return *best;
}

struct InterlacingReport {
    bool ok = false;
    int pairs_checked = 0;
    int undecided = 0;
    RatInterval min_ratio;  // tightest (z' - z_j)/(z_{j+1} - z_j) observed
    RatInterval max_ratio;
    std::vector<std::string> violations;
};

/// Checks that every critical point between consecutive roots z_j < z_{j+1}
/// of a distinct-root polynomial of degree n sits inside
/// [z_j + (z_{j+1}-z_j)/n, z_j + (1-1/n)(z_{j+1}-z_j)].
/// Decisions are certified: an inequality is accepted or rejected only when
/// it holds (or fails) for the entire enclosing intervals.
inline InterlacingReport interlacing_ratio_check(const UniPoly& q, const Tolerance& tol = {}) {
    if (q.degree() < 2) throw std::domain_error("interlacing_ratio_check: need degree >= 2");
    if (!is_real_rooted(q)) throw std::domain_error("interlacing_ratio_check: input not real-rooted");
    if (gcd(q, q.derivative()).degree() > 0)
        throw std::domain_error("interlacing_ratio_check: roots must be distinct");

    const int n = q.degree();
    const UniPoly dq = q.derivative();
    RootSet zs = real_roots(q, tol);
    RootSet ws = real_roots(dq, tol);
    if (static_cast<int>(zs.roots.size()) != n || static_cast<int>(ws.roots.size()) != n - 1)
        throw std::domain_error("interlacing_ratio_check: unexpected root counts");

    InterlacingReport rep;
    std::optional<RatInterval> minr, maxr;
    for (int j = 0; j + 1 < static_cast<int>(zs.roots.size()); ++j) {
        // The j-th critical point lives strictly between z_j and z_{j+1}
        // (Rolle, distinct roots).
        RootInterval& zj = zs.roots[j];
        RootInterval& zj1 = zs.roots[j + 1];
        RootInterval& w = ws.roots[j];
        ++rep.pairs_checked;

        bool decided = false;
        for (int round = 0; round < 24 && !decided; ++round) {
            const RatInterval gap = zj1.iv - zj.iv;
            const RatInterval lhs = (w.iv - zj.iv) * Rational(n);  // n*(z' - z_j)
            const RatInterval rhs_low = gap;                       // must be <= lhs
            const RatInterval rhs_high = gap * Rational(n - 1);    // must be >= lhs (scaled)
            // lower bound: n*(z'-z_j) >= (z_{j+1}-z_j)
            const RatInterval t1 = lhs - rhs_low;
            // upper bound: n*(z'-z_j) <= (n-1)*(z_{j+1}-z_j)
            const RatInterval t2 = rhs_high - lhs;
            if (t1.certainly_nonnegative() && t2.certainly_nonnegative()) {
                decided = true;
                if (gap.lo > 0) {
                    const RatInterval ratio = (w.iv - zj.iv) * (Rational(1) / gap.lo);
                    const RatInterval ratio2 = (w.iv - zj.iv) * (Rational(1) / gap.hi);
                    const RatInterval r = hull(ratio, ratio2);
                    minr = minr ? RatInterval(std::min(minr->lo, r.lo), std::min(minr->hi, r.hi)) : r;
                    maxr = maxr ? RatInterval(std::max(maxr->lo, r.lo), std::max(maxr->hi, r.hi)) : r;
                }
            } else if (t1.certainly_negative() || t2.certainly_negative()) {
                decided = true;
                rep.violations.push_back("critical point " + std::to_string(j) +
                                         " outside the [1/n, 1-1/n] band");
            } else {
                // Roots of q are simple and the enclosures are pairwise
                // disjoint, so q itself carries the sign change needed for
                // refinement; likewise dq for its (simple) roots.
                const Rational w2 = std::min(zj.iv.width(), std::min(zj1.iv.width(), w.iv.width())) / 1024;
                const Rational target = std::max(w2, Rational(1, Integer(1) << 512));
                refine_root(q, zj, target);
                refine_root(q, zj1, target);
                refine_root(dq, w, target);
            }
        }
        if (!decided) {
            ++rep.undecided;
            rep.violations.push_back("pair " + std::to_string(j) + " undecided after refinement");
        }
    }
    if (minr) rep.min_ratio = *minr;
    if (maxr) rep.max_ratio = *maxr;
    rep.ok = rep.violations.empty();
    return rep;
}

/// Monic polynomial with `degree` distinct rational roots drawn from a
/// dyadic grid in [-8, 8]. Deterministic in the generator state.
inline UniPoly random_distinct_root_poly(Rng& rng, int degree) {
    if (degree < 1) throw std::invalid_argument("random_distinct_root_poly: degree >= 1");
    std::vector<Rational> roots;
    roots.reserve(degree);
    while (static_cast<int>(roots.size()) < degree) {
        // 16 * degree^2 grid points keep collisions rare; reject on repeat.
        const Integer den = 16;
        const Integer num = Integer(rng.next_below(256 * static_cast<std::uint64_t>(degree) *
                                                   static_cast<std::uint64_t>(degree) + 1)) -
                            Integer(128) * degree * degree;
        const Rational r(num, den * degree);
        if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    }
    return UniPoly::from_roots(roots);
}

}  // namespace hypcone
