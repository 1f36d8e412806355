#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypcone/family.hpp"
#include "hypcone/interval.hpp"
#include "hypcone/jacobi.hpp"
#include "hypcone/matching.hpp"
#include "hypcone/multipoly.hpp"
#include "hypcone/parallel.hpp"
#include "hypcone/rational.hpp"
#include "hypcone/rng.hpp"
#include "hypcone/roots.hpp"

namespace hypcone {

struct Budget {
    Rational value;
    double log2 = 0.0;
};

/// Additive perturbation budget under which e_d + q stays hyperbolic for
/// any translation-invariant multilinear q with |coefficients| <= budget:
/// R = C(n,d) / (2^n * n^{(d+1)(n-d)}).
inline Budget perturbation_budget(int n, int d) {
    if (d < 1 || d > n) throw std::invalid_argument("perturbation_budget: need 1 <= d <= n");
    Budget b;
    b.value = Rational(binomial(n, d),
                       pow_int(2, n) * pow_int(n, static_cast<unsigned>((d + 1) * (n - d))));
    b.log2 = log2_approx(b.value);
    return b;
}

/// Budget under which the tangent-hyperplane separation argument applies:
/// R_2 = 1/(4 * n^{d(n-d)} * N * d * sqrt(n)). The sqrt is replaced by a
/// rational upper bound, which only shrinks R_2 and keeps it sound.
inline Budget separation_budget(int n, int d, int family_size) {
    if (d < 1 || d >= n || family_size < 1)
        throw std::invalid_argument("separation_budget: bad parameters");
    Budget b;
    const Rational sqrt_n_up = sqrt_upper(Rational(n));
    b.value = Rational(1) /
              (Rational(4) * pow_int(n, static_cast<unsigned>(d * (n - d))) * family_size * d * sqrt_n_up);
    b.log2 = log2_approx(b.value);
    return b;
}

inline Rational default_epsilon(int n, int d, int family_size) {
    return std::min(perturbation_budget(n, d).value,
                    separation_budget(n, d, family_size).value) /
           2;
}

/// The embedding separation threshold Delta = eps/(C(n,d)*d*e), with
/// Euler's number rounded up (it sits in the denominator, so rounding up
/// only shrinks the threshold we promise).
inline Rational separation_threshold(int n, int d, const Rational& eps) {
    return eps / (Rational(binomial(n, d)) * d * euler_upper());
}

// p_s = e_d - eps * sum over selected matchings of q_M. The bit vector s
// selects which matchings of the family perturb the base polynomial.
struct PerturbedPoly {
    MatchingFamily family;
    std::vector<std::uint8_t> s;
    Rational eps;
    MultiPoly poly;
    bool budget_certified = false;  // eps * |s|_1 <= R

    int weight() const {
        int w = 0;
        for (const auto b : s) w += b ? 1 : 0;
        return w;
    }
};

inline PerturbedPoly make_perturbed(const MatchingFamily& fam, std::vector<std::uint8_t> s,
                                    const Rational& eps) {
    if (s.size() != fam.matchings.size())
        throw std::invalid_argument("make_perturbed: selector length mismatch");
    // eps = 0 is allowed: p_s degenerates to e_d, which is always hyperbolic.
    if (eps < 0) throw std::invalid_argument("make_perturbed: eps must be nonnegative");
    PerturbedPoly out{fam, std::move(s), eps, elementary_symmetric(fam.n, fam.d), false};
    for (std::size_t i = 0; i < out.s.size(); ++i) {
        if (!out.s[i]) continue;
        MultiPoly q = matching_poly(fam.matchings[i], fam.n);
        q *= -eps;
        out.poly += q;
    }
    out.budget_certified = eps * out.weight() <= perturbation_budget(fam.n, fam.d).value;
    return out;
}

enum class ConeLocation { Interior, Boundary, Outside };

inline const char* to_string(ConeLocation loc) {
    switch (loc) {
        case ConeLocation::Interior: return "interior";
        case ConeLocation::Boundary: return "boundary";
        case ConeLocation::Outside: return "outside";
    }
    return "?";
}

/// Exact membership classification for the hyperbolicity cone of p in
/// direction e: the sign of the largest root of p(te + x) decides, via
/// Sturm counts and an exact zero test (no tolerances involved).
inline ConeLocation cone_contains(const MultiPoly& p, std::span<const Rational> e,
                                  std::span<const Rational> x) {
    if (p(e) == 0) throw std::invalid_argument("cone_contains: p(e) must be nonzero");
    const UniPoly r = restrict_line(p, e, x);
    if (!is_real_rooted(r))
        throw std::domain_error("cone_contains: restriction is not real-rooted");
    UniPoly g = squarefree_part(r);
    bool root_at_zero = false;
    if (g.coeff(0) == 0) {
        root_at_zero = true;
        std::vector<Rational> c(g.coeffs().begin() + 1, g.coeffs().end());
        g = UniPoly(std::move(c));
    }
    const int positive = g.degree() >= 1 ? detail::SturmChain(g).count_above(0) : 0;
    if (positive > 0) return ConeLocation::Outside;
    return root_at_zero ? ConeLocation::Boundary : ConeLocation::Interior;
}

inline ConeLocation cone_contains(const MultiPoly& p, std::span<const Rational> x) {
    const std::vector<Rational> ones(p.n(), Rational(1));
    return cone_contains(p, ones, x);
}

struct BoundaryPoint {
    RootInterval lambda;          // largest restriction root
    std::vector<RatInterval> z;   // x + lambda * e, exact when lambda is
};

/// The boundary point of K_p hit by sliding from x along e.
inline BoundaryPoint cone_boundary_along(const MultiPoly& p, std::span<const Rational> e,
                                         std::span<const Rational> x, const Tolerance& tol = {}) {
    if (p(e) == 0) throw std::invalid_argument("cone_boundary_along: p(e) must be nonzero");
    const UniPoly r = restrict_line(p, e, x);
    if (!is_real_rooted(r))
        throw std::domain_error("cone_boundary_along: restriction is not real-rooted");
    BoundaryPoint out;
    out.lambda = lambda_max(r, tol);
    out.z.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out.z.push_back(RatInterval(x[i]) + out.lambda.iv * e[i]);
    return out;
}

/// Lambda(p): the vector of largest restriction roots over the good sets,
/// each certified to the tolerance width.
inline std::vector<RootInterval> restriction_embedding(const MultiPoly& p,
                                                       const MatchingFamily& fam,
                                                       const Tolerance& tol = {}) {
    const std::vector<Rational> ones(fam.n, Rational(1));
    std::vector<RootInterval> out(fam.good_sets.size());
    for (std::size_t i = 0; i < fam.good_sets.size(); ++i) {
        const UniPoly r = restrict_line(p, ones, indicator(fam.good_sets[i], fam.n));
        if (!is_real_rooted(r))
            throw std::domain_error("restriction_embedding: restriction not real-rooted");
        out[i] = lambda_max(r, tol);
    }
    return out;
}

struct SeparationReport {
    RatInterval gap;       // ||Lambda(p_s) - Lambda(p_s')||_inf enclosure
    Rational delta = 0;    // promised threshold eps/(C(n,d)*d*e)
    bool ok = false;       // gap >= delta certified over the whole enclosure
    bool budget_ok = false;  // eps < R / family size
    int witness_index = -1;  // good set achieving the max gap lower bound
};

namespace detail {

inline void require_compatible_pair(const PerturbedPoly& a, const PerturbedPoly& b) {
    if (!(a.family == b.family))
        throw std::invalid_argument("perturbed pair: families differ");
    if (a.eps != b.eps) throw std::invalid_argument("perturbed pair: eps differs");
    if (a.s.size() != b.s.size()) throw std::invalid_argument("perturbed pair: selector sizes differ");
}

}  // namespace detail

/// Certifies the sup-norm separation of the two restriction embeddings
/// against Delta. Refines root enclosures until the comparison is decided
/// for the entire interval.
inline SeparationReport embedding_separation(const PerturbedPoly& a, const PerturbedPoly& b,
                                             const Tolerance& tol = {}) {
    detail::require_compatible_pair(a, b);
    if (a.s == b.s)
        throw std::invalid_argument("embedding_separation: selectors are equal, gap may vanish");

    const MatchingFamily& fam = a.family;
    SeparationReport rep;
    rep.delta = separation_threshold(fam.n, fam.d, a.eps);
    rep.budget_ok =
        a.eps * fam.size() < perturbation_budget(fam.n, fam.d).value;

    Tolerance t = tol;
    for (int round = 0; round < 6; ++round) {
        const auto la = restriction_embedding(a.poly, fam, t);
        const auto lb = restriction_embedding(b.poly, fam, t);
        Rational best_lo(-1), best_hi(0);
        int witness = -1;
        for (std::size_t i = 0; i < la.size(); ++i) {
            const RatInterval diff = abs(la[i].iv - lb[i].iv);
            if (diff.lo > best_lo) {
                best_lo = diff.lo;
                witness = static_cast<int>(i);
            }
            best_hi = std::max(best_hi, diff.hi);
        }
        rep.gap = RatInterval(std::max(best_lo, Rational(0)), best_hi);
        rep.witness_index = witness;
        if (rep.gap.lo >= rep.delta || rep.gap.hi < rep.delta) break;
        t.root_width /= Integer(1) << 16;  // undecided: tighten and retry
    }
    rep.ok = rep.gap.lo >= rep.delta;
    return rep;
}

struct NuijConfig {
    int samples = 1000;
    std::uint64_t seed = 0;
};

struct NuijReport {
    int samples = 0;
    int failures = 0;
    bool budget_ok = false;        // eps * weight <= R
    bool theorem_violation = false;  // failures under a certified budget
    bool ok = false;
    RatInterval min_gap;           // smallest |restriction| at a critical point
    bool has_gap = false;
    std::vector<std::string> failure_points;
};

/// Samples restrictions of p_s along 1 and certifies real-rootedness of
/// every one: random sphere directions (rationalized exactly), coordinate
/// axes, indicator vectors, and near-boundary points recentred at critical
/// points of a sampled restriction. Any failure under a certified budget is
/// a counterexample to the perturbation theorem, reported loudly.
inline NuijReport verify_hyperbolic_sampled(const PerturbedPoly& ps, const NuijConfig& cfg) {
    const int n = ps.family.n;
    const std::vector<Rational> ones(n, Rational(1));
    NuijReport rep;
    rep.samples = cfg.samples;
    rep.budget_ok = ps.budget_certified;

    struct Slot {
        bool failed = false;
        std::string where;
        std::optional<RatInterval> gap;
    };
    std::vector<Slot> slots(cfg.samples);

    auto sphere_point = [n](Rng& rng) {
        std::vector<double> v(n);
        double norm2 = 0;
        for (auto& c : v) {
            c = rng.next_normal();
            norm2 += c * c;
        }
        const double norm = std::sqrt(std::max(norm2, 1e-300));
        std::vector<Rational> x(n);
        for (int i = 0; i < n; ++i) x[i] = Rational(v[i] / norm);  // dyadic, exact
        return x;
    };

    parallel_for_index(static_cast<std::size_t>(cfg.samples), [&](std::size_t idx) {
        Rng rng = rng_stream(cfg.seed, "nuij-sample", idx);
        std::vector<Rational> x;
        std::string label;
        const std::size_t axes = static_cast<std::size_t>(2 * n);
        if (idx < axes) {
            x.assign(n, Rational(0));
            x[idx / 2] = (idx % 2 == 0) ? 1 : -1;
            label = "axis";
        } else {
            switch (idx % 3) {
                case 0: {
                    x = sphere_point(rng);
                    label = "sphere";
                    break;
                }
                case 1: {
                    // Random indicator vector, any nonempty size.
                    const int k = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
                    std::vector<int> verts(n);
                    for (int i = 0; i < n; ++i) verts[i] = i + 1;
                    for (int i = 0; i < k; ++i) {
                        const auto j = i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - i)));
                        std::swap(verts[i], verts[j]);
                    }
                    x.assign(n, Rational(0));
                    for (int i = 0; i < k; ++i) x[verts[i] - 1] = 1;
                    label = "indicator";
                    break;
                }
                default: {
                    // Recentre a sphere sample at a critical point of its own
                    // restriction: the shifted restriction has a near-repeated
                    // root, the regime the perturbation bound must survive.
                    x = sphere_point(rng);
                    const UniPoly r = restrict_line(ps.poly, std::span<const Rational>(ones),
                                                    std::span<const Rational>(x));
                    if (r.degree() >= 2) {
                        const RootSet crit = real_roots(r.derivative());
                        if (!crit.roots.empty()) {
                            const auto pick = rng.next_below(crit.roots.size());
                            const Rational t0 = crit.roots[pick].mid();
                            for (auto& c : x) c += t0;
                        }
                    }
                    label = "recentred";
                    break;
                }
            }
        }

        const UniPoly r = restrict_line(ps.poly, std::span<const Rational>(ones),
                                        std::span<const Rational>(x));
        Slot& slot = slots[idx];
        if (r.is_zero() || !is_real_rooted(r)) {
            slot.failed = true;
            slot.where = label + " sample " + std::to_string(idx);
            return;
        }
        if (r.degree() >= 2 && gcd(r, r.derivative()).degree() == 0) {
            slot.gap = gap_to_boundary(r);
        } else if (r.degree() >= 2) {
            slot.gap = RatInterval(Rational(0));  // repeated root: gap exactly 0
        }
    });

    std::optional<RatInterval> min_gap;
    for (const Slot& slot : slots) {
        if (slot.failed) {
            ++rep.failures;
            if (rep.failure_points.size() < 32) rep.failure_points.push_back(slot.where);
        }
        if (slot.gap) {
            min_gap = min_gap ? RatInterval(std::min(min_gap->lo, slot.gap->lo),
                                            std::min(min_gap->hi, slot.gap->hi))
                              : *slot.gap;
        }
    }
    if (min_gap) {
        rep.min_gap = *min_gap;
        rep.has_gap = true;
    }
    rep.theorem_violation = rep.budget_ok && rep.failures > 0;
    rep.ok = rep.failures == 0;
    return rep;
}

struct EdmdReport {
    int n = 0, d = 0;
    int requested = 0;
    int accepted = 0;
    int skipped = 0;
    Rational min_ratio = 0;  // min |e_d(x)| / m_d(x) over accepted samples
    Rational bound = 0;      // C(n,d) / (2 n^{d+1})^{n-d}
    bool ok = false;
    std::vector<Rational> argmin;
};

/// Samples the variety e_{d-1}(x) = 0 (the last coordinate solves a linear
/// equation thanks to multilinearity) and verifies the norm comparison
/// |e_d(x)| >= C(n,d)/(2n^{d+1})^{n-d} * m_d(x). All arithmetic exact.
inline EdmdReport edmd_oracle(int n, int d, int trials, std::uint64_t seed,
                              const std::vector<std::vector<Rational>>& injected = {}) {
    if (d < 2 || d > n) throw std::invalid_argument("edmd_oracle: need 2 <= d <= n");
    EdmdReport rep;
    rep.n = n;
    rep.d = d;
    rep.requested = trials;
    rep.bound = Rational(binomial(n, d)) /
                pow_rat(Rational(2) * pow_int(n, static_cast<unsigned>(d + 1)), n - d);

    const MultiPoly ed = elementary_symmetric(n, d);
    const MultiPoly ed1 = elementary_symmetric(n, d - 1);
    // Split e_{d-1}(x', t) = A(x') + t * B(x') over the first n-1 coordinates.
    const MultiPoly a_part = elementary_symmetric(n - 1, d - 1);
    const MultiPoly b_part = d >= 2 ? elementary_symmetric(n - 1, d - 2)
                                    : MultiPoly(n - 1, 0);

    std::optional<Rational> best;
    auto consider = [&](const std::vector<Rational>& x) {
        if (ed1(x) != 0)
            throw std::invalid_argument("edmd_oracle: injected point not on e_{d-1} = 0");
        const Rational m = max_monomial(x, d);
        if (m == 0) {
            ++rep.skipped;  // vacuous: the inequality reads 0 >= 0
            return;
        }
        const Rational ratio = abs(Rational(ed(x))) / m;
        ++rep.accepted;
        if (!best || ratio < *best) {
            best = ratio;
            rep.argmin = x;
        }
    };

    for (const auto& x : injected) {
        if (static_cast<int>(x.size()) != n)
            throw std::invalid_argument("edmd_oracle: injected point has wrong dimension");
        consider(x);
    }

    Rng rng = rng_stream(seed, "edmd-sample");
    for (int t = 0; t < trials; ++t) {
        std::vector<Rational> head(n - 1);
        for (auto& c : head) {
            const int num = static_cast<int>(rng.next_below(19)) - 9;  // -9..9
            const int den = 1 + static_cast<int>(rng.next_below(4));
            c = Rational(num, den);
        }
        const Rational b = b_part(head);
        if (b == 0) {
            ++rep.skipped;
            continue;
        }
        std::vector<Rational> x = head;
        x.push_back(-a_part(head) / b);
        consider(x);
    }

    if (rep.accepted == 0)
        throw std::runtime_error("edmd_oracle: no feasible samples found");
    rep.min_ratio = *best;
    rep.ok = rep.min_ratio >= rep.bound;
    return rep;
}

struct HdistCertificate {
    std::vector<int> witness_set;   // good set whose unique crosser differs
    RatInterval delta_obs;          // |lambda - lambda'| at the witness
    RatInterval certified;          // lower bound on hdist of the two cones
    Rational floor = 0;             // closed-form floor Delta/(18 n^{d(n-d)} N n)
    Rational delta_formula = 0;     // Delta itself
    bool ok = false;                // certified.lo >= floor
    bool trivial_pair = false;      // s == s': bound 0 by convention
    std::vector<double> probe;      // unit-norm witness point for estimators
};

/// Certified Hausdorff-distance lower bound between the cones of two
/// perturbations differing at some matching. The witness boundary point on
/// the smaller cone is separated from the larger cone by the tangent
/// hyperplane at the larger cone's boundary point; Euler's identity makes
/// the functional value computable exactly from the root gap.
inline HdistCertificate hdist_lower_bound_cert(const PerturbedPoly& a, const PerturbedPoly& b,
                                               const Tolerance& tol = {}) {
    detail::require_compatible_pair(a, b);
    const MatchingFamily& fam = a.family;
    const int n = fam.n, d = fam.d;
    const int nfam = fam.size();

    HdistCertificate rep;
    rep.delta_formula = separation_threshold(n, d, a.eps);
    rep.floor = rep.delta_formula /
                (Rational(18) * pow_int(n, static_cast<unsigned>(d * (n - d))) * nfam * n);
    if (a.s == b.s) {
        rep.trivial_pair = true;
        rep.certified = RatInterval(Rational(0));
        rep.ok = false;
        return rep;
    }
    if (a.eps >= separation_budget(n, d, nfam).value)
        throw std::domain_error("hdist_lower_bound_cert: eps exceeds the separation budget");

    // A good set is witnessing when its unique crossing matching is
    // selected by exactly one of the two perturbations.
    int witness = -1;
    for (std::size_t i = 0; i < fam.good_sets.size() && witness < 0; ++i) {
        for (std::size_t m = 0; m < fam.matchings.size(); ++m) {
            if (a.s[m] != b.s[m] && fully_crosses(fam.matchings[m], fam.good_sets[i])) {
                witness = static_cast<int>(i);
                break;
            }
        }
    }
    if (witness < 0)
        throw std::domain_error("hdist_lower_bound_cert: no witnessing good set");
    rep.witness_set = fam.good_sets[witness];

    const std::vector<Rational> ones(n, Rational(1));
    const std::vector<Rational> point = indicator(rep.witness_set, n);
    const UniPoly ra = restrict_line(a.poly, ones, point);
    const UniPoly rb = restrict_line(b.poly, ones, point);
    if (!is_real_rooted(ra) || !is_real_rooted(rb))
        throw std::domain_error("hdist_lower_bound_cert: witness restriction not real-rooted");

    Tolerance t = tol;
    for (int round = 0; round < 8; ++round) {
        RootInterval la = lambda_max(ra, t);
        RootInterval lb = lambda_max(rb, t);
        // P: the cone whose boundary point along the witness line is lower;
        // that point lies strictly outside the other cone Q.
        const bool a_low = la.iv.hi < lb.iv.lo;
        const bool b_low = lb.iv.hi < la.iv.lo;
        if (!a_low && !b_low) {
            t.root_width /= Integer(1) << 16;
            continue;
        }
        const RootInterval& lp = a_low ? la : lb;
        const RootInterval& lq = a_low ? lb : la;
        const MultiPoly& q_poly = a_low ? b.poly : a.poly;
        rep.delta_obs = RatInterval(lq.iv.lo - lp.iv.hi, lq.iv.hi - lp.iv.lo);

        // Tangent functional at z_Q = 1_S + lambda_Q * 1 on the larger cone.
        std::vector<RatInterval> zq(n);
        for (int i = 0; i < n; ++i) zq[i] = RatInterval(point[i]) + lq.iv;
        RatInterval inner(Rational(0));
        RatInterval vnorm2(Rational(0));
        for (int i = 0; i < n; ++i) {
            const RatInterval vi = q_poly.partial(i)(std::span<const RatInterval>(zq));
            inner += vi;
            const RatInterval ai = abs(vi);
            vnorm2 += ai * ai;
        }
        RatInterval znorm2(Rational(0));
        for (int i = 0; i < n; ++i) {
            const RatInterval zi = RatInterval(point[i]) + lp.iv;
            const RatInterval azi = abs(zi);
            znorm2 += azi * azi;
        }
        if (!(inner.lo > 0) || !(vnorm2.lo > 0) || !(znorm2.lo > 0)) {
            t.root_width /= Integer(1) << 16;
            continue;
        }
        const Rational vnorm_hi = sqrt_upper(vnorm2.hi);
        const Rational vnorm_lo = sqrt_lower(vnorm2.lo);
        const Rational znorm_hi = sqrt_upper(znorm2.hi);
        const Rational znorm_lo = sqrt_lower(znorm2.lo);
        rep.certified = RatInterval(rep.delta_obs.lo * inner.lo / (vnorm_hi * znorm_hi),
                                    rep.delta_obs.hi * inner.hi / (vnorm_lo * znorm_lo));

        // Near-unit witness just inside the smaller cone, for estimator
        // cross-checks. Overshooting the root enclosure by one guard ulp
        // keeps the rationalized double point certifiably a member while
        // giving up only ~2^-47 of the observed gap.
        const Rational lam_probe = lp.iv.hi + Rational(1, Integer(1) << 48);
        RatInterval pn2(Rational(0));
        for (int i = 0; i < n; ++i) {
            const RatInterval pi = RatInterval(point[i] + lam_probe);
            pn2 += pi * pi;
        }
        const Rational zn = (sqrt_lower(pn2.lo) + sqrt_upper(pn2.hi)) / 2;
        rep.probe.resize(n);
        for (int i = 0; i < n; ++i)
            rep.probe[i] = ((point[i] + lam_probe) / zn).convert_to<double>();

        if (rep.certified.lo >= rep.floor) break;
        t.root_width /= Integer(1) << 16;
    }
    rep.ok = rep.certified.lo >= rep.floor;
    return rep;
}

struct OrthantReport {
    int samples = 0;
    int violations = 0;
    bool ok = false;
};

/// Nonnegative points must lie in the cone whenever the budget certifies
/// hyperbolicity (the perturbed polynomial keeps nonnegative coefficients
/// at certified budgets, making the orthant a subset).
inline OrthantReport orthant_membership_sampled(const PerturbedPoly& ps, int samples,
                                                std::uint64_t seed) {
    OrthantReport rep;
    rep.samples = samples;
    Rng rng = rng_stream(seed, "orthant-sample");
    for (int i = 0; i < samples; ++i) {
        std::vector<Rational> x(ps.family.n);
        for (auto& c : x) c = Rational(rng.next_double());  // dyadic in [0,1)
        if (cone_contains(ps.poly, x) == ConeLocation::Outside) ++rep.violations;
    }
    rep.ok = rep.violations == 0;
    return rep;
}

/// Largest eps for which every p_s (any selector) keeps all coefficients
/// nonnegative; nullopt when no matching monomial ever cancels (eps is then
/// unconstrained by nonnegativity).
inline std::optional<Rational> max_eps_nonnegative(const MatchingFamily& fam) {
    std::map<std::vector<int>, int> positive_hits;
    for (const Matching& m : fam.matchings) {
        for (const auto& [exps, coef] : matching_poly(m, fam.n).terms()) {
            if (coef > 0) ++positive_hits[exps];
        }
    }
    int worst = 0;
    for (const auto& [exps, cnt] : positive_hits) worst = std::max(worst, cnt);
    if (worst == 0) return std::nullopt;
    return Rational(1, worst);
}

}  // namespace hypcone
