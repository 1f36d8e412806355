#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypcone/hyperbolicity.hpp"
#include "hypcone/multipoly.hpp"
#include "hypcone/parallel.hpp"
#include "hypcone/rng.hpp"
#include "hypcone/roots.hpp"
#include "hypcone/spectra.hpp"

namespace hypcone {

/// Membership oracle for a closed convex cone. distance_lower must return 0
/// on members and otherwise a lower bound on the Euclidean distance to the
/// cone (typically via a separating functional), so that estimates built
/// from it stay one-sided.
class ConeOracle {
  public:
    virtual ~ConeOracle() = default;
    virtual int dim() const = 0;
    virtual bool contains(std::span<const double> x, double tol) const = 0;
    virtual double distance_lower(std::span<const double> x, double tol) const = 0;
    virtual std::vector<double> interior_point() const = 0;
};

/// Oracle view of a spectrahedral cone. Separation uses the eigenvector of
/// the most negative pencil eigenvalue: u'M(y)u >= 0 linearly in y over the
/// whole cone, so its violation at x divided by the functional norm bounds
/// the distance from below.
class SpectraOracle final : public ConeOracle {
  public:
    explicit SpectraOracle(SpectraRep rep) : rep_(std::move(rep)) {
        rep_.validate();
        interior_ = std::vector<double>(rep_.n, 1.0 / std::sqrt(static_cast<double>(rep_.n)));
    }

    int dim() const override { return rep_.n; }

    bool contains(std::span<const double> x, double tol) const override {
        return psd_check(rep_.pencil(x), tol);
    }

    double distance_lower(std::span<const double> x, double tol) const override {
        const Eigen::MatrixXd m = rep_.pencil(x);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
        if (es.info() != Eigen::Success) throw std::runtime_error("SpectraOracle: solver failed");
        const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
        const double lam = es.eigenvalues()(0);
        if (lam >= -tol * scale) return 0.0;
        const Eigen::VectorXd u = es.eigenvectors().col(0);
        Eigen::VectorXd g(rep_.n);
        for (int i = 0; i < rep_.n; ++i) g(i) = u.dot(rep_.mats[i] * u);
        const double gn = g.norm();
        if (gn <= 0) return 0.0;
        return std::max(0.0, -lam / gn);
    }

    std::vector<double> interior_point() const override { return interior_; }

    const SpectraRep& rep() const { return rep_; }

  private:
    SpectraRep rep_;
    std::vector<double> interior_;
};

/// Oracle view of a hyperbolicity cone in direction 1. Membership is exact
/// (doubles embed exactly into rationals); distances come from the tangent
/// functional at the boundary point x + lambda*1, whose value on x is
/// -lambda*<grad, 1> by the Euler identity.
class HyperbolicOracle final : public ConeOracle {
  public:
    explicit HyperbolicOracle(MultiPoly p, Tolerance tol = {})
        : p_(std::move(p)), tol_(tol), ones_(p_.n(), Rational(1)) {
        if (p_(ones_) == 0)
            throw std::invalid_argument("HyperbolicOracle: polynomial vanishes at 1");
        partials_.reserve(p_.n());
        for (int i = 0; i < p_.n(); ++i) partials_.push_back(p_.partial(i));
        interior_ = std::vector<double>(p_.n(), 1.0 / std::sqrt(static_cast<double>(p_.n())));
    }

    int dim() const override { return p_.n(); }

    bool contains(std::span<const double> x, double) const override {
        const std::vector<Rational> xr = rationalize(x);
        return cone_contains(p_, ones_, xr) != ConeLocation::Outside;
    }

    double distance_lower(std::span<const double> x, double) const override {
        const std::vector<Rational> xr = rationalize(x);
        const UniPoly r = restrict_line(p_, ones_, xr);
        if (!is_real_rooted(r))
            throw std::domain_error("HyperbolicOracle: restriction not real-rooted");
        Tolerance t = tol_;
        for (int round = 0; round < 6; ++round, t.root_width /= Integer(1) << 16) {
            const RootInterval lam = lambda_max(r, t);
            if (lam.iv.hi <= 0) return 0.0;    // member
            if (lam.iv.lo <= 0) continue;      // straddles the boundary: refine
            std::vector<RatInterval> z(p_.n());
            for (int i = 0; i < p_.n(); ++i) z[i] = RatInterval(xr[i]) + lam.iv;
            RatInterval inner(Rational(0));
            RatInterval vnorm2(Rational(0));
            for (int i = 0; i < p_.n(); ++i) {
                const RatInterval vi = partials_[i](std::span<const RatInterval>(z));
                inner += vi;
                const RatInterval ai = abs(vi);
                vnorm2 += ai * ai;
            }
            if (!(inner.lo > 0) || !(vnorm2.lo > 0)) continue;
            const Rational bound = lam.iv.lo * inner.lo / sqrt_upper(vnorm2.hi);
            return std::max(0.0, bound.convert_to<double>() * (1 - 1e-12));
        }
        return 0.0;  // could not certify separation: 0 is always a valid lower bound
    }

    std::vector<double> interior_point() const override { return interior_; }

  private:
    static std::vector<Rational> rationalize(std::span<const double> x) {
        std::vector<Rational> out(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = Rational(x[i]);
        return out;
    }

    MultiPoly p_;
    Tolerance tol_;
    std::vector<Rational> ones_;
    std::vector<MultiPoly> partials_;
    std::vector<double> interior_;
};

struct HdistConfig {
    int samples = 256;
    std::uint64_t seed = 0;
    double tol = 1e-9;
    int sweep_iters = 48;
    std::vector<std::vector<double>> extra_a;  // injected points expected in A
    std::vector<std::vector<double>> extra_b;
};

struct HausdorffEstimate {
    double lower = 0.0;  // max over all records: one-sided lower estimate of hdist
    double ab = 0.0;     // deviation of A's sampled points from B
    double ba = 0.0;
    int samples = 0;
    std::uint64_t seed = 0;
    std::vector<double> records;  // per-direction: even = A side, odd = B side
};

namespace detail {

inline std::vector<double> unit_vector(std::vector<double> v) {
    double norm2 = 0;
    for (const double c : v) norm2 += c * c;
    const double norm = std::sqrt(norm2);
    if (!(norm > 0)) throw std::invalid_argument("unit_vector: zero vector");
    for (double& c : v) c /= norm;
    return v;
}

/// Largest angle along the unit half-circle from the interior point toward
/// w that stays inside the cone, by bisection; returns the last inside
/// point. Convexity of the planar section makes membership monotone here.
inline std::vector<double> arc_boundary_point(const ConeOracle& cone,
                                              std::span<const double> interior,
                                              std::span<const double> w, double tol,
                                              int iters) {
    const int n = cone.dim();
    auto at = [&](double phi) {
        std::vector<double> x(n);
        const double c = std::cos(phi), s = std::sin(phi);
        for (int i = 0; i < n; ++i) x[i] = c * interior[i] + s * w[i];
        return x;
    };
    double lo = 0.0, hi = 3.14159265358979323846;
    if (cone.contains(at(hi), tol)) return at(hi);  // cone spans the whole section
    for (int it = 0; it < iters; ++it) {
        const double mid = (lo + hi) / 2;
        (cone.contains(at(mid), tol) ? lo : hi) = mid;
    }
    return at(lo);
}

inline void oracle_consistency_probe(const ConeOracle& cone, double tol) {
    const std::vector<double> e = cone.interior_point();
    if (!cone.contains(e, tol))
        throw std::domain_error("hdist_estimate: interior point not a member");
    std::vector<double> e2 = e, me = e, me2 = e;
    for (std::size_t i = 0; i < e.size(); ++i) {
        e2[i] *= 2;
        me[i] *= -1;
        me2[i] *= -2;
    }
    if (cone.contains(e, tol) != cone.contains(e2, tol) ||
        cone.contains(me, tol) != cone.contains(me2, tol))
        throw std::runtime_error("hdist_estimate: membership not scale-invariant");
}

}  // namespace detail

/// One-sided Hausdorff distance estimate between K_A and K_B intersected
/// with the Euclidean unit ball: per sampled direction, walk to the cone
/// boundary along the arc from the interior point, then lower-bound the
/// distance from the boundary point to the other cone. The result exceeds
/// the true hdist by at most the membership tolerance amplified by the
/// unit-sphere projection (tol divided by the pre-projection norm of the
/// walk point), and grows monotonically with the sample count for a fixed
/// seed.
inline HausdorffEstimate hdist_estimate(const ConeOracle& a, const ConeOracle& b,
                                        const HdistConfig& cfg) {
    if (a.dim() != b.dim()) throw std::invalid_argument("hdist_estimate: dimension mismatch");
    const int n = a.dim();
    detail::oracle_consistency_probe(a, cfg.tol);
    detail::oracle_consistency_probe(b, cfg.tol);

    HausdorffEstimate est;
    est.samples = cfg.samples;
    est.seed = cfg.seed;
    est.records.assign(static_cast<std::size_t>(cfg.samples) * 2, 0.0);

    const std::vector<double> ia = a.interior_point();
    const std::vector<double> ib = b.interior_point();

    parallel_for_index(static_cast<std::size_t>(cfg.samples), [&](std::size_t idx) {
        Rng rng = rng_stream(cfg.seed, "hdist-dir", idx);
        std::vector<double> u(n);
        double norm2 = 0;
        for (auto& c : u) {
            c = rng.next_normal();
            norm2 += c * c;
        }
        if (norm2 <= 1e-300) return;
        for (auto& c : u) c /= std::sqrt(norm2);

        const auto side = [&](const ConeOracle& src, const std::vector<double>& src_interior,
                              const ConeOracle& dst) {
            std::vector<double> x =
                detail::arc_boundary_point(src, src_interior, u, cfg.tol, cfg.sweep_iters);
            double n2 = 0;
            for (const double c : x) n2 += c * c;
            double worst = 0.0;
            if (n2 > 1e-24) {
                // Project to the unit sphere: membership survives (cone),
                // and the estimate must only use points in the unit ball.
                for (auto& c : x) c /= std::sqrt(n2);
                worst = dst.distance_lower(x, cfg.tol);
            }
            if (src.contains(u, cfg.tol))
                worst = std::max(worst, dst.distance_lower(u, cfg.tol));
            return worst;
        };
        est.records[2 * idx] = side(a, ia, b);
        est.records[2 * idx + 1] = side(b, ib, a);
    });

    for (std::size_t i = 0; i < est.records.size(); ++i) {
        if (i % 2 == 0)
            est.ab = std::max(est.ab, est.records[i]);
        else
            est.ba = std::max(est.ba, est.records[i]);
    }

    auto inject = [&](const std::vector<std::vector<double>>& pts, const ConeOracle& src,
                      const ConeOracle& dst, double& acc) {
        for (const auto& p : pts) {
            if (static_cast<int>(p.size()) != n)
                throw std::invalid_argument("hdist_estimate: injected point dimension mismatch");
            const std::vector<double> x = detail::unit_vector(p);
            if (!src.contains(x, cfg.tol)) continue;  // not certified in the source cone
            acc = std::max(acc, dst.distance_lower(x, cfg.tol));
        }
    };
    inject(cfg.extra_a, a, b, est.ab);
    inject(cfg.extra_b, b, a, est.ba);

    est.lower = std::max(est.ab, est.ba);
    return est;
}

struct ConeMatrixReport {
    double mdist_value = 0.0;
    double bound = 0.0;          // n^{3/2} * mdist
    double estimate = 0.0;       // sampled hdist lower estimate
    bool estimate_ok = false;    // estimate <= bound (necessary condition)
    ShiftWitnessReport shift;
    bool ok = false;
};

/// The matrix-to-cone distance transfer, checked from both ends: the
/// sampled hdist estimate (a lower bound) must stay below n^{3/2}*mdist,
/// and the explicit shift witness must land inside the other cone. The
/// comparison uses a rational lower bound for n^{3/2} so a pass is
/// meaningful despite floating arithmetic.
inline ConeMatrixReport conetomatrices_check(const SpectraRep& a, const SpectraRep& b,
                                             int samples, std::uint64_t seed,
                                             double tol = 1e-9) {
    if (!a.normalized || !b.normalized)
        throw std::invalid_argument("conetomatrices_check: reps must be normalized");
    if (a.n != b.n || a.k != b.k)
        throw std::invalid_argument("conetomatrices_check: shape mismatch");
    const int n = a.n;

    ConeMatrixReport rep;
    rep.mdist_value = mdist(a, b);
    rep.bound = n * std::sqrt(static_cast<double>(n)) * rep.mdist_value;

    SpectraOracle oa(a), ob(b);
    HdistConfig cfg;
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.tol = tol;
    const HausdorffEstimate est = hdist_estimate(oa, ob, cfg);
    rep.estimate = est.lower;

    const double bound_sound =
        n * sqrt_lower(Rational(n)).convert_to<double>() * rep.mdist_value;
    rep.estimate_ok = rep.estimate <= bound_sound + 1e-12 * (1 + bound_sound);

    rep.shift = shift_witness_check(a, b, samples, seed, tol);
    rep.ok = rep.estimate_ok && rep.shift.ok;
    return rep;
}

}  // namespace hypcone
