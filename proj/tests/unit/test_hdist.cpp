#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "hypcone/hdist.hpp"

using namespace hypcone;

namespace {

SpectraRep halfspace_rep_2d() {
    // Pencil [x0 + x1]: the halfplane x0 + x1 >= 0.
    SpectraRep rep;
    rep.n = 2;
    rep.k = 1;
    rep.mats = {Eigen::MatrixXd{{1.0}}, Eigen::MatrixXd{{1.0}}};
    rep.validate();
    return rep;
}

// Pathological oracles for the consistency probes.
class EmptyOracle final : public ConeOracle {
  public:
    int dim() const override { return 2; }
    bool contains(std::span<const double>, double) const override { return false; }
    double distance_lower(std::span<const double>, double) const override { return 0.0; }
    std::vector<double> interior_point() const override { return {0.5, 0.5}; }
};

class BallOracle final : public ConeOracle {
  public:
    int dim() const override { return 2; }
    bool contains(std::span<const double> x, double) const override {
        return x[0] * x[0] + x[1] * x[1] <= 1.5 * 1.5;
    }
    double distance_lower(std::span<const double>, double) const override { return 0.0; }
    std::vector<double> interior_point() const override {
        return {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    }
};

}  // namespace

TEST_CASE("orthant vs halfplane: the planar extreme is found", "[hdist]") {
    // The quadrant sits inside the halfplane; the farthest halfplane point
    // on the unit circle is (1,-1)/sqrt(2), at distance sqrt(1/2) from the
    // quadrant.
    const SpectraOracle quad(diagonal_rep(2));
    const SpectraOracle half(halfspace_rep_2d());
    HdistConfig cfg;
    cfg.samples = 8;
    cfg.seed = 3;
    const HausdorffEstimate est = hdist_estimate(quad, half, cfg);
    CHECK(est.ab == 0.0);  // quadrant points never leave the halfplane
    // One-sided only up to the membership tolerance amplified by the
    // unit-sphere projection (tol / walk-point norm); allow 1e3 * tol.
    CHECK(est.ba >= std::sqrt(0.5) - 1e-9);
    CHECK(est.ba <= std::sqrt(0.5) + 1e-6);
    CHECK(est.lower == est.ba);
    CHECK(est.records.size() == 16);
}

TEST_CASE("identical cones have estimate within membership slack", "[hdist]") {
    const SpectraOracle a(diagonal_rep(3));
    HdistConfig cfg;
    cfg.samples = 16;
    cfg.seed = 1;
    const HausdorffEstimate est = hdist_estimate(a, a, cfg);
    // Boundary walk stops within tol of the cone, and the stop point is
    // renormalized, so the residual is tol / norm rather than exact zero.
    CHECK(est.lower <= 1e-6);
}

TEST_CASE("estimate is deterministic and monotone in the sample prefix", "[hdist]") {
    const SpectraOracle a(random_normalized_rep(3, 3, 7));
    const SpectraOracle b(perturb_normalized(random_normalized_rep(3, 3, 7), 0.3, 8));
    HdistConfig cfg;
    cfg.seed = 11;

    cfg.samples = 16;
    const HausdorffEstimate e16 = hdist_estimate(a, b, cfg);
    cfg.samples = 64;
    const HausdorffEstimate e64 = hdist_estimate(a, b, cfg);
    const HausdorffEstimate e64b = hdist_estimate(a, b, cfg);

    CHECK(e16.lower <= e64.lower);  // per-direction streams: prefix property
    CHECK(e64.lower == e64b.lower);
    CHECK(e64.records == e64b.records);
}

TEST_CASE("hyperbolic and spectrahedral views of the quadrant agree", "[hdist][oracle]") {
    const HyperbolicOracle hyp(elementary_symmetric(2, 2));  // x*y, cone = quadrant
    const SpectraOracle spec(diagonal_rep(2));
    CHECK(hyp.contains(std::vector<double>{1.0, 0.5}, 1e-9));
    CHECK_FALSE(hyp.contains(std::vector<double>{-0.1, 2.0}, 1e-9));

    HdistConfig cfg;
    cfg.samples = 12;
    cfg.seed = 2;
    const HausdorffEstimate est = hdist_estimate(hyp, spec, cfg);
    CHECK(est.lower < 1e-6);  // same cone, two oracles: only tolerance slack
}

TEST_CASE("hyperbolic oracle distance is exact on a halfspace", "[hdist][oracle]") {
    // e_1 over 3 variables: distance to {sum x >= 0} is |sum x| / sqrt(3).
    const HyperbolicOracle hyp(elementary_symmetric(3, 1));
    CHECK(hyp.distance_lower(std::vector<double>{-1.0, -1.0, -1.0}, 1e-9) ==
          Catch::Approx(std::sqrt(3.0)).epsilon(1e-9));
    CHECK(hyp.distance_lower(std::vector<double>{1.0, 1.0, -1.0}, 1e-9) == 0.0);
    CHECK(hyp.contains(std::vector<double>{1.0, -0.5, 0.0}, 1e-9));
}

TEST_CASE("consistency probes reject broken membership oracles", "[hdist]") {
    const SpectraOracle good(diagonal_rep(2));
    HdistConfig cfg;
    cfg.samples = 4;
    const EmptyOracle empty;
    CHECK_THROWS_AS(hdist_estimate(empty, good, cfg), std::domain_error);
    const BallOracle ball;  // membership not scale invariant
    CHECK_THROWS_AS(hdist_estimate(ball, good, cfg), std::runtime_error);
    // Dimension mismatch is rejected before any probing.
    const SpectraOracle three(diagonal_rep(3));
    CHECK_THROWS_AS(hdist_estimate(good, three, cfg), std::invalid_argument);
}

TEST_CASE("certificate and probed estimate align on a perturbed pair", "[hdist][property]") {
    const MatchingFamily fam = sample_family(4, 2, 9);
    REQUIRE(fam.size() >= 1);
    const std::vector<std::uint8_t> all(fam.matchings.size(), 1);
    const std::vector<std::uint8_t> none(fam.matchings.size(), 0);
    const Rational eps(1, 100000);
    const PerturbedPoly a = make_perturbed(fam, all, eps);
    const PerturbedPoly b = make_perturbed(fam, none, eps);

    const HdistCertificate cert = hdist_lower_bound_cert(a, b);
    REQUIRE_FALSE(cert.trivial_pair);
    CHECK(cert.ok);
    CHECK(cert.certified.lo > 0);
    CHECK(cert.certified.lo >= cert.floor);
    double pn = 0;
    for (const double c : cert.probe) pn += c * c;
    CHECK(std::abs(pn - 1.0) < 1e-9);

    // The sampled estimator, fed the certificate's witness point, must
    // recover at least the certified bound (up to the probe's guard ulp).
    const HyperbolicOracle oa(a.poly);
    const HyperbolicOracle ob(b.poly);
    HdistConfig cfg;
    cfg.samples = 16;
    cfg.seed = 5;
    cfg.extra_a = {cert.probe};
    cfg.extra_b = {cert.probe};
    const HausdorffEstimate est = hdist_estimate(oa, ob, cfg);
    CHECK(est.lower >= cert.certified.lo.convert_to<double>() * (1 - 1e-3));
}

TEST_CASE("conetomatrices_check: sound band on a perturbed pair", "[hdist]") {
    const SpectraRep a = random_normalized_rep(3, 3, 21);
    const SpectraRep b = perturb_normalized(a, 0.15, 22);
    const ConeMatrixReport rep = conetomatrices_check(a, b, 64, 7);
    CHECK(rep.ok);
    CHECK(rep.estimate_ok);
    CHECK(rep.shift.ok);
    CHECK(rep.mdist_value > 0);
    CHECK(rep.bound == Catch::Approx(3.0 * std::sqrt(3.0) * rep.mdist_value));
    CHECK(rep.estimate >= 0);
    CHECK(rep.estimate <= rep.bound + 1e-9);

    SpectraRep raw = a;
    raw.normalized = false;
    CHECK_THROWS_AS(conetomatrices_check(raw, b, 8, 7), std::invalid_argument);
}
