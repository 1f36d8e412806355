// Acceptance gate: ten numbered end-to-end checks over the library and the
// CLI, one PASS/FAIL line each. The CLI binary path comes in as argv[1];
// the final check replays every subcommand twice and compares the bytes.
// Exit status is 0 only when all ten pass.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "hypcone/bounds.hpp"
#include "hypcone/hdist.hpp"
#include "hypcone/jacobi.hpp"

using namespace hypcone;

namespace {

// Pinned gate parameters. Changing any of these changes what a PASS means.
constexpr double kJacobiBudgetSec = 10.0;
constexpr double kInterlaceBudgetSec = 30.0;
constexpr double kEdmdBudgetSec = 120.0;
constexpr double kNuijBudgetSec = 300.0;
constexpr int kInterlacePolys = 1000;
constexpr int kEdmdTrialsPerShape = 1000;
constexpr int kNuijFamilies = 20;
constexpr int kNuijSamplesPerFamily = 500;
constexpr int kSeparationPairs = 100;
constexpr int kCertPairs = 20;
constexpr double kEstimateVsCertSlack = 1e-3;  // probe re-rounding concession
constexpr int kNormalizeReps = 100;
constexpr int kMembershipPointsPerRep = 10000;
constexpr double kNormalizeTol = 1e-10;
constexpr double kMarginGate = 1e-8;
constexpr int kConePairs = 100;
constexpr double kChainRelErr = 1e-12;
constexpr double kGrowthBandWidth = 1e-9;

using Clock = std::chrono::steady_clock;

double secs_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

struct CliRun {
    std::string out;
    int status = -1;
};

CliRun run_cli(const std::string& cli, const std::string& args) {
    CliRun r;
    const std::string cmd = "'" + cli + "' " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
    const int wait_status = pclose(p);
    if (wait_status >= 0 && WIFEXITED(wait_status)) r.status = WEXITSTATUS(wait_status);
    return r;
}

// 1. Root sensitivity of the common restriction: certified derivative lower
//    bound across every shape, plus the exactly solvable spot case.
std::pair<bool, std::string> criterion1() {
    const auto t0 = Clock::now();
    int shapes = 0, certified = 0;
    for (int n = 3; n <= 10; ++n)
        for (int d = 1; d < n; ++d) {
            ++shapes;
            if (jacobi_root_sensitivity(n, d).ok) ++certified;
        }
    const RootSensitivity spot = jacobi_root_sensitivity(3, 2);
    const bool spot_ok = spot.lambda.exact && spot.lambda.iv.lo == Rational(-1, 3) &&
                         spot.jprime.lo == 2 && spot.jprime.hi == 2 &&
                         spot.bound == Rational(1, 9);
    const double dt = secs_since(t0);
    const bool pass = shapes == 44 && certified == shapes && spot_ok && dt < kJacobiBudgetSec;
    return {pass, fmt("root sensitivity: %d/%d shapes certified, spot (3,2) exact=%d, %.2fs "
                      "(budget %.0fs)",
                      certified, shapes, spot_ok ? 1 : 0, dt, kJacobiBudgetSec)};
}

// 2. Critical points of random distinct-root polynomials stay inside the
//    [1/n, 1-1/n] band, certified exactly, zero violations.
std::pair<bool, std::string> criterion2() {
    const auto t0 = Clock::now();
    struct Slot {
        int violations = 0;
        bool ok = false;
    };
    std::vector<Slot> slots(kInterlacePolys);
    parallel_for_index(kInterlacePolys, [&](std::size_t i) {
        Rng rng = rng_stream(2024, "acc-interlace", i);
        const UniPoly q = random_distinct_root_poly(rng, 2 + static_cast<int>(i % 11));
        const InterlacingReport r = interlacing_ratio_check(q);
        slots[i] = {static_cast<int>(r.violations.size()), r.ok};
    });
    int viol = 0, ok_count = 0;
    for (const Slot& s : slots) {
        viol += s.violations;
        if (s.ok) ++ok_count;
    }
    const double dt = secs_since(t0);
    const bool pass = viol == 0 && ok_count == kInterlacePolys && dt < kInterlaceBudgetSec;
    return {pass, fmt("critical-point band: %d polynomials, %d violations, %.2fs (budget %.0fs)",
                      kInterlacePolys, viol, dt, kInterlaceBudgetSec)};
}

// 3. Norm comparison on the variety e_{d-1} = 0 across every desk shape.
std::pair<bool, std::string> criterion3() {
    const auto t0 = Clock::now();
    int shapes = 0, ok_shapes = 0;
    long accepted = 0;
    for (int n = 3; n <= 8; ++n)
        for (int d = 2; d <= std::min(4, n - 1); ++d) {
            ++shapes;
            const EdmdReport r =
                edmd_oracle(n, d, kEdmdTrialsPerShape, 7000 + 16 * n + d);
            accepted += r.accepted;
            if (r.ok) ++ok_shapes;
        }
    const double dt = secs_since(t0);
    const bool pass = shapes == 15 && ok_shapes == shapes && dt < kEdmdBudgetSec;
    return {pass, fmt("variety norm comparison: %d/%d shapes ok, %ld accepted points, %.2fs "
                      "(budget %.0fs)",
                      ok_shapes, shapes, accepted, dt, kEdmdBudgetSec)};
}

// 4. Sampled hyperbolicity of perturbed polynomials at (6,2) under the
//    derived perturbation size.
std::pair<bool, std::string> criterion4() {
    const auto t0 = Clock::now();
    int restrictions = 0, failures = 0;
    for (int t = 0; t < kNuijFamilies; ++t) {
        const MatchingFamily fam =
            sample_family(6, 2, rng_stream(4100, "acc-nuij-family", t).next_u64());
        Rng sel = rng_stream(4100, "acc-nuij-selector", t);
        std::vector<std::uint8_t> s(fam.matchings.size());
        for (auto& b : s) b = static_cast<std::uint8_t>(sel.next_below(2));
        const PerturbedPoly ps = make_perturbed(fam, s, default_epsilon(6, 2, fam.size()));
        NuijConfig cfg;
        cfg.samples = kNuijSamplesPerFamily;
        cfg.seed = rng_stream(4100, "acc-nuij-run", t).next_u64();
        const NuijReport r = verify_hyperbolic_sampled(ps, cfg);
        restrictions += r.samples;
        failures += r.failures;
    }
    const double dt = secs_since(t0);
    const bool pass = restrictions == kNuijFamilies * kNuijSamplesPerFamily && failures == 0 &&
                      dt < kNuijBudgetSec;
    return {pass, fmt("perturbed hyperbolicity: %d restrictions over %d polynomials, %d "
                      "failures, %.2fs (budget %.0fs)",
                      restrictions, kNuijFamilies, failures, dt, kNuijBudgetSec)};
}

// 5. Embedding separation of distinct perturbation pairs at (6,2).
std::pair<bool, std::string> criterion5() {
    const auto t0 = Clock::now();
    int ok_pairs = 0;
    for (int t = 0; t < kSeparationPairs; ++t) {
        const MatchingFamily fam =
            sample_family(6, 2, rng_stream(5100, "acc-sep-family", t).next_u64());
        Rng sel = rng_stream(5100, "acc-sep-selector", t);
        auto draw = [&] {
            std::vector<std::uint8_t> s(fam.matchings.size());
            for (auto& b : s) b = static_cast<std::uint8_t>(sel.next_below(2));
            return s;
        };
        const std::vector<std::uint8_t> s1 = draw();
        std::vector<std::uint8_t> s2 = draw();
        while (s2 == s1) s2 = draw();
        const Rational eps = default_epsilon(6, 2, fam.size());
        const SeparationReport r =
            embedding_separation(make_perturbed(fam, s1, eps), make_perturbed(fam, s2, eps));
        if (r.ok) ++ok_pairs;
    }
    const double dt = secs_since(t0);
    const bool pass = ok_pairs == kSeparationPairs;
    return {pass, fmt("embedding separation: %d/%d pairs certified above the threshold, %.2fs",
                      ok_pairs, kSeparationPairs, dt)};
}

// 6. Certified cone-distance lower bound beats its closed-form floor, and
//    the sampled estimator fed the certificate's witness recovers it.
std::pair<bool, std::string> criterion6() {
    const auto t0 = Clock::now();
    int cert_ok = 0, est_ok = 0;
    for (int t = 0; t < kCertPairs; ++t) {
        const MatchingFamily fam =
            sample_family(6, 2, rng_stream(6100, "acc-cert-family", t).next_u64());
        Rng sel = rng_stream(6100, "acc-cert-selector", t);
        std::vector<std::uint8_t> s1(fam.matchings.size());
        for (auto& b : s1) b = static_cast<std::uint8_t>(sel.next_below(2));
        std::vector<std::uint8_t> s2(s1.size());
        for (std::size_t i = 0; i < s1.size(); ++i) s2[i] = s1[i] ? 0 : 1;
        const Rational eps = default_epsilon(6, 2, fam.size());
        const PerturbedPoly a = make_perturbed(fam, s1, eps);
        const PerturbedPoly b = make_perturbed(fam, s2, eps);

        const HdistCertificate cert = hdist_lower_bound_cert(a, b);
        if (cert.ok && !cert.trivial_pair) ++cert_ok;

        const HyperbolicOracle oa(a.poly);
        const HyperbolicOracle ob(b.poly);
        HdistConfig hc;
        hc.samples = 8;
        hc.seed = rng_stream(6100, "acc-cert-est", t).next_u64();
        hc.extra_a = {cert.probe};
        hc.extra_b = {cert.probe};
        const HausdorffEstimate est = hdist_estimate(oa, ob, hc);
        if (est.lower >= cert.certified.lo.convert_to<double>() * (1 - kEstimateVsCertSlack))
            ++est_ok;
    }
    const double dt = secs_since(t0);
    const bool pass = cert_ok == kCertPairs && est_ok == kCertPairs;
    return {pass, fmt("certified cone separation: %d/%d certificates above the floor, %d/%d "
                      "estimates covering (slack %.0e), %.2fs",
                      cert_ok, kCertPairs, est_ok, kCertPairs, kEstimateVsCertSlack, dt)};
}

// 7. Normalization: identity sum, PSD terms, and membership preservation on
//    random orthant-containing inputs.
std::pair<bool, std::string> criterion7() {
    const auto t0 = Clock::now();
    std::vector<int> rep_ok(kNormalizeReps, 0);
    std::vector<long> compared(kNormalizeReps, 0);
    parallel_for_index(kNormalizeReps, [&](std::size_t t) {
        Rng rng = rng_stream(7100, "acc-normalize", t);
        const int k = 1 + static_cast<int>(t % 6);
        const int n = 1 + static_cast<int>(t % 5);
        SpectraRep raw;
        raw.n = n;
        raw.k = k;
        for (int i = 0; i < n; ++i) {
            Eigen::MatrixXd g(k, k);
            for (int r = 0; r < k; ++r)
                for (int c = 0; c < k; ++c) g(r, c) = rng.next_normal();
            raw.mats.push_back(g.transpose() * g / k);  // PSD: cone contains the orthant
        }
        const SpectraRep out = normalize(raw);

        bool ok = out.normalized;
        Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(out.k, out.k);
        for (const auto& m : out.mats) {
            sum += m;
            if (min_eigenvalue(m) < -kNormalizeTol) ok = false;
        }
        if ((sum - Eigen::MatrixXd::Identity(out.k, out.k)).cwiseAbs().maxCoeff() >
            kNormalizeTol)
            ok = false;

        long cmp = 0;
        for (int p = 0; p < kMembershipPointsPerRep && ok; ++p) {
            std::vector<double> x(n);
            for (auto& c : x) c = 4 * rng.next_double() - 2;
            const Eigen::MatrixXd pin = raw.pencil(x);
            const Eigen::MatrixXd pout = out.pencil(x);
            const double li = min_eigenvalue(pin);
            const double lo = min_eigenvalue(pout);
            const double si = std::max(1.0, pin.cwiseAbs().maxCoeff());
            const double so = std::max(1.0, pout.cwiseAbs().maxCoeff());
            if (std::abs(li) <= kMarginGate * si || std::abs(lo) <= kMarginGate * so) continue;
            ++cmp;
            if ((li >= 0) != (lo >= 0)) ok = false;
        }
        rep_ok[t] = ok ? 1 : 0;
        compared[t] = cmp;
    });
    int ok_reps = 0;
    long total_cmp = 0;
    for (int t = 0; t < kNormalizeReps; ++t) {
        ok_reps += rep_ok[t];
        total_cmp += compared[t];
    }
    const double dt = secs_since(t0);
    const bool pass = ok_reps == kNormalizeReps;
    return {pass, fmt("normalization: %d/%d reps ok (sum=I and PSD within %.0e), %ld gated "
                      "membership agreements, %.2fs",
                      ok_reps, kNormalizeReps, kNormalizeTol, total_cmp, dt)};
}

// 8. Matrix distance controls cone distance on random normalized pairs.
std::pair<bool, std::string> criterion8() {
    const auto t0 = Clock::now();
    int ok_pairs = 0;
    for (int t = 0; t < kConePairs; ++t) {
        Rng rng = rng_stream(8100, "acc-ctm", t);
        const int n = 2 + t % 4;
        const int k = 2 + t % 5;
        const SpectraRep a = random_normalized_rep(n, k, rng.next_u64());
        const double delta = 0.05 + 0.25 * rng.next_double();
        const SpectraRep b = perturb_normalized(a, delta, rng.next_u64());
        const ConeMatrixReport r = conetomatrices_check(a, b, 32, rng.next_u64());
        if (r.ok && r.shift.violations == 0) ++ok_pairs;
    }
    const double dt = secs_since(t0);
    const bool pass = ok_pairs == kConePairs;
    return {pass, fmt("cone-to-matrix transfer: %d/%d pairs within n^(3/2)*mdist with member "
                      "shift witnesses, %.2fs",
                      ok_pairs, kConePairs, dt)};
}

// 9. Constant chain: frozen small value, dual-path consistency, and the
//    growth of the headline exponent with the family size.
std::pair<bool, std::string> criterion9() {
    const bool frozen = perturbation_budget(4, 2).value == Rational(3, 32768);
    auto expected_family = [](int n, int d) {
        const Integer den = Integer(1) << (d + 2);
        return static_cast<int>(((binomial(n, d) + den - 1) / den).convert_to<long>());
    };
    const BoundChain lo = packing_bound(6, 2, 3, expected_family(6, 2));
    const BoundChain hi = packing_bound(12, 2, 3, expected_family(12, 2));
    const BoundChain q = packing_bound(4, 2, 2, expected_family(4, 2));
    const bool consistent = lo.consistent && hi.consistent && q.consistent &&
                            lo.max_rel_err <= kChainRelErr && hi.max_rel_err <= kChainRelErr &&
                            q.max_rel_err <= kChainRelErr;
    const double growth = hi.headline_exponent_log2 - lo.headline_exponent_log2;
    const double expected_growth = 0.5 * std::log2(5.0);  // family sizes 5 vs 1
    const bool growth_ok = std::abs(growth - expected_growth) < kGrowthBandWidth;
    const bool extras = lo.floor_ge_gamma && lo.b_min >= 2 && hi.b_min >= 2;
    const bool pass = frozen && consistent && growth_ok && extras;
    return {pass, fmt("constant chain: frozen R(4,2) %s, rel err <= %.0e on 3 shapes %s, "
                      "headline growth %.6f (pinned %.6f)",
                      frozen ? "matches" : "MISMATCH", kChainRelErr,
                      consistent ? "holds" : "VIOLATED", growth,
                      expected_growth)};
}

// 10. Byte-level reproducibility of every CLI subcommand with fixed seeds.
std::pair<bool, std::string> criterion10(const std::string& cli) {
    if (cli.empty()) return {false, "reproducibility: no CLI path given as argv[1]"};
    const auto t0 = Clock::now();
    const std::vector<std::string> cmds = {
        "family --n 6 --d 2 --seed 3",
        "verify-lemma aspect --samples 40 --seed 2",
        "verify-lemma edmd --n 5 --d 2 --samples 60 --seed 2",
        "verify-lemma jacobi --n 5 --d 2",
        "verify-lemma restrictfar --n 6 --d 2 --pairs 3 --seed 2",
        "verify-lemma conetomatrices --pairs 3 --samples 60 --seed 2",
        "verify-lemma nuij --n 6 --d 2 --samples 50 --seed 4",
        "hdist --n 6 --d 2 --samples 16 --seed 2",
        "pack --n 4 --d 2 --pairs 3 --seed 2",
        "bounds --n 6 --d 2 --B 3",
    };
    int stable = 0;
    std::string first_bad;
    for (const std::string& c : cmds) {
        const CliRun r1 = run_cli(cli, c);
        const CliRun r2 = run_cli(cli, c);
        if (r1.status == 0 && r2.status == 0 && !r1.out.empty() && r1.out == r2.out) {
            ++stable;
        } else if (first_bad.empty()) {
            first_bad = c + fmt(" (status %d/%d, bytes %zu/%zu)", r1.status, r2.status,
                                r1.out.size(), r2.out.size());
        }
    }
    const double dt = secs_since(t0);
    const bool pass = stable == static_cast<int>(cmds.size());
    std::string detail = fmt("reproducibility: %d/%zu subcommands byte-identical across two "
                             "runs, %.2fs",
                             stable, cmds.size(), dt);
    if (!pass) detail += " first failure: " + first_bad;
    return {pass, detail};
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    int failures = 0;
    int idx = 0;
    auto report = [&](const std::pair<bool, std::string>& r) {
        ++idx;
        if (!r.first) ++failures;
        std::printf("%s %2d %s\n", r.first ? "PASS" : "FAIL", idx, r.second.c_str());
        std::fflush(stdout);
    };
    report(criterion1());
    report(criterion2());
    report(criterion3());
    report(criterion4());
    report(criterion5());
    report(criterion6());
    report(criterion7());
    report(criterion8());
    report(criterion9());
    report(criterion10(cli));
    std::printf("acceptance: %d/10 passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
