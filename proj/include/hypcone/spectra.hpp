#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "hypcone/rational.hpp"
#include "hypcone/rng.hpp"

namespace hypcone {

/// Spectrahedral representation: the cone {x : sum_i x_i C_i >= 0} given by
/// k x k symmetric matrices C_1..C_n. Float matrices are the working data;
/// an exact rational mirror travels along when the rep was built exactly.
struct SpectraRep {
    int n = 0;
    int k = 0;
    std::vector<Eigen::MatrixXd> mats;
    bool normalized = false;  // sum C_i = I and every C_i PSD
    std::optional<std::vector<std::vector<Rational>>> exact;  // row-major k*k each

    void validate() const {
        if (n < 1 || k < 1) throw std::invalid_argument("SpectraRep: need n >= 1, k >= 1");
        if (static_cast<int>(mats.size()) != n)
            throw std::invalid_argument("SpectraRep: expected n matrices");
        for (const auto& m : mats) {
            if (m.rows() != k || m.cols() != k)
                throw std::invalid_argument("SpectraRep: matrix size mismatch");
            if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff()))
                throw std::invalid_argument("SpectraRep: matrix not symmetric");
        }
        if (exact) {
            if (static_cast<int>(exact->size()) != n)
                throw std::invalid_argument("SpectraRep: exact mirror has wrong count");
            for (const auto& m : *exact)
                if (m.size() != static_cast<std::size_t>(k) * k)
                    throw std::invalid_argument("SpectraRep: exact matrix size mismatch");
        }
    }

    Eigen::MatrixXd pencil(std::span<const double> x) const {
        if (static_cast<int>(x.size()) != n)
            throw std::invalid_argument("SpectraRep::pencil: dimension mismatch");
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k, k);
        for (int i = 0; i < n; ++i) m += x[i] * mats[i];
        return m;
    }
};

/// Smallest eigenvalue of a symmetric matrix.
inline double min_eigenvalue(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("min_eigenvalue: solver failed");
    return es.eigenvalues().minCoeff();
}

inline bool psd_check(const Eigen::MatrixXd& m, double tol = 1e-9) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    return min_eigenvalue(m) >= -tol * scale;
}

/// Exact PSD test for a rational symmetric matrix (row-major, k x k):
/// Gaussian elimination with positive pivots. A symmetric matrix is PSD
/// iff every elimination step finds a positive diagonal pivot or the
/// remaining block is identically zero.
inline bool psd_check_exact(std::vector<Rational> m, int k) {
    if (static_cast<std::size_t>(k) * k != m.size())
        throw std::invalid_argument("psd_check_exact: size mismatch");
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    auto at = [&](int r, int c) -> Rational& { return m[static_cast<std::size_t>(r) * k + c]; };
    int live = k;
    while (live > 0) {
        int piv = 0;
        for (int i = 1; i < live; ++i)
            if (at(idx[i], idx[i]) > at(idx[piv], idx[piv])) piv = i;
        const Rational d = at(idx[piv], idx[piv]);
        if (d < 0) return false;
        if (d == 0) {
            // All remaining diagonals are <= 0, hence 0 was the max: PSD
            // forces the whole remaining block to vanish.
            for (int i = 0; i < live; ++i)
                for (int j = 0; j < live; ++j)
                    if (at(idx[i], idx[j]) != 0) return false;
            return true;
        }
        std::swap(idx[piv], idx[live - 1]);
        const int p = idx[live - 1];
        --live;
        for (int i = 0; i < live; ++i) {
            const Rational f = at(idx[i], p) / d;
            if (f == 0) continue;
            for (int j = 0; j < live; ++j) at(idx[i], idx[j]) -= f * at(p, idx[j]);
        }
    }
    return true;
}

/// Membership in the spectrahedral cone, floating path.
inline bool spec_cone_contains(const SpectraRep& rep, std::span<const double> x,
                               double tol = 1e-9) {
    return psd_check(rep.pencil(x), tol);
}

/// Exact membership for reps carrying a rational mirror.
inline bool contains_exact(const SpectraRep& rep, std::span<const Rational> x) {
    if (!rep.exact) throw std::invalid_argument("contains_exact: rep has no exact matrices");
    if (static_cast<int>(x.size()) != rep.n)
        throw std::invalid_argument("contains_exact: dimension mismatch");
    std::vector<Rational> m(static_cast<std::size_t>(rep.k) * rep.k, Rational(0));
    for (int i = 0; i < rep.n; ++i) {
        if (x[i] == 0) continue;
        const auto& ci = (*rep.exact)[i];
        for (std::size_t e = 0; e < m.size(); ++e) m[e] += x[i] * ci[e];
    }
    return psd_check_exact(std::move(m), rep.k);
}

/// max_i of the spectral norm of A_i - B_i.
inline double mdist(const SpectraRep& a, const SpectraRep& b) {
    if (a.n != b.n || a.k != b.k) throw std::invalid_argument("mdist: shape mismatch");
    double worst = 0.0;
    for (int i = 0; i < a.n; ++i) {
        const Eigen::MatrixXd d = a.mats[i] - b.mats[i];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(d, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw std::runtime_error("mdist: solver failed");
        worst = std::max(worst, es.eigenvalues().cwiseAbs().maxCoeff());
    }
    return worst;
}

struct NormalizeOptions {
    double psd_tol = 1e-8;        // PSD slack after kernel projection, relative
    double rank_tol = 1e-10;      // kernel cutoff, relative to largest eigenvalue
    double residual_tol = 1e-9;   // allowed deviation of sum C_i' from I
};

/// Normalization: drop the common kernel of all C_i, check the projected
/// matrices are PSD (the cone contains the orthant), then conjugate by
/// M^{-1/2} for M the projected sum, so the output matrices sum to the
/// identity and span the same cone.
inline SpectraRep normalize(const SpectraRep& rep, const NormalizeOptions& opt = {}) {
    rep.validate();

    // v lies in every kernel iff it kills sum |C_i|, a PSD surrogate with
    // the same scale as the inputs (kernels of symmetric C and |C| agree).
    Eigen::MatrixXd surrogate = Eigen::MatrixXd::Zero(rep.k, rep.k);
    for (const auto& c : rep.mats) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c);
        if (es.info() != Eigen::Success) throw std::runtime_error("normalize: eigensolver failed");
        surrogate += es.eigenvectors() * es.eigenvalues().cwiseAbs().asDiagonal() *
                     es.eigenvectors().transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ks(surrogate);
    if (ks.info() != Eigen::Success) throw std::runtime_error("normalize: eigensolver failed");
    if (ks.eigenvalues().maxCoeff() <= 0)
        throw std::domain_error("normalize: all matrices vanish");
    const double kernel_cut = opt.rank_tol * ks.eigenvalues().maxCoeff();
    std::vector<int> keep;
    for (int i = 0; i < rep.k; ++i)
        if (ks.eigenvalues()(i) > kernel_cut) keep.push_back(i);
    const int r = static_cast<int>(keep.size());
    Eigen::MatrixXd basis(rep.k, r);
    if (r == rep.k) {
        // No kernel to cut: keep the caller's coordinates instead of the
        // (arbitrary, degenerate) surrogate eigenbasis.
        basis.setIdentity();
    } else {
        for (int j = 0; j < r; ++j) basis.col(j) = ks.eigenvectors().col(keep[j]);
    }

    std::vector<Eigen::MatrixXd> projected;
    projected.reserve(rep.n);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(r, r);
    for (int i = 0; i < rep.n; ++i) {
        Eigen::MatrixXd ci = basis.transpose() * rep.mats[i] * basis;
        ci = ((ci + ci.transpose()) / 2).eval();
        const double scale = std::max(1.0, ci.cwiseAbs().maxCoeff());
        if (min_eigenvalue(ci) < -opt.psd_tol * scale)
            throw std::domain_error("normalize: matrix not PSD off the common kernel");
        m += ci;
        projected.push_back(std::move(ci));
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ms(m);
    if (ms.info() != Eigen::Success) throw std::runtime_error("normalize: eigensolver failed");
    const Eigen::VectorXd ev = ms.eigenvalues();
    if (ev.minCoeff() <= opt.rank_tol * std::max(ev.maxCoeff(), 0.0))
        throw std::runtime_error("normalize: projected sum is singular, rank threshold misread");
    // Symmetric inverse square root: basis-free whitening, so feeding an
    // already-normalized rep back in reproduces it up to roundoff.
    const Eigen::MatrixXd w = ms.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() *
                              ms.eigenvectors().transpose();

    SpectraRep out;
    out.n = rep.n;
    out.k = r;
    out.normalized = true;
    out.mats.reserve(rep.n);
    Eigen::MatrixXd check = Eigen::MatrixXd::Zero(r, r);
    for (int i = 0; i < rep.n; ++i) {
        Eigen::MatrixXd ci = w.transpose() * projected[i] * w;
        ci = ((ci + ci.transpose()) / 2).eval();
        check += ci;
        out.mats.push_back(std::move(ci));
    }
    if ((check - Eigen::MatrixXd::Identity(r, r)).cwiseAbs().maxCoeff() > opt.residual_tol)
        throw std::runtime_error("normalize: conjugation residual exceeds tolerance");
    return out;
}

/// Coordinate rep of the nonnegative orthant: C_i = e_i e_i^T. Already
/// normalized, and exact.
inline SpectraRep diagonal_rep(int n) {
    if (n < 1) throw std::invalid_argument("diagonal_rep: need n >= 1");
    SpectraRep rep;
    rep.n = n;
    rep.k = n;
    rep.normalized = true;
    rep.exact.emplace();
    for (int i = 0; i < n; ++i) {
        rep.mats.push_back(Eigen::MatrixXd::Zero(n, n));
        rep.mats.back()(i, i) = 1.0;
        std::vector<Rational> ex(static_cast<std::size_t>(n) * n, Rational(0));
        ex[static_cast<std::size_t>(i) * n + i] = 1;
        rep.exact->push_back(std::move(ex));
    }
    return rep;
}

/// Random rep with PSD Gram matrices, then normalized. Deterministic in
/// the seed and independent of thread count.
inline SpectraRep random_normalized_rep(int n, int k, std::uint64_t seed) {
    if (n < 1 || k < 1) throw std::invalid_argument("random_normalized_rep: bad shape");
    Rng rng = rng_stream(seed, "spectra-rep");
    SpectraRep rep;
    rep.n = n;
    rep.k = k;
    for (int i = 0; i < n; ++i) {
        Eigen::MatrixXd g(k, k);
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c) g(r, c) = rng.next_normal();
        rep.mats.push_back(g.transpose() * g / k);
    }
    return normalize(rep);
}

/// Convex blend toward an independent random normalized rep: stays
/// normalized and PSD, with mdist controlled by delta.
inline SpectraRep perturb_normalized(const SpectraRep& rep, double delta, std::uint64_t seed) {
    if (!rep.normalized) throw std::invalid_argument("perturb_normalized: rep must be normalized");
    if (delta < 0 || delta > 1) throw std::invalid_argument("perturb_normalized: delta in [0,1]");
    const SpectraRep other = random_normalized_rep(rep.n, rep.k, seed);
    SpectraRep out = rep;
    for (int i = 0; i < rep.n; ++i)
        out.mats[i] = (1 - delta) * rep.mats[i] + delta * other.mats[i];
    out.exact.reset();
    return out;
}

struct ShiftWitnessReport {
    int samples = 0;
    int accepted = 0;    // sampled points landing in the source cone
    int violations = 0;  // shifted points escaping the target cone
    double mdist_value = 0.0;
    double bound = 0.0;  // n^{3/2} * mdist, the certified travel distance
    bool ok = false;
};

/// The matrix-distance to cone-distance transfer: any x in K_A with
/// |x|_inf <= 1 lands in K_B after the shift x + n*mdist*1, which moves it
/// exactly n^{3/2}*mdist in Euclidean norm. Samples both directions.
inline ShiftWitnessReport shift_witness_check(const SpectraRep& a, const SpectraRep& b,
                                              int samples, std::uint64_t seed,
                                              double tol = 1e-9) {
    if (!a.normalized || !b.normalized)
        throw std::invalid_argument("shift_witness_check: reps must be normalized");
    if (a.n != b.n || a.k != b.k) throw std::invalid_argument("shift_witness_check: shape mismatch");
    const int n = a.n;
    const double md = mdist(a, b);

    ShiftWitnessReport rep;
    rep.samples = samples;
    rep.mdist_value = md;
    rep.bound = n * std::sqrt(static_cast<double>(n)) * md;

    Rng rng = rng_stream(seed, "shift-witness");
    const double shift = n * md;
    for (int s = 0; s < samples; ++s) {
        std::vector<double> x(n);
        for (auto& c : x) c = 2 * rng.next_double() - 1;  // |x|_inf <= 1
        const SpectraRep& src = (s % 2 == 0) ? a : b;
        const SpectraRep& dst = (s % 2 == 0) ? b : a;
        if (!psd_check(src.pencil(x), tol)) continue;
        ++rep.accepted;
        std::vector<double> y = x;
        for (auto& c : y) c += shift;
        if (!psd_check(dst.pencil(y), tol)) ++rep.violations;
    }
    rep.ok = rep.violations == 0;
    return rep;
}

}  // namespace hypcone
