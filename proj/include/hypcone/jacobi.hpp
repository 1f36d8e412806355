#pragma once

#include <stdexcept>

#include "hypcone/interval.hpp"
#include "hypcone/rational.hpp"
#include "hypcone/roots.hpp"
#include "hypcone/unipoly.hpp"

namespace hypcone {

/// The common restriction of e_d to the line t*1 + 1_S over any d-set S:
/// J(t) = (1/(n-d)!) * D^{n-d} [ t^{n-d} (t+1)^d ].
/// With this normalization J equals the restriction coefficient-for-
/// coefficient; J(0) = 1 and all d roots lie in [-1, 0).
inline UniPoly jacobi_restriction(int n, int d) {
    if (d < 1 || d >= n) throw std::invalid_argument("jacobi_restriction: need 1 <= d < n");
    UniPoly p = UniPoly::constant(1);
    for (int i = 0; i < n - d; ++i) p = p * UniPoly({Rational(0), Rational(1)});
    for (int i = 0; i < d; ++i) p = p * UniPoly({Rational(1), Rational(1)});
    for (int i = 0; i < n - d; ++i) p = p.derivative();
    p *= Rational(1, factorial(static_cast<unsigned>(n - d)));
    return p;
}

struct RootSensitivity {
    RootInterval lambda;   // largest root of J
    RatInterval jprime;    // J'(lambda), certified enclosure
    Rational bound;        // n^{-d(n-d)}
    bool ok = false;       // jprime >= bound over the whole enclosure
};

/// Certifies that the largest root of J moves slowly under constant
/// perturbation: J'(lambda_max) >= n^{-d(n-d)}.
inline RootSensitivity jacobi_root_sensitivity(int n, int d, const Tolerance& tol = {}) {
    const UniPoly j = jacobi_restriction(n, d);
    const UniPoly dj = j.derivative();
    RootSensitivity out;
    out.bound = Rational(1, pow_int(n, static_cast<unsigned>(d * (n - d))));
    out.lambda = lambda_max(j, tol);
    RatInterval jp = out.lambda.exact ? RatInterval(dj(out.lambda.iv.lo)) : dj(out.lambda.iv);
    // The largest root is simple, so J' > 0 there; refine until the
    // comparison against the bound is certified either way.
    Rational width = tol.root_width;
    for (int round = 0; round < 64 && !out.lambda.exact; ++round) {
        if (jp.lo >= out.bound || jp.hi < out.bound) break;
        width /= 1024;
        refine_root(j, out.lambda, width);
        jp = out.lambda.exact ? RatInterval(dj(out.lambda.iv.lo)) : dj(out.lambda.iv);
    }
    out.jprime = jp;
    out.ok = jp.lo >= out.bound;
    return out;
}

}  // namespace hypcone
