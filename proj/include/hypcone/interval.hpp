#pragma once

#include <algorithm>
#include <stdexcept>

#include "hypcone/rational.hpp"

namespace hypcone {

// Closed interval [lo, hi] with exact rational endpoints. Arithmetic is
// outward-exact (no rounding happens, so enclosures are tight).
struct RatInterval {
    Rational lo;
    Rational hi;

    RatInterval() : lo(0), hi(0) {}
    RatInterval(Rational point) : lo(point), hi(std::move(point)) {}
    RatInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::invalid_argument("RatInterval: lo > hi");
    }

    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }
    bool is_point() const { return lo == hi; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }

    // Sign certainty; zero-straddling intervals are "unknown".
    bool certainly_positive() const { return lo > 0; }
    bool certainly_negative() const { return hi < 0; }
    bool certainly_nonnegative() const { return lo >= 0; }

    RatInterval operator-() const { return RatInterval(-hi, -lo); }

    RatInterval& operator+=(const RatInterval& o) {
        lo += o.lo;
        hi += o.hi;
        return *this;
    }
    RatInterval& operator-=(const RatInterval& o) {
        lo -= o.hi;
        hi -= o.lo;
        return *this;
    }
};

inline RatInterval operator+(RatInterval a, const RatInterval& b) { return a += b; }
inline RatInterval operator-(RatInterval a, const RatInterval& b) { return a -= b; }

inline RatInterval operator*(const RatInterval& a, const RatInterval& b) {
    const Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return RatInterval(std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4}));
}

inline RatInterval operator*(const Rational& s, const RatInterval& a) {
    return s >= 0 ? RatInterval(s * a.lo, s * a.hi) : RatInterval(s * a.hi, s * a.lo);
}

inline RatInterval operator*(const RatInterval& a, const Rational& s) { return s * a; }

inline RatInterval operator/(const RatInterval& a, const Rational& s) {
    if (s == 0) throw std::domain_error("RatInterval: division by zero");
    return a * (Rational(1) / s);
}

inline RatInterval abs(const RatInterval& a) {
    if (a.lo >= 0) return a;
    if (a.hi <= 0) return -a;
    return RatInterval(0, std::max(Rational(-a.lo), a.hi));
}

inline RatInterval hull(const RatInterval& a, const RatInterval& b) {
    return RatInterval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

/// Enclosure of sqrt over a nonnegative interval.
inline RatInterval sqrt(const RatInterval& a, unsigned bits = 40) {
    if (a.lo < 0) throw std::domain_error("RatInterval sqrt: negative lower end");
    return RatInterval(sqrt_lower(a.lo, bits), sqrt_upper(a.hi, bits));
}

}  // namespace hypcone
