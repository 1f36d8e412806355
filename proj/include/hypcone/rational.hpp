#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hypcone {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

inline Integer factorial(unsigned n) {
    Integer r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Integer binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Integer r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;  // exact: r is always a binomial coefficient here
    }
    return r;
}

inline Integer pow_int(const Integer& base, unsigned e) {
    return boost::multiprecision::pow(base, e);
}

/// base^e for signed exponents; throws on 0^negative.
inline Rational pow_rat(const Rational& base, long e) {
    if (e == 0) return 1;
    if (base == 0) {
        if (e < 0) throw std::domain_error("pow_rat: zero base, negative exponent");
        return 0;
    }
    const unsigned a = static_cast<unsigned>(e < 0 ? -e : e);
    Rational r(pow_int(numerator(base), a), pow_int(denominator(base), a));
    if (e < 0) r = 1 / r;
    return r;
}

namespace detail {

/// Base-10 integer from a [+-]?digits string. The backing bignum constructor
/// treats a leading 0 as an octal prefix, so digit strings like "0125" must
/// never reach it raw.
inline Integer parse_integer(std::string s) {
    bool neg = false;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    if (i >= s.size()) throw std::invalid_argument("parse_rational: bad integer '" + s + "'");
    for (std::size_t j = i; j < s.size(); ++j)
        if (s[j] < '0' || s[j] > '9')
            throw std::invalid_argument("parse_rational: bad integer '" + s + "'");
    while (i + 1 < s.size() && s[i] == '0') ++i;
    Integer v(s.substr(i));
    return neg ? Integer(-v) : v;
}

}  // namespace detail

/// Parses "p", "p/q", or a plain decimal like "-0.125". Used by the JSON
/// coefficient format, which stores rationals as strings.
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        Integer num = detail::parse_integer(s.substr(0, slash));
        Integer den = detail::parse_integer(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
        return Rational(num, den);
    }
    const auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(detail::parse_integer(s));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const unsigned frac = static_cast<unsigned>(s.size() - dot - 1);
    if (digits == "-" || digits == "+" || digits.empty())
        throw std::invalid_argument("parse_rational: bad literal '" + s + "'");
    return Rational(detail::parse_integer(digits), pow_int(10, frac));
}

inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

namespace detail {

// log2 of a positive integer with ~1e-15 relative accuracy: take the top 53
// bits exactly, defer the rest to the exponent.
inline double log2_positive(const Integer& x) {
    const unsigned long b = boost::multiprecision::msb(x);
    if (b <= 62) return std::log2(x.convert_to<double>());
    const Integer top = x >> (b - 52);
    return static_cast<double>(b - 52) + std::log2(top.convert_to<double>());
}

}  // namespace detail

/// Nearest-value log2 of a positive rational. Error stays below
/// 1e-13 * (1 + |result|), which the directed variants absorb.
inline double log2_approx(const Rational& r) {
    if (r <= 0) throw std::domain_error("log2_approx: nonpositive argument");
    return detail::log2_positive(numerator(r)) - detail::log2_positive(denominator(r));
}

inline double log2_lower(const Rational& r) {
    const double v = log2_approx(r);
    return v - 1e-12 - 1e-13 * std::fabs(v);
}

inline double log2_upper(const Rational& r) {
    const double v = log2_approx(r);
    return v + 1e-12 + 1e-13 * std::fabs(v);
}

/// Rational u with u >= sqrt(r), accurate to about 2^-bits relative.
inline Rational sqrt_upper(const Rational& r, unsigned bits = 40) {
    if (r < 0) throw std::domain_error("sqrt_upper: negative argument");
    if (r == 0) return 0;
    // sqrt(p/q) = sqrt(p*q)/q; ceil the integer sqrt of the scaled radicand.
    const Integer scaled = numerator(r) * denominator(r) << (2 * bits);
    const Integer root = boost::multiprecision::sqrt(scaled) + 1;
    return Rational(root, denominator(r) << bits);
}

/// Rational l with l <= sqrt(r).
inline Rational sqrt_lower(const Rational& r, unsigned bits = 40) {
    if (r < 0) throw std::domain_error("sqrt_lower: negative argument");
    if (r == 0) return 0;
    const Integer scaled = numerator(r) * denominator(r) << (2 * bits);
    const Integer root = boost::multiprecision::sqrt(scaled);
    return Rational(root, denominator(r) << bits);
}

/// Upper bound on Euler's number, exact to 8 decimal places. Dividing by a
/// larger constant only shrinks the separation thresholds we certify, so an
/// upper bound keeps every derived inequality sound.
inline Rational euler_upper() {
    return Rational(271828183, 100000000);
}

}  // namespace hypcone
