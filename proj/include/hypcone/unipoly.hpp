#pragma once

#include <span>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hypcone/interval.hpp"
#include "hypcone/rational.hpp"

namespace hypcone {

// Dense univariate polynomial over Q, coefficients stored lowest-degree
// first. Invariant: the coefficient vector is either empty (the zero
// polynomial) or ends with a nonzero leading coefficient.
class UniPoly {
public:
    UniPoly() = default;

    explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UniPoly constant(Rational v) {
        UniPoly p;
        if (v != 0) p.c_.push_back(std::move(v));
        return p;
    }

    /// Monic product of (t - r) over the given roots.
    static UniPoly from_roots(std::span<const Rational> roots);

    bool is_zero() const { return c_.empty(); }

    /// Degree, with the zero polynomial mapped to -1.
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    const Rational& coeff(std::size_t k) const {
        static const Rational zero(0);
        return k < c_.size() ? c_[k] : zero;
    }

    const Rational& leading() const {
        if (c_.empty()) throw std::domain_error("UniPoly: zero polynomial has no leading coefficient");
        return c_.back();
    }

    const std::vector<Rational>& coeffs() const { return c_; }

    Rational operator()(const Rational& t) const {
        Rational acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
        return acc;
    }

    double eval_double(double t) const {
        double acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + it->convert_to<double>();
        return acc;
    }

    /// Interval Horner evaluation; the enclosure is exact rational, so the
    /// only looseness is the dependency effect of the Horner recurrence.
    RatInterval operator()(const RatInterval& t) const {
        RatInterval acc{Rational(0)};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + RatInterval(*it);
        return acc;
    }

    UniPoly operator-() const {
        UniPoly r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }

    UniPoly& operator+=(const UniPoly& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }

    UniPoly& operator-=(const UniPoly& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }

    UniPoly& operator*=(const Rational& s) {
        if (s == 0) {
            c_.clear();
            return *this;
        }
        for (auto& v : c_) v *= s;
        return *this;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly();
        std::vector<Rational> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
        return UniPoly(std::move(d));
    }

    /// p(t + s) by iterated synthetic division (Taylor shift); exact.
    UniPoly shift(const Rational& s) const {
        if (c_.empty() || s == 0) return *this;
        std::vector<Rational> w = c_;
        const std::size_t d = w.size() - 1;
        for (std::size_t k = 0; k < d; ++k) {
            for (std::size_t i = d; i-- > k;) w[i] += s * w[i + 1];
        }
        return UniPoly(std::move(w));
    }

    std::string to_string() const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == 0) continue;
            if (!first) os << (c_[i] > 0 ? " + " : " - ");
            else if (c_[i] < 0) os << "-";
            first = false;
            const Rational a = c_[i] < 0 ? Rational(-c_[i]) : c_[i];
            if (a != 1 || i == 0) os << hypcone::to_string(a);
            if (i >= 1) {
                if (a != 1) os << "*";
                os << "t";
                if (i >= 2) os << "^" << i;
            }
        }
        return os.str();
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
};

inline UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
inline UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
inline UniPoly operator*(UniPoly a, const Rational& s) { return a *= s; }
inline UniPoly operator*(const Rational& s, UniPoly a) { return a *= s; }

inline UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<Rational> c(a.coeffs().size() + b.coeffs().size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        if (a.coeffs()[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] += a.coeffs()[i] * b.coeffs()[j];
    }
    return UniPoly(std::move(c));
}

inline UniPoly UniPoly::from_roots(std::span<const Rational> roots) {
    UniPoly p = constant(1);
    for (const Rational& r : roots) p = p * UniPoly({-r, Rational(1)});
    return p;
}

/// Euclidean division; returns (quotient, remainder) with deg r < deg b.
inline std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw std::domain_error("UniPoly divmod: division by zero polynomial");
    std::vector<Rational> rem(a.coeffs());
    const int db = b.degree();
    if (a.degree() < db) return {UniPoly(), a};
    std::vector<Rational> quo(a.degree() - db + 1, Rational(0));
    const Rational& lead = b.leading();
    for (int i = a.degree(); i >= db; --i) {
        const Rational f = rem[i] / lead;
        if (f == 0) continue;
        quo[i - db] = f;
        for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * b.coeff(j);
    }
    return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
}

inline UniPoly monic(const UniPoly& p) {
    if (p.is_zero()) return p;
    UniPoly r = p;
    r *= Rational(1) / p.leading();
    return r;
}

/// Monic gcd via the Euclidean algorithm. Coefficients are renormalized to
/// monic after every step; over Q this is cheap and keeps sizes bounded.
inline UniPoly gcd(UniPoly a, UniPoly b) {
    a = monic(a);
    b = monic(b);
    while (!b.is_zero()) {
        UniPoly r = divmod(a, b).second;
        a = std::move(b);
        b = monic(r);
    }
    return a;
}

/// Largest squarefree divisor (monic).
inline UniPoly squarefree_part(const UniPoly& p) {
    if (p.degree() <= 0) return monic(p);
    const UniPoly g = gcd(p, p.derivative());
    if (g.degree() <= 0) return monic(p);
    return monic(divmod(p, g).first);
}

/// Yun's algorithm: returns f_1, f_2, ... with p ~ prod f_i^i, each f_i
/// squarefree and pairwise coprime (some factors may be constant 1).
inline std::vector<UniPoly> yun_decomposition(const UniPoly& p) {
    std::vector<UniPoly> out;
    if (p.degree() <= 0) return out;
    UniPoly a = monic(p);
    UniPoly g = gcd(a, a.derivative());
    if (g.degree() == 0) {
        out.push_back(a);
        return out;
    }
    UniPoly w = divmod(a, g).first;  // product of the distinct roots
    UniPoly y = divmod(a.derivative(), g).first;
    UniPoly z = y - w.derivative();
    while (!z.is_zero()) {
        UniPoly f = gcd(w, z);
        out.push_back(f);
        w = divmod(w, f).first;
        y = divmod(z, f).first;
        z = y - w.derivative();
    }
    out.push_back(w);
    return out;
}

}  // namespace hypcone
