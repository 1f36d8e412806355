#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "hypcone/interval.hpp"
#include "hypcone/rational.hpp"
#include "hypcone/unipoly.hpp"

namespace hypcone {

// Sparse homogeneous polynomial over Q in n variables. Every stored term
// has total degree exactly `degree`; the zero polynomial is an empty term
// map with a nominal degree. Exponent vectors are the map keys, so
// iteration order (and hence serialization) is deterministic.
class MultiPoly {
public:
    using Exponents = std::vector<int>;

    MultiPoly(int n, int degree) : n_(n), degree_(degree) {
        if (n < 1) throw std::invalid_argument("MultiPoly: need at least one variable");
        if (degree < 0) throw std::invalid_argument("MultiPoly: negative degree");
    }

    int n() const { return n_; }
    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Exponents, Rational>& terms() const { return terms_; }

    /// Adds coef * x^exps, merging with an existing term. Rejects terms
    /// that would break homogeneity.
    void add_term(const Exponents& exps, const Rational& coef) {
        if (static_cast<int>(exps.size()) != n_)
            throw std::invalid_argument("MultiPoly: exponent vector has wrong length");
        int total = 0;
        for (const int e : exps) {
            if (e < 0) throw std::invalid_argument("MultiPoly: negative exponent");
            total += e;
        }
        if (total != degree_)
            throw std::invalid_argument("MultiPoly: term degree breaks homogeneity");
        if (coef == 0) return;
        auto it = terms_.find(exps);
        if (it == terms_.end()) {
            terms_.emplace(exps, coef);
        } else {
            it->second += coef;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Rational coeff(const Exponents& exps) const {
        const auto it = terms_.find(exps);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    template <typename Scalar>
    Scalar eval_with(std::span<const Scalar> x, const Scalar& one) const {
        if (static_cast<int>(x.size()) != n_)
            throw std::invalid_argument("MultiPoly eval: wrong point dimension");
        Scalar acc = one - one;  // zero of the scalar type
        for (const auto& [exps, coef] : terms_) {
            Scalar term = one;
            for (int i = 0; i < n_; ++i) {
                for (int k = 0; k < exps[i]; ++k) term = term * x[i];
            }
            acc = acc + convert<Scalar>(coef) * term;
        }
        return acc;
    }

    Rational operator()(std::span<const Rational> x) const { return eval_with<Rational>(x, Rational(1)); }

    RatInterval operator()(std::span<const RatInterval> x) const {
        return eval_with<RatInterval>(x, RatInterval(Rational(1)));
    }

    double eval_double(std::span<const double> x) const { return eval_with<double>(x, 1.0); }

    MultiPoly partial(int i) const {
        if (i < 0 || i >= n_) throw std::invalid_argument("MultiPoly partial: variable out of range");
        MultiPoly out(n_, degree_ > 0 ? degree_ - 1 : 0);
        for (const auto& [exps, coef] : terms_) {
            if (exps[i] == 0) continue;
            Exponents e = exps;
            const int k = e[i]--;
            out.add_term(e, coef * k);
        }
        return out;
    }

    std::vector<Rational> gradient(std::span<const Rational> x) const {
        std::vector<Rational> g(n_);
        for (int i = 0; i < n_; ++i) g[i] = partial(i)(x);
        return g;
    }

    MultiPoly operator-() const {
        MultiPoly out(n_, degree_);
        for (const auto& [exps, coef] : terms_) out.terms_.emplace(exps, -coef);
        return out;
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        require_compatible(o);
        for (const auto& [exps, coef] : o.terms_) add_term(exps, coef);
        return *this;
    }

    MultiPoly& operator-=(const MultiPoly& o) {
        require_compatible(o);
        for (const auto& [exps, coef] : o.terms_) add_term(exps, -coef);
        return *this;
    }

    MultiPoly& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [exps, coef] : terms_) coef *= s;
        return *this;
    }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        if (a.n_ != b.n_) throw std::invalid_argument("MultiPoly: mixed variable counts");
        MultiPoly out(a.n_, a.degree_ + b.degree_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(ea);
                for (int i = 0; i < a.n_; ++i) e[i] += eb[i];
                out.add_term(e, ca * cb);
            }
        }
        return out;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.n_ == b.n_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [exps, coef] : terms_) {
            if (!first) os << (coef > 0 ? " + " : " - ");
            else if (coef < 0) os << "-";
            first = false;
            const Rational a = coef < 0 ? Rational(-coef) : coef;
            bool printed = false;
            if (a != 1) {
                os << hypcone::to_string(a);
                printed = true;
            }
            for (int i = 0; i < n_; ++i) {
                if (exps[i] == 0) continue;
                if (printed) os << "*";
                os << "x" << i + 1;
                if (exps[i] > 1) os << "^" << exps[i];
                printed = true;
            }
            if (!printed) os << "1";
        }
        return os.str();
    }

private:
    template <typename Scalar>
    static Scalar convert(const Rational& r) {
        if constexpr (std::is_same_v<Scalar, double>) return r.convert_to<double>();
        else return Scalar(r);
    }

    void require_compatible(const MultiPoly& o) const {
        if (n_ != o.n_ || degree_ != o.degree_)
            throw std::invalid_argument("MultiPoly: incompatible shapes");
    }

    int n_;
    int degree_;
    std::map<Exponents, Rational> terms_;
};

/// Elementary symmetric polynomial e_d in n variables (e_0 = 1).
inline MultiPoly elementary_symmetric(int n, int d) {
    if (d < 0 || d > n) throw std::invalid_argument("elementary_symmetric: need 0 <= d <= n");
    MultiPoly out(n, d);
    std::vector<int> exps(n, 0);
    std::vector<int> pick(d);
    // Enumerate d-subsets in lexicographic order.
    for (int i = 0; i < d; ++i) pick[i] = i;
    for (;;) {
        std::fill(exps.begin(), exps.end(), 0);
        for (const int i : pick) exps[i] = 1;
        out.add_term(exps, 1);
        if (d == 0) break;
        int j = d - 1;
        while (j >= 0 && pick[j] == n - d + j) --j;
        if (j < 0) break;
        ++pick[j];
        for (int k = j + 1; k < d; ++k) pick[k] = pick[k - 1] + 1;
    }
    return out;
}

/// Largest absolute d-term product: max over |S| = d of prod_{i in S} |x_i|.
inline Rational max_monomial(std::span<const Rational> x, int d) {
    if (d < 0 || d > static_cast<int>(x.size()))
        throw std::invalid_argument("max_monomial: need 0 <= d <= n");
    std::vector<Rational> mags(x.begin(), x.end());
    for (auto& v : mags) {
        if (v < 0) v = -v;
    }
    std::sort(mags.begin(), mags.end(), std::greater<>());
    Rational out(1);
    for (int i = 0; i < d; ++i) out *= mags[i];
    return out;
}

/// Restriction t -> p(t*e + x) recovered exactly by interpolation at
/// t = 0, 1, ..., deg p. The result can have lower degree than p when the
/// direction e kills the leading form.
inline UniPoly restrict_line(const MultiPoly& p, std::span<const Rational> e,
                             std::span<const Rational> x) {
    if (static_cast<int>(e.size()) != p.n() || static_cast<int>(x.size()) != p.n())
        throw std::invalid_argument("restrict_line: dimension mismatch");
    const int dmax = p.degree();
    std::vector<Rational> values(dmax + 1);
    std::vector<Rational> point(p.n());
    for (int k = 0; k <= dmax; ++k) {
        for (int i = 0; i < p.n(); ++i) point[i] = Rational(k) * e[i] + x[i];
        values[k] = p(point);
    }
    // Lagrange interpolation over the integer nodes.
    UniPoly out;
    for (int k = 0; k <= dmax; ++k) {
        if (values[k] == 0) continue;
        UniPoly basis = UniPoly::constant(1);
        Rational denom(1);
        for (int j = 0; j <= dmax; ++j) {
            if (j == k) continue;
            basis = basis * UniPoly({Rational(-j), Rational(1)});
            denom *= k - j;
        }
        out += basis * (values[k] / denom);
    }
    return out;
}

}  // namespace hypcone
