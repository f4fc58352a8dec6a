#pragma once

#include "rational.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <utility>

namespace gmdual {

template <std::size_t N>
using Exponents = std::array<int, N>;

/// Finite map from exponent vectors to nonzero rationals. The ordering is
/// lexicographic on the exponent vector; zero coefficients are never stored,
/// so two values are equal iff their maps are equal.
///
/// This is the storage shared by Laurent polynomials (N = 2), commutative
/// symbols (N = 4) and Ore operators (N = 4, with a noncommutative product
/// layered on top).
template <std::size_t N>
class SparsePoly {
public:
    using Key = Exponents<N>;
    using Map = std::map<Key, Rational>;

    SparsePoly() = default;
    SparsePoly(const Rational& scalar) {  // NOLINT(google-explicit-constructor)
        if (scalar != 0) terms_.emplace(Key{}, scalar);
    }
    SparsePoly(int scalar) : SparsePoly(Rational(scalar)) {}  // NOLINT

    static SparsePoly monomial(const Key& k, const Rational& coeff = 1) {
        SparsePoly out;
        out.add_term(k, coeff);
        return out;
    }

    const Map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rational coeff(const Key& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Key& k, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    SparsePoly& operator+=(const SparsePoly& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    SparsePoly& operator-=(const SparsePoly& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }
    SparsePoly& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
        } else {
            for (auto& [k, c] : terms_) c *= s;
        }
        return *this;
    }

    friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
    friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
    friend SparsePoly operator-(SparsePoly a) { return a *= Rational(-1); }
    friend SparsePoly operator*(SparsePoly a, const Rational& s) { return a *= s; }
    friend SparsePoly operator*(const Rational& s, SparsePoly a) { return a *= s; }
    friend SparsePoly operator*(SparsePoly a, int s) { return a *= Rational(s); }
    friend SparsePoly operator*(int s, SparsePoly a) { return a *= Rational(s); }
    friend bool operator==(const SparsePoly& a, const SparsePoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const SparsePoly& a, const SparsePoly& b) { return !(a == b); }

    /// Commutative product: exponents add componentwise.
    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
        SparsePoly out;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) {
                Key k;
                for (std::size_t i = 0; i < N; ++i) k[i] = ka[i] + kb[i];
                out.add_term(k, ca * cb);
            }
        return out;
    }

    SparsePoly pow(unsigned e) const {
        SparsePoly out(1);
        for (unsigned i = 0; i < e; ++i) out = out * *this;
        return out;
    }

    /// Keeps only terms for which pred(key) holds.
    template <class Pred>
    SparsePoly filter(Pred pred) const {
        SparsePoly out;
        for (const auto& [k, c] : terms_)
            if (pred(k)) out.terms_.emplace(k, c);
        return out;
    }

    /// Rewrites every term through f(key, coeff) -> pair<key, coeff>.
    template <class F>
    SparsePoly transform(F f) const {
        SparsePoly out;
        for (const auto& [k, c] : terms_) {
            auto [nk, nc] = f(k, c);
            out.add_term(nk, nc);
        }
        return out;
    }

    /// Minimum / maximum of one exponent over the support. Undefined on zero.
    int min_exponent(std::size_t var) const {
        int m = terms_.begin()->first[var];
        for (const auto& [k, c] : terms_) m = std::min(m, k[var]);
        return m;
    }
    int max_exponent(std::size_t var) const {
        int m = terms_.begin()->first[var];
        for (const auto& [k, c] : terms_) m = std::max(m, k[var]);
        return m;
    }

private:
    Map terms_;
};

} // namespace gmdual
