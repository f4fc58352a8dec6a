#pragma once

#include "laurent.hpp"

#include <stdexcept>
#include <string>

namespace gmdual {

/// Exponent slots of a normal-ordered monomial theta^a t^b dtheta^p dt^q.
enum Slot : std::size_t { kTheta = 0, kT = 1, kDTheta = 2, kDT = 3 };

/// Commutative polynomial in Q[theta^{+-1}, t^{+-1}, u, v]; u and v stand for
/// the classes of dtheta and dt in an associated graded ring.
using SymbolPolynomial = SparsePoly<4>;

/// Element of Q[theta^{+-1}, t^{+-1}]<dtheta, dt>, stored in the normal order
/// theta^a t^b dtheta^p dt^q with all derivation exponents nonnegative.
class OreOperator {
public:
    using Key = Exponents<4>;

    OreOperator() = default;
    OreOperator(const Rational& s) : poly_(s) {}  // NOLINT(google-explicit-constructor)
    OreOperator(int s) : poly_(Rational(s)) {}    // NOLINT(google-explicit-constructor)

    static OreOperator monomial(int a, int b, int p, int q, const Rational& coeff = 1) {
        if (p < 0 || q < 0) throw Error("negative derivation exponent");
        OreOperator out;
        out.poly_.add_term({a, b, p, q}, coeff);
        return out;
    }
    static OreOperator theta(int e = 1) { return monomial(e, 0, 0, 0); }
    static OreOperator t(int e = 1) { return monomial(0, e, 0, 0); }
    static OreOperator dtheta(int e = 1) { return monomial(0, 0, e, 0); }
    static OreOperator dt(int e = 1) { return monomial(0, 0, 0, e); }

    /// Embeds a Laurent polynomial as a multiplication operator.
    static OreOperator from_laurent(const Laurent& f) {
        OreOperator out;
        for (const auto& [k, c] : f.terms()) out.poly_.add_term({k[0], k[1], 0, 0}, c);
        return out;
    }

    const SparsePoly<4>::Map& terms() const { return poly_.terms(); }
    bool is_zero() const { return poly_.is_zero(); }
    std::size_t size() const { return poly_.size(); }
    Rational coeff(int a, int b, int p, int q) const { return poly_.coeff({a, b, p, q}); }

    void add_term(const Key& k, const Rational& c) {
        if (k[kDTheta] < 0 || k[kDT] < 0) throw Error("negative derivation exponent");
        poly_.add_term(k, c);
    }

    /// Highest exponent of dtheta resp. dt; -1 for the zero operator.
    int order_dtheta() const { return is_zero() ? -1 : poly_.max_exponent(kDTheta); }
    int order_dt() const { return is_zero() ? -1 : poly_.max_exponent(kDT); }

    /// Coefficient of dtheta^p dt^q as a Laurent polynomial.
    Laurent coefficient_of(int p, int q) const {
        Laurent out;
        for (const auto& [k, c] : terms())
            if (k[kDTheta] == p && k[kDT] == q) out.add_term({k[kTheta], k[kT]}, c);
        return out;
    }

    /// Returns the Laurent polynomial when the operator has no derivations.
    bool is_function() const {
        for (const auto& [k, c] : terms())
            if (k[kDTheta] != 0 || k[kDT] != 0) return false;
        return true;
    }
    Laurent as_laurent() const { return coefficient_of(0, 0); }

    OreOperator& operator+=(const OreOperator& o) { poly_ += o.poly_; return *this; }
    OreOperator& operator-=(const OreOperator& o) { poly_ -= o.poly_; return *this; }
    OreOperator& operator*=(const Rational& s) { poly_ *= s; return *this; }

    friend OreOperator operator+(OreOperator a, const OreOperator& b) { return a += b; }
    friend OreOperator operator-(OreOperator a, const OreOperator& b) { return a -= b; }
    friend OreOperator operator-(OreOperator a) { return a *= Rational(-1); }
    friend OreOperator operator*(OreOperator a, const Rational& s) { return a *= s; }
    friend OreOperator operator*(const Rational& s, OreOperator a) { return a *= s; }
    friend OreOperator operator*(OreOperator a, int s) { return a *= Rational(s); }
    friend OreOperator operator*(int s, OreOperator a) { return a *= Rational(s); }
    friend bool operator==(const OreOperator& a, const OreOperator& b) { return a.poly_ == b.poly_; }
    friend bool operator!=(const OreOperator& a, const OreOperator& b) { return !(a == b); }

    /// Normal-ordered product.
    friend OreOperator operator*(const OreOperator& x, const OreOperator& y);

    OreOperator pow(unsigned e) const {
        OreOperator out(1);
        for (unsigned i = 0; i < e; ++i) out = out * *this;
        return out;
    }

private:
    SparsePoly<4> poly_;
};

namespace detail {

inline Integer binomial(int n, int k) {
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

/// x (x-1) ... (x-k+1), valid for negative x as well.
inline Integer falling(int x, int k) {
    Integer out = 1;
    for (int i = 0; i < k; ++i) out *= (x - i);
    return out;
}

} // namespace detail

// dtheta^p theta^a = sum_k C(p,k) (a)_k theta^(a-k) dtheta^(p-k), and the same
// for dt, t; the theta and t parts commute with each other.
inline OreOperator operator*(const OreOperator& x, const OreOperator& y) {
    OreOperator out;
    for (const auto& [kx, cx] : x.terms()) {
        for (const auto& [ky, cy] : y.terms()) {
            const Rational base = cx * cy;
            for (int i = 0; i <= kx[kDTheta]; ++i) {
                Integer ci = detail::binomial(kx[kDTheta], i) * detail::falling(ky[kTheta], i);
                if (ci == 0) break;
                for (int j = 0; j <= kx[kDT]; ++j) {
                    Integer cj = detail::binomial(kx[kDT], j) * detail::falling(ky[kT], j);
                    if (cj == 0) break;
                    out.add_term({kx[kTheta] + ky[kTheta] - i, kx[kT] + ky[kT] - j,
                                  kx[kDTheta] - i + ky[kDTheta], kx[kDT] - j + ky[kDT]},
                                 Rational(base * Rational(ci * cj)));
                }
            }
        }
    }
    return out;
}

inline OreOperator commutator(const OreOperator& p, const OreOperator& q) { return p * q - q * p; }

/// Anti-automorphism fixing theta and t and negating both derivations.
inline OreOperator transpose(const OreOperator& op) {
    OreOperator out;
    for (const auto& [k, c] : op.terms()) {
        OreOperator d = OreOperator::monomial(0, 0, k[kDTheta], k[kDT],
                                              sign_pow(k[kDTheta] + k[kDT]) * c);
        out += d * OreOperator::monomial(k[kTheta], k[kT], 0, 0);
    }
    return out;
}

/// Automorphism theta -> -theta, dtheta -> -dtheta; t and dt are fixed.
inline OreOperator iota(const OreOperator& op) {
    OreOperator out;
    for (const auto& [k, c] : op.terms())
        out.add_term(k, sign_pow(k[kTheta] + k[kDTheta]) == 1 ? c : Rational(-c));
    return out;
}

struct WeightVector {
    int theta = 0;
    int t = 0;
    int dtheta = 0;
    int dt = 0;

    int of(const Exponents<4>& k) const {
        return k[kTheta] * theta + k[kT] * t + k[kDTheta] * dtheta + k[kDT] * dt;
    }

    /// Quasi-homogeneous grading deg theta = 1, deg t = n.
    static WeightVector euler_grading(int n) { return {1, n, -1, -n}; }
    /// Filtration with dtheta of degree two and theta of degree -1.
    static WeightVector f_filtration() { return {-1, 0, 2, 1}; }
    /// Usual order filtration.
    static WeightVector order() { return {0, 0, 1, 1}; }
};

struct WeightedDegree {
    int degree;
    bool homogeneous;
};

inline WeightedDegree weighted_degree(const OreOperator& op, const WeightVector& w) {
    if (op.is_zero()) throw Error("undefined degree: zero operator");
    int top = w.of(op.terms().begin()->first);
    bool homogeneous = true;
    for (const auto& [k, c] : op.terms()) {
        int d = w.of(k);
        if (d != top) homogeneous = false;
        top = std::max(top, d);
    }
    return {top, homogeneous};
}

/// Top-degree part with dtheta -> u and dt -> v, read commutatively.
inline SymbolPolynomial symbol(const OreOperator& op, const WeightVector& w) {
    int top = weighted_degree(op, w).degree;
    SymbolPolynomial out;
    for (const auto& [k, c] : op.terms())
        if (w.of(k) == top) out.add_term(k, c);
    return out;
}

} // namespace gmdual
