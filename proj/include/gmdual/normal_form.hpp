#pragma once

#include "connection.hpp"
#include "generators.hpp"
#include "oplang.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gmdual {

/// Coefficients h_0..h_{n-1} of a class sum_i h_i Q_i.
using QCoefficients = std::vector<Laurent>;

/// A cyclic presentation D / D(first, second) in the shape used throughout:
///   first  is dtheta-free with a unit leading coefficient in dt (order n),
///   second is unit * dtheta + (dtheta-free part),
/// together with a unitriangular basis of the quotient: basis[i] is
/// dtheta-free of dt-order i with a unit leading coefficient.
class Presentation {
public:
    Presentation(OreOperator first, OreOperator second, std::vector<OreOperator> basis)
        : first_(std::move(first)), second_(std::move(second)), basis_(std::move(basis)) {
        if (first_.order_dtheta() != 0) throw Error("first generator must be dtheta-free");
        const int m = first_.order_dt();
        auto lead = unit_inverse(first_.coefficient_of(0, m));
        if (!lead) throw Error("first generator needs a unit leading coefficient in dt");
        first_lead_inv_ = *lead;
        if (static_cast<int>(basis_.size()) != m) throw Error("basis size must equal the dt-order of the first generator");
        for (int i = 0; i < m; ++i) {
            if (basis_[i].order_dtheta() > 0 || basis_[i].order_dt() != i) throw Error("malformed basis element");
            auto inv = unit_inverse(basis_[i].coefficient_of(0, i));
            if (!inv) throw Error("basis element needs a unit leading coefficient");
            basis_lead_inv_.push_back(*inv);
        }
        if (second_.order_dtheta() != 1) throw Error("second generator must be linear in dtheta");
        OreOperator lin, rest;
        for (const auto& [k, c] : second_.terms()) {
            if (k[kDTheta] == 1 && k[kDT] == 0) lin.add_term({k[kTheta], k[kT], 0, 0}, c);
            else if (k[kDTheta] == 0) rest.add_term(k, c);
            else throw Error("second generator must be unit * dtheta + dtheta-free part");
        }
        auto u = unit_inverse(lin.as_laurent());
        if (!u) throw Error("dtheta coefficient of the second generator must be a unit");
        dtheta_rule_ = -(OreOperator::from_laurent(*u) * rest);
    }

    /// Presentation D/D(P1, P2) with basis Q_i = prod_{j<=i} theta (t dt - a_j).
    static Presentation primary(const GeneratorSet& g) {
        std::vector<OreOperator> basis;
        auto offsets = g.shifts;
        for (auto& x : offsets) x = -x;
        for (int i = 0; i < g.n; ++i) basis.push_back(euler_product(1, offsets, static_cast<std::size_t>(i)));
        return Presentation(g.P1, g.P2, std::move(basis));
    }

    /// Presentation D/D(Ptilde1, Ptilde2) of the dual module with basis
    /// prod_{j<=i} (-theta)(t dt - a_j + 1).
    static Presentation dual(const GeneratorSet& g) {
        std::vector<OreOperator> basis;
        std::vector<Rational> offsets;
        for (const auto& x : g.shifts) offsets.emplace_back(1 - x);
        for (int i = 0; i < g.n; ++i) basis.push_back(euler_product(-1, offsets, static_cast<std::size_t>(i)));
        return Presentation(g.Ptilde1, g.Ptilde2, std::move(basis));
    }

    /// The presentation with iota applied to both generators and the basis.
    Presentation twisted() const {
        std::vector<OreOperator> b;
        for (const auto& x : basis_) b.push_back(iota(x));
        return Presentation(iota(first_), iota(second_), std::move(b));
    }

    int rank() const { return static_cast<int>(basis_.size()); }
    const OreOperator& first() const { return first_; }
    const OreOperator& second() const { return second_; }
    const std::vector<OreOperator>& basis() const { return basis_; }
    /// dtheta is congruent to this dtheta-free operator modulo the second generator.
    const OreOperator& dtheta_rule() const { return dtheta_rule_; }

    /// Reduces op to its unique coordinates in the basis:
    ///  1. rewrite the rightmost dtheta of the top dtheta-degree terms through
    ///     dtheta_rule (the dtheta-degree drops each round);
    ///  2. right division by the first generator in Q[theta^+-,t^+-]<dt>;
    ///  3. unitriangular change to the basis.
    QCoefficients reduce(OreOperator op) const {
        while (op.order_dtheta() > 0) {
            const int top = op.order_dtheta();
            OreOperator next;
            for (const auto& [k, c] : op.terms()) {
                if (k[kDTheta] == top)
                    next += OreOperator::monomial(k[kTheta], k[kT], top - 1, k[kDT], c) * dtheta_rule_;
                else
                    next.add_term(k, c);
            }
            op = std::move(next);
        }

        const int m = rank();
        while (op.order_dt() >= m) {
            const int top = op.order_dt();
            OreOperator quotient;
            for (const auto& [k, c] : op.terms())
                if (k[kDT] == top) quotient.add_term({k[kTheta], k[kT], 0, top - m}, c);
            quotient = OreOperator::from_laurent(first_lead_inv_) * quotient;
            op -= quotient * first_;
        }

        QCoefficients h(static_cast<std::size_t>(m));
        while (!op.is_zero()) {
            const int top = op.order_dt();
            Laurent f = op.coefficient_of(0, top) * basis_lead_inv_[top];
            h[top] += f;
            op -= OreOperator::from_laurent(f) * basis_[top];
        }
        return h;
    }

    /// sum_i h_i basis_i
    OreOperator lift(const QCoefficients& h) const {
        OreOperator out;
        for (std::size_t i = 0; i < h.size(); ++i) out += OreOperator::from_laurent(h[i]) * basis_[i];
        return out;
    }

    /// Column i holds the coordinates of x * basis_i.
    LaurentMatrix action_matrix(const OreOperator& x) const {
        const auto m = static_cast<std::size_t>(rank());
        LaurentMatrix out = zero_matrix(m);
        for (std::size_t i = 0; i < m; ++i) {
            auto h = reduce(x * basis_[i]);
            for (std::size_t k = 0; k < m; ++k) out[k][i] = h[k];
        }
        return out;
    }

private:
    OreOperator first_, second_;
    std::vector<OreOperator> basis_;
    Laurent first_lead_inv_;
    std::vector<Laurent> basis_lead_inv_;
    OreOperator dtheta_rule_;
};

inline QCoefficients normal_form(const OreOperator& op, const GeneratorSet& g) {
    return Presentation::primary(g).reduce(op);
}

enum class Lattice { G0star, G0log };

struct LatticeMembership {
    bool member;
    std::string witness;  // first offending monomial, empty when member
};

/// G0star: coefficients in Q[theta, t, t^-1]; G0log: coefficients in Q[theta, t].
inline LatticeMembership lattice_membership(const QCoefficients& h, Lattice which) {
    for (const auto& coeff : h)
        for (const auto& [k, c] : coeff.terms())
            if (k[0] < 0 || (which == Lattice::G0log && k[1] < 0))
                return {false, print(laurent_monomial(k[0], k[1], c))};
    return {true, {}};
}

inline LatticeMembership lattice_membership(const OreOperator& op, const GeneratorSet& g, Lattice which) {
    return lattice_membership(normal_form(op, g), which);
}

struct JacobianCheck {
    bool relation_holds = false;  // (theta t dt)^n = (c/n^n) t Q_0 mod theta G0
    bool quotient_free = false;   // images of (theta t dt)^i, i<n, form a basis at theta = 0
    int rank = 0;
    QCoefficients relation_residual;
    Laurent quotient_determinant;
};

/// Checks the Jacobian algebra relation (t mu)^n = c/n^n t at theta = 0, with
/// mu the class of theta dt, and that 1, t mu, ..., (t mu)^(n-1) span the
/// quotient G0 / theta G0 freely over Q[t, t^-1].
inline JacobianCheck jacobian_identity_check(const GeneratorSet& g) {
    const Presentation pres = Presentation::primary(g);
    const OreOperator mu_t = OreOperator::monomial(1, 1, 0, 1);
    JacobianCheck out;

    auto residual = pres.reduce(mu_t.pow(static_cast<unsigned>(g.n)));
    residual[0] -= laurent_monomial(0, 1, g.scaled_c);
    out.relation_holds = true;
    for (const auto& coeff : residual)
        for (const auto& [k, c] : coeff.terms())
            if (k[0] < 1) out.relation_holds = false;
    out.relation_residual = residual;

    const auto n = static_cast<std::size_t>(g.n);
    LaurentMatrix at_zero = zero_matrix(n);
    bool in_lattice = true;
    for (std::size_t i = 0; i < n; ++i) {
        auto h = pres.reduce(mu_t.pow(static_cast<unsigned>(i)));
        for (std::size_t k = 0; k < n; ++k) {
            auto z = at_theta_zero(h[k]);
            if (!z) in_lattice = false;
            else at_zero[k][i] = *z;
        }
    }
    out.quotient_determinant = determinant(at_zero);
    out.quotient_free = in_lattice && as_unit(out.quotient_determinant).has_value();
    out.rank = out.quotient_free ? g.n : 0;
    return out;
}

struct PhiCalibration {
    int sign = 0;                                     // s with zero residual
    std::vector<LaurentMatrix> residual_dt;           // per candidate s = +1, -1
    std::vector<LaurentMatrix> residual_dtheta;
};

/// Compares the action of dt and dtheta on the classes Q_i with the matrices
/// of the connection under Q_i -> n^-i w_{i+1}. The corner sign of c is the
/// only free normalisation; the candidate s in {+1, -1} that makes every
/// residual vanish is returned.
inline PhiCalibration phi_calibrate(const SpectrumInstance& inst) {
    const GeneratorSet g = build_generators(inst);
    const Presentation pres = Presentation::primary(g);
    const LaurentMatrix act_t = pres.action_matrix(OreOperator::dt());
    const LaurentMatrix act_theta = pres.action_matrix(OreOperator::dtheta());
    const int n = inst.n;

    PhiCalibration out;
    for (int s : {1, -1}) {
        const ConnectionData cd = build_connection(inst, Basis::Omega, s);
        const LaurentMatrix mt = cd.m_t(), mth = cd.m_theta();
        LaurentMatrix rt = zero_matrix(static_cast<std::size_t>(n)), rth = rt;
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i) {
                Rational scale = k >= i ? Rational(rational_pow(Rational(n), static_cast<unsigned>(k - i)))
                                        : Rational(1 / rational_pow(Rational(n), static_cast<unsigned>(i - k)));
                rt[k][i] = act_t[k][i] - mt[k][i] * scale;
                rth[k][i] = act_theta[k][i] - mth[k][i] * scale;
            }
        if (out.sign == 0 && is_zero(rt) && is_zero(rth)) out.sign = s;
        out.residual_dt.push_back(std::move(rt));
        out.residual_dtheta.push_back(std::move(rth));
    }
    if (out.sign == 0) throw Error("presentation/connection incompatible");
    return out;
}

} // namespace gmdual
