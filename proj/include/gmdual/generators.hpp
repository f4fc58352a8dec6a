#pragma once

#include "instance.hpp"
#include "ore.hpp"

#include <vector>

namespace gmdual {

/// Operators attached to one spectrum instance.
///   P1      = prod_i theta (t dt - a_i) - (c/n^n) t
///   P2      = theta^2 dtheta + n t theta dt
///   P1t,P2t = transposes of P1, P2
///   Ptilde1 = prod_i (-theta)(t dt - a_i + 1) - (c/n^n) t
///   Ptilde2 = -P2t + n theta
///   P1prime = prod_i (-theta)(t dt - a_i) - (c/n^n) t
///   a       = theta^(n+2) t
struct GeneratorSet {
    int n = 0;
    std::vector<Rational> shifts;  // a_1..a_n
    Rational scaled_c;              // c / n^n
    OreOperator P1, P2, P1t, P2t, Ptilde1, Ptilde2, P1prime, a;
};

/// The Euler operator t dt.
inline OreOperator euler_t() { return OreOperator::monomial(0, 1, 0, 1); }

/// prod_{i < count} theta_factor * (t dt + offset_i). The factors commute, so
/// the order is immaterial.
inline OreOperator euler_product(const Rational& theta_factor, const std::vector<Rational>& offsets,
                                 std::size_t count) {
    OreOperator out(1);
    const OreOperator th = OreOperator::monomial(1, 0, 0, 0, theta_factor);
    for (std::size_t i = 0; i < count; ++i) out = out * th * (euler_t() + OreOperator(offsets[i]));
    return out;
}

namespace detail {
inline std::vector<Rational> map_shifts(const std::vector<Rational>& a, int sign, int add) {
    std::vector<Rational> out;
    for (const auto& x : a) out.emplace_back(sign * x + add);
    return out;
}
} // namespace detail

/// Builds every generator. P1t is computed both through the transpose
/// anti-automorphism and through the explicit product formula
/// prod_i (-theta)(t dt + a_i + 1) - (c/n^n) t; a disagreement throws.
/// Validation of the instance is the caller's business: the operators are
/// well defined for any spectrum, which the negative controls rely on.
inline GeneratorSet build_generators(const SpectrumInstance& inst) {
    GeneratorSet g;
    const int n = inst.n;
    const auto un = static_cast<std::size_t>(n);
    g.n = n;
    g.shifts = inst.shifts();
    g.scaled_c = inst.scaled_c();
    const OreOperator ct = OreOperator::monomial(0, 1, 0, 0, g.scaled_c);

    g.P1 = euler_product(1, detail::map_shifts(g.shifts, -1, 0), un) - ct;
    g.P2 = OreOperator::monomial(2, 0, 1, 0) + OreOperator::monomial(1, 1, 0, 1, n);
    g.P1t = transpose(g.P1);
    g.P2t = transpose(g.P2);

    const OreOperator explicit_P1t = euler_product(-1, detail::map_shifts(g.shifts, 1, 1), un) - ct;
    if (explicit_P1t != g.P1t) throw Error("transpose(P1) disagrees with the explicit product formula");

    g.Ptilde1 = euler_product(-1, detail::map_shifts(g.shifts, -1, 1), un) - ct;
    g.Ptilde2 = -g.P2t + OreOperator::theta() * Rational(n);
    g.P1prime = euler_product(-1, detail::map_shifts(g.shifts, -1, 0), un) - ct;
    g.a = OreOperator::monomial(n + 2, 1, 0, 0);
    return g;
}

} // namespace gmdual
