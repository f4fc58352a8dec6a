#pragma once

#include "connection.hpp"
#include "linalg.hpp"
#include "normal_form.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

namespace gmdual {

/// S(w_i, w_j) as an n x n matrix over Q[theta^+-, t^+-].
struct GramMatrix {
    LaurentMatrix entries;
    Basis basis = Basis::Omega;
    int k = 0;  // entries (i, n+1-i) are multiples of theta^(n-1) t^(2k)
    std::string normalization;

    int n() const { return static_cast<int>(entries.size()); }
};

/// How the second argument of the pairing, which lives on iota^* G, sees the
/// connection: M_theta -> dtheta_sign * M_theta(theta_sign * theta) and
/// M_t -> M_t(theta_sign * theta).
struct PairingConvention {
    const char* name;
    int theta_sign;
    int dtheta_sign;
};

inline constexpr std::array<PairingConvention, 4> kPairingConventions{{
    {"iota_twisted", -1, -1},
    {"untwisted", 1, 1},
    {"theta_only", -1, 1},
    {"dtheta_only", 1, -1},
}};

struct FlatGramSolution {
    int dimension = 0;
    GramMatrix gram;
    std::string convention;
    std::vector<std::pair<std::string, int>> dimensions_by_convention;
    int degree_bound = 0;
};

namespace detail {

inline std::pair<LaurentMatrix, LaurentMatrix> pulled_back(const ConnectionData& cd, const PairingConvention& conv) {
    LaurentMatrix nth = entrywise(cd.m_theta(), [&](const Laurent& e) {
        return scale_theta(e, conv.theta_sign) * Rational(conv.dtheta_sign);
    });
    LaurentMatrix nt = entrywise(cd.m_t(), [&](const Laurent& e) { return scale_theta(e, conv.theta_sign); });
    return {nth, nt};
}

} // namespace detail

/// Residuals dG - M^T G - G N in the dtheta and dt directions, where N is the
/// connection seen through the convention. Both vanish for a flat pairing.
inline std::pair<LaurentMatrix, LaurentMatrix> flatness_residual(const ConnectionData& cd, const LaurentMatrix& g,
                                                                 const PairingConvention& conv) {
    auto [nth, nt] = detail::pulled_back(cd, conv);
    LaurentMatrix rth = entrywise(g, d_theta) - transpose(cd.m_theta()) * g - g * nth;
    LaurentMatrix rt = entrywise(g, d_t) - transpose(cd.m_t()) * g - g * nt;
    return {rth, rt};
}

/// Offset k with theta M_theta + n t M_t = diag(0, .., n-1) + k n; the Euler
/// field then acts on w_i with eigenvalue i - 1 + k n.
inline int euler_offset(const ConnectionData& cd) {
    LaurentMatrix e = entrywise(cd.m_theta(), [](const Laurent& x) { return shift(x, 1, 0); }) +
                      entrywise(cd.m_t(), [&](const Laurent& x) { return shift(x, 0, 1) * Rational(cd.n); });
    std::optional<Rational> offset;
    for (int i = 0; i < cd.n; ++i)
        for (int j = 0; j < cd.n; ++j) {
            const Laurent& x = e[i][j];
            if (i != j) {
                if (!x.is_zero()) throw Error("Euler field is not diagonal in this basis");
                continue;
            }
            if (!x.is_zero() && (x.size() != 1 || x.terms().begin()->first != Exponents<2>{0, 0}))
                throw Error("Euler field has non-constant eigenvalue");
            Rational v = x.coeff({0, 0}) - i;
            if (offset && *offset != v) throw Error("Euler eigenvalues are not i - 1 + const");
            offset = v;
        }
    Rational k = *offset / cd.n;
    if (k.get_den() != 1 || k < 0) throw Error("Euler offset is not a nonnegative multiple of n");
    return static_cast<int>(k.get_num().get_si());
}

namespace detail {

struct Unknown {
    int i, j, alpha, beta;
};

/// Nullspace of the flatness system over the homogeneous ansatz
/// G_ij in span{theta^alpha t^beta : alpha + n beta = i + j + 2kn, |beta| <= bound}.
inline std::pair<Nullspace, std::vector<Unknown>> flat_system(const ConnectionData& cd, const PairingConvention& conv,
                                                              int k, int bound) {
    const int n = cd.n;
    std::vector<Unknown> unknowns;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int beta = -bound; beta <= bound; ++beta)
                unknowns.push_back({i, j, i + j + 2 * k * n - n * beta, beta});

    const LaurentMatrix mth = cd.m_theta(), mt = cd.m_t();
    auto [nth, nt] = pulled_back(cd, conv);

    using RowKey = std::tuple<int, int, int, int, int>;  // direction, r, s, theta exp, t exp
    std::map<RowKey, int> row_index;
    std::vector<SparseRow> rows;
    auto put = [&](int dir, int r, int s, const Laurent& f, int col, const Rational& sign) {
        for (const auto& [e, c] : f.terms()) {
            auto [it, inserted] = row_index.try_emplace(RowKey{dir, r, s, e[0], e[1]}, static_cast<int>(rows.size()));
            if (inserted) rows.emplace_back();
            auto& row = rows[static_cast<std::size_t>(it->second)];
            auto [cell, fresh] = row.try_emplace(col, 0);
            cell->second += sign * c;
            if (cell->second == 0) row.erase(cell);
        }
    };

    for (std::size_t col = 0; col < unknowns.size(); ++col) {
        const auto& u = unknowns[col];
        const int c = static_cast<int>(col);
        const Laurent mono = laurent_monomial(u.alpha, u.beta);
        put(0, u.i, u.j, d_theta(mono), c, 1);
        put(1, u.i, u.j, d_t(mono), c, 1);
        for (int r = 0; r < n; ++r) {
            if (!mth[u.i][r].is_zero()) put(0, r, u.j, mth[u.i][r] * mono, c, -1);
            if (!mt[u.i][r].is_zero()) put(1, r, u.j, mt[u.i][r] * mono, c, -1);
        }
        for (int s = 0; s < n; ++s) {
            if (!nth[u.j][s].is_zero()) put(0, u.i, s, mono * nth[u.j][s], c, -1);
            if (!nt[u.j][s].is_zero()) put(1, u.i, s, mono * nt[u.j][s], c, -1);
        }
    }
    return {nullspace(rows, static_cast<int>(unknowns.size())), std::move(unknowns)};
}

} // namespace detail

/// Finds the flat pairing by linear algebra. Every convention is tried; the
/// first in kPairingConventions admitting a nonzero solution is used. When no
/// convention has a solution at |beta| <= n the bound is doubled once.
/// The solution is normalised so that entry (1, n) has coefficient 1 at
/// theta^(n-1) t^(2k).
inline FlatGramSolution solve_flat_gram(const ConnectionData& cd, int sign) {
    if (sign != sign_pow(cd.n - 1)) throw Error("pairing sign must be (-1)^(n-1)");
    const int k = euler_offset(cd);
    FlatGramSolution out;
    for (int bound : {cd.n, 2 * cd.n}) {
        out.dimensions_by_convention.clear();
        out.degree_bound = bound;
        std::optional<std::pair<Nullspace, std::vector<detail::Unknown>>> chosen;
        for (const auto& conv : kPairingConventions) {
            auto sys = detail::flat_system(cd, conv, k, bound);
            const int dim = static_cast<int>(sys.first.basis.size());
            out.dimensions_by_convention.emplace_back(conv.name, dim);
            if (!chosen && dim > 0) {
                chosen = std::move(sys);
                out.convention = conv.name;
                out.dimension = dim;
            }
        }
        if (!chosen) continue;
        if (out.dimension >= 2) throw Error("pairing not unique at this ansatz");

        const auto& [ns, unknowns] = *chosen;
        const auto& vec = ns.basis.front();
        LaurentMatrix g = zero_matrix(static_cast<std::size_t>(cd.n));
        for (std::size_t c = 0; c < unknowns.size(); ++c)
            if (vec[c] != 0) g[unknowns[c].i][unknowns[c].j] += laurent_monomial(unknowns[c].alpha, unknowns[c].beta, vec[c]);
        const Rational corner = g[0][cd.n - 1].coeff({cd.n - 1, 2 * k});
        if (corner == 0) throw Error("normalising monomial absent from entry (1, n)");
        const Rational scale = 1 / corner;
        g = entrywise(g, [&](const Laurent& e) { return e * scale; });
        out.gram = {std::move(g), cd.basis, k,
                    "entry (1,n) has coefficient 1 at theta^" + std::to_string(cd.n - 1) +
                        (k ? " t^" + std::to_string(2 * k) : std::string{})};
        return out;
    }
    throw Error("no flat pairing found");
}

inline const PairingConvention& pairing_convention(const std::string& name) {
    for (const auto& c : kPairingConventions)
        if (name == c.name) return c;
    throw Error("unknown pairing convention '" + name + "'");
}

/// gram == (-1)^(n-1) iota(gram^T)
inline bool check_symmetry(const GramMatrix& gram, int n) {
    const LaurentMatrix rhs =
        entrywise(transpose(gram.entries), [n](const Laurent& e) { return iota(e) * Rational(sign_pow(n - 1)); });
    return rhs == gram.entries;
}

/// Nonzero entry (i, j) is homogeneous of degree (i-1) + (j-1) + 2kn for
/// deg theta = 1, deg t = n.
inline bool check_homogeneity(const GramMatrix& gram, int n) {
    for (int i = 0; i < gram.n(); ++i)
        for (int j = 0; j < gram.n(); ++j)
            for (const auto& [e, c] : gram.entries[i][j].terms())
                if (e[0] + n * e[1] != i + j + 2 * gram.k * n) return false;
    return true;
}

inline bool is_nondegenerate(const GramMatrix& gram) { return as_unit(determinant(gram.entries)).has_value(); }

/// v^T gram iota(w)
inline Laurent pairing_value(const GramMatrix& gram, const std::vector<Laurent>& v, const std::vector<Laurent>& w) {
    Laurent out;
    for (int i = 0; i < gram.n(); ++i)
        for (int j = 0; j < gram.n(); ++j)
            if (!gram.entries[i][j].is_zero()) out += v[i] * gram.entries[i][j] * iota(w[j]);
    return out;
}

/// Random lattice vector: coefficients in Q[theta, t, t^-1] (G0star) or Q[theta, t] (G0log).
inline std::vector<Laurent> random_lattice_vector(int n, Lattice which, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nterms(0, 3), th(0, 3), tt(which == Lattice::G0log ? 0 : -3, 3), cf(-9, 9);
    std::vector<Laurent> out(static_cast<std::size_t>(n));
    for (auto& e : out) {
        const int m = nterms(rng);
        for (int i = 0; i < m; ++i) {
            const int a = th(rng);
            const int b = tt(rng);
            e.add_term({a, b}, cf(rng));
        }
    }
    return out;
}

/// S(L, L) lies in theta^(n-1) Q[theta, t, t^-1] (G0star) resp. theta^(n-1) Q[theta, t]
/// (G0log), sampled over random lattice pairs.
inline bool check_lattice_compat(const GramMatrix& gram, int trials, Lattice which, std::uint64_t seed = 20180604) {
    std::mt19937_64 rng(seed);
    const int n = gram.n();
    for (int trial = 0; trial < trials; ++trial) {
        auto v = random_lattice_vector(n, which, rng);
        auto w = random_lattice_vector(n, which, rng);
        const Laurent value = pairing_value(gram, v, w);
        for (const auto& [e, c] : value.terms())
            if (e[0] < n - 1 || (which == Lattice::G0log && e[1] < 0)) return false;
    }
    return true;
}

struct InducedPairing {
    LaurentMatrix s0;  // over Q[t, t^-1]
    bool symmetric = false;
    Laurent determinant;
    bool nondegenerate = false;  // determinant is a unit monomial in t
};

/// S0 = (gram / theta^(n-1)) at theta = 0.
inline InducedPairing induced_S0(const GramMatrix& gram) {
    const int n = gram.n();
    InducedPairing out;
    out.s0 = zero_matrix(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto z = at_theta_zero(shift(gram.entries[i][j], -(n - 1), 0));
            if (!z) throw Error("gram not theta^(n-1)-divisible");
            out.s0[i][j] = *z;
        }
    out.symmetric = transpose(out.s0) == out.s0;
    out.determinant = gmdual::determinant(out.s0);
    auto u = as_unit(out.determinant);
    out.nondegenerate = u.has_value() && u->first[0] == 0;
    return out;
}

/// Each nonzero entry is c theta^(n-1) t^m: theta-valuation and theta-degree
/// both equal n-1.
inline bool check_pole_orders(const GramMatrix& gram, int n) {
    for (const auto& row : gram.entries)
        for (const auto& e : row) {
            if (e.is_zero()) continue;
            if (e.min_exponent(0) < n - 1 || e.max_exponent(0) > n - 1) return false;
        }
    return true;
}

/// Entries vanish off the antidiagonal i + j = n + 1 and are nonzero rational
/// multiples of theta^(n-1) t^(2k) on it.
inline bool check_antidiagonal_form(const GramMatrix& gram) {
    const int n = gram.n();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Laurent& e = gram.entries[i][j];
            if (i + j != n - 1) {
                if (!e.is_zero()) return false;
                continue;
            }
            auto u = as_unit(e);
            if (!u || u->first != Exponents<2>{n - 1, 2 * gram.k}) return false;
        }
    return true;
}

} // namespace gmdual
