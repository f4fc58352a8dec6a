#pragma once

#include "sparse.hpp"

#include <optional>
#include <vector>

namespace gmdual {

/// Element of Q[theta^{+-1}, t^{+-1}]; exponent slot 0 is theta, slot 1 is t.
using Laurent = SparsePoly<2>;

inline Laurent laurent_monomial(int theta_exp, int t_exp, const Rational& c = 1) {
    return Laurent::monomial({theta_exp, t_exp}, c);
}

inline Laurent d_theta(const Laurent& f) {
    return f.transform([](const Exponents<2>& k, const Rational& c) {
        return std::pair{Exponents<2>{k[0] - 1, k[1]}, Rational(c * k[0])};
    });
}

inline Laurent d_t(const Laurent& f) {
    return f.transform([](const Exponents<2>& k, const Rational& c) {
        return std::pair{Exponents<2>{k[0], k[1] - 1}, Rational(c * k[1])};
    });
}

/// theta -> -theta.
inline Laurent iota(const Laurent& f) {
    return f.transform([](const Exponents<2>& k, const Rational& c) {
        return std::pair{k, k[0] % 2 == 0 ? c : Rational(-c)};
    });
}

/// theta -> sign * theta.
inline Laurent scale_theta(const Laurent& f, int sign) { return sign == 1 ? f : iota(f); }

/// Returns the coefficient and exponents when f is a single nonzero term,
/// i.e. a unit of the Laurent ring.
inline std::optional<std::pair<Exponents<2>, Rational>> as_unit(const Laurent& f) {
    if (f.size() != 1) return std::nullopt;
    const auto& [k, c] = *f.terms().begin();
    return std::pair{k, c};
}

inline std::optional<Laurent> unit_inverse(const Laurent& f) {
    auto u = as_unit(f);
    if (!u) return std::nullopt;
    return laurent_monomial(-u->first[0], -u->first[1], 1 / u->second);
}

/// Restricts to theta = 0; requires all theta exponents >= 0.
inline std::optional<Laurent> at_theta_zero(const Laurent& f) {
    Laurent out;
    for (const auto& [k, c] : f.terms()) {
        if (k[0] < 0) return std::nullopt;
        if (k[0] == 0) out.add_term(k, c);
    }
    return out;
}

/// Multiplies by theta^a t^b.
inline Laurent shift(const Laurent& f, int a, int b) {
    return f.transform([a, b](const Exponents<2>& k, const Rational& c) {
        return std::pair{Exponents<2>{k[0] + a, k[1] + b}, c};
    });
}

using LaurentMatrix = std::vector<std::vector<Laurent>>;

inline LaurentMatrix zero_matrix(std::size_t n) {
    return LaurentMatrix(n, std::vector<Laurent>(n));
}

inline LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
    const std::size_t n = a.size();
    LaurentMatrix out = zero_matrix(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (!b[k][j].is_zero()) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

inline LaurentMatrix operator+(LaurentMatrix a, const LaurentMatrix& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) a[i][j] += b[i][j];
    return a;
}

inline LaurentMatrix operator-(LaurentMatrix a, const LaurentMatrix& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) a[i][j] -= b[i][j];
    return a;
}

template <class F>
LaurentMatrix entrywise(const LaurentMatrix& m, F f) {
    LaurentMatrix out = m;
    for (auto& row : out)
        for (auto& e : row) e = f(e);
    return out;
}

inline LaurentMatrix transpose(const LaurentMatrix& m) {
    LaurentMatrix out = zero_matrix(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) out[j][i] = m[i][j];
    return out;
}

inline bool is_zero(const LaurentMatrix& m) {
    for (const auto& row : m)
        for (const auto& e : row)
            if (!e.is_zero()) return false;
    return true;
}

namespace detail {
inline Laurent det_rec(const LaurentMatrix& m, std::vector<std::size_t>& cols, std::size_t row) {
    const std::size_t n = m.size();
    if (row == n) return Laurent(1);
    Laurent out;
    int sign = 1;
    for (std::size_t idx = 0; idx < cols.size(); ++idx) {
        std::size_t c = cols[idx];
        if (!m[row][c].is_zero()) {
            cols.erase(cols.begin() + static_cast<long>(idx));
            Laurent minor = det_rec(m, cols, row + 1);
            cols.insert(cols.begin() + static_cast<long>(idx), c);
            if (!minor.is_zero()) out += (sign == 1 ? m[row][c] : -m[row][c]) * minor;
        }
        sign = -sign;
    }
    return out;
}
} // namespace detail

/// Laplace expansion along rows, skipping zero entries. Fine for the small,
/// sparse matrices this library produces (n <= 8 or so).
inline Laurent determinant(const LaurentMatrix& m) {
    std::vector<std::size_t> cols(m.size());
    for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = i;
    return detail::det_rec(m, cols, 0);
}

} // namespace gmdual
