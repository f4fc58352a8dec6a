#pragma once

#include "instance.hpp"
#include "laurent.hpp"

#include <string>

namespace gmdual {

enum class Basis { Omega, OmegaTilde };

inline std::string to_string(Basis b) { return b == Basis::Omega ? "omega" : "omega_tilde"; }

/// Connection matrices for
///   nabla(w) = w . [ (A0/theta + Ainf) dtheta/theta + (-A0/theta + Ainf') dt/(n t) ].
/// A0 is companion shaped with corner c*t at (1,n) and -1 on the subdiagonal.
struct ConnectionData {
    int n = 0;
    LaurentMatrix A0;
    std::vector<Rational> Ainf;        // diagonal
    std::vector<Rational> Ainf_prime;  // diagonal, diag(0..n-1) - Ainf
    Basis basis = Basis::Omega;

    /// A0/theta^2 + Ainf/theta
    LaurentMatrix m_theta() const {
        LaurentMatrix m = entrywise(A0, [](const Laurent& e) { return shift(e, -2, 0); });
        for (int i = 0; i < n; ++i) m[i][i] += laurent_monomial(-1, 0, Ainf[i]);
        return m;
    }

    /// (-A0/theta + Ainf') / (n t)
    LaurentMatrix m_t() const {
        const Rational inv_n = Rational(1, n);
        LaurentMatrix m = entrywise(A0, [&](const Laurent& e) { return shift(e, -1, -1) * Rational(-inv_n); });
        for (int i = 0; i < n; ++i) m[i][i] += laurent_monomial(0, -1, Ainf_prime[i] * inv_n);
        return m;
    }
};

/// corner_sign multiplies c in the (1,n) entry; +1 gives the matrices as
/// written, -1 is used by the sign calibration against the presentation.
inline ConnectionData build_connection(const SpectrumInstance& inst, Basis basis, int corner_sign = 1) {
    if (basis == Basis::OmegaTilde && !inst.nu_tilde) throw Error("nu_tilde required");
    const auto& spectrum = basis == Basis::Omega ? inst.nu : *inst.nu_tilde;
    ConnectionData cd;
    cd.n = inst.n;
    cd.basis = basis;
    cd.A0 = zero_matrix(static_cast<std::size_t>(inst.n));
    cd.A0[0][inst.n - 1] += laurent_monomial(0, 1, corner_sign * inst.c);
    for (int i = 0; i + 1 < inst.n; ++i) cd.A0[i + 1][i] += laurent_monomial(0, 0, -1);
    for (int i = 0; i < inst.n; ++i) {
        cd.Ainf.push_back(spectrum[i]);
        cd.Ainf_prime.emplace_back(Rational(i) - spectrum[i]);
    }
    return cd;
}

/// d_theta(M_t) - d_t(M_theta) + M_theta M_t - M_t M_theta; identically zero
/// exactly when the connection is flat.
inline LaurentMatrix curvature_check(const ConnectionData& cd) {
    const LaurentMatrix mth = cd.m_theta();
    const LaurentMatrix mt = cd.m_t();
    return entrywise(mt, d_theta) - entrywise(mth, d_t) + mth * mt - mt * mth;
}

} // namespace gmdual
