#include "support.hpp"

#include <gtest/gtest.h>

#include <chrono>

using namespace gmdual;
using namespace gmdual::testing;

namespace {

GramMatrix antidiagonal(int n, std::vector<Rational> c, int theta_exp, int t_exp = 0) {
    GramMatrix g;
    g.entries = zero_matrix(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        g.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(n - 1 - i)] =
            laurent_monomial(theta_exp, t_exp, c[static_cast<std::size_t>(i)]);
    return g;
}

TEST(Gram, TwoDimensional) {
    const auto sol = solve_flat_gram(build_connection(n2(), Basis::Omega), -1);
    EXPECT_EQ(sol.dimension, 1);
    EXPECT_EQ(sol.convention, "iota_twisted");
    EXPECT_EQ(print_matrix(sol.gram.entries), "[[0, theta], [theta, 0]]");
    EXPECT_EQ(sol.gram.k, 0);
}

TEST(Gram, HandSolutionIsFlat) {
    // The hand solution G = [[0, theta], [theta, 0]] satisfies both flatness equations.
    const GramMatrix g = antidiagonal(2, {1, 1}, 1);
    const auto [rth, rt] = flatness_residual(build_connection(n2(), Basis::Omega), g.entries,
                                             pairing_convention("iota_twisted"));
    EXPECT_TRUE(is_zero(rth));
    EXPECT_TRUE(is_zero(rt));
    const auto [uth, ut] = flatness_residual(build_connection(n2(), Basis::Omega), antidiagonal(2, {1, 1}, 0).entries,
                                             pairing_convention("iota_twisted"));
    EXPECT_FALSE(is_zero(uth) && is_zero(ut));
}

TEST(Gram, AllInstances) {
    for (const auto& inst : bundled()) {
        std::vector<Basis> bases{Basis::Omega};
        if (inst.nu_tilde) bases.push_back(Basis::OmegaTilde);
        for (Basis b : bases) {
            const auto t0 = std::chrono::steady_clock::now();
            const ConnectionData cd = build_connection(inst, b);
            const auto sol = solve_flat_gram(cd, sign_pow(inst.n - 1));
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            EXPECT_LT(secs, 30.0);
            EXPECT_EQ(sol.dimension, 1) << inst.label;
            EXPECT_TRUE(check_antidiagonal_form(sol.gram)) << print_matrix(sol.gram.entries);
            EXPECT_TRUE(check_symmetry(sol.gram, inst.n));
            EXPECT_TRUE(check_homogeneity(sol.gram, inst.n));
            EXPECT_TRUE(check_pole_orders(sol.gram, inst.n));
            EXPECT_TRUE(is_nondegenerate(sol.gram));
            EXPECT_TRUE(check_lattice_compat(sol.gram, 100, Lattice::G0star));
            EXPECT_TRUE(check_lattice_compat(sol.gram, 100, Lattice::G0log));
            const auto [rth, rt] = flatness_residual(cd, sol.gram.entries, pairing_convention(sol.convention));
            EXPECT_TRUE(is_zero(rth) && is_zero(rt));
            const auto s0 = induced_S0(sol.gram);
            EXPECT_TRUE(s0.symmetric);
            EXPECT_TRUE(s0.nondegenerate);
        }
    }
}

TEST(Gram, WrongSignRejected) {
    EXPECT_THROW(solve_flat_gram(build_connection(n2(), Basis::Omega), 1), Error);
}

TEST(Gram, NoSolutionForAsymmetricSpectrum) {
    try {
        solve_flat_gram(build_connection(asymmetric(), Basis::Omega), -1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_STREQ(e.what(), "no flat pairing found");
    }
}

TEST(Gram, EulerOffset) {
    for (const auto& inst : bundled()) EXPECT_EQ(euler_offset(build_connection(inst, Basis::Omega)), 0);
}

TEST(Symmetry, Examples) {
    EXPECT_TRUE(check_symmetry(antidiagonal(2, {1, 1}, 1), 2));
    EXPECT_TRUE(check_symmetry(antidiagonal(3, {2, 5, 2}, 2), 3));
    EXPECT_FALSE(check_symmetry(antidiagonal(3, {2, 5, 3}, 2), 3));
    GramMatrix id;
    id.entries = zero_matrix(2);
    id.entries[0][0] = 1;
    id.entries[1][1] = 1;
    EXPECT_FALSE(check_symmetry(id, 2));
}

TEST(Homogeneity, Examples) {
    for (int n = 2; n <= 6; ++n) {
        EXPECT_TRUE(check_homogeneity(antidiagonal(n, std::vector<Rational>(static_cast<std::size_t>(n), 1), n - 1), n));
        GramMatrix g;
        g.entries = zero_matrix(static_cast<std::size_t>(n));
        g.entries[0][static_cast<std::size_t>(n - 1)] = laurent_monomial(n - 2, 1);
        EXPECT_FALSE(check_homogeneity(g, n));
        GramMatrix w = antidiagonal(n, std::vector<Rational>(static_cast<std::size_t>(n), 1), n - 1, 2);
        w.k = 1;
        EXPECT_TRUE(check_homogeneity(w, n));
        EXPECT_TRUE(check_antidiagonal_form(w));
    }
}

TEST(Lattice, PairingValues) {
    const int n = 3;
    const GramMatrix g = antidiagonal(n, {1, 1, 1}, n - 1);
    for (int i = 0; i < n; ++i) {
        std::vector<Laurent> v(n), w(n);
        v[static_cast<std::size_t>(i)] = 1;
        w[static_cast<std::size_t>(n - 1 - i)] = 1;
        EXPECT_EQ(pairing_value(g, v, w), laurent_monomial(n - 1, 0));
    }
    std::vector<Laurent> v(n), w(n);
    v[0] = laurent_monomial(1, 0);
    w[n - 1] = laurent_monomial(0, 1);
    EXPECT_EQ(pairing_value(g, v, w), laurent_monomial(n, 1));
    // Outside the lattice the valuation bound fails.
    GramMatrix bad = antidiagonal(n, {1, 1, 1}, n - 2);
    EXPECT_FALSE(check_lattice_compat(bad, 100, Lattice::G0log));
}

TEST(S0, Examples) {
    const auto s = induced_S0(antidiagonal(2, {1, 1}, 1));
    EXPECT_EQ(print_matrix(s.s0), "[[0, 1], [1, 0]]");
    EXPECT_TRUE(s.symmetric);
    EXPECT_EQ(s.determinant, Laurent(-1));
    EXPECT_TRUE(s.nondegenerate);
    const auto s3 = induced_S0(antidiagonal(3, {2, 5, 2}, 2));
    EXPECT_TRUE(s3.symmetric);
    const auto st = induced_S0(antidiagonal(2, {1, 1}, 1, 2));
    EXPECT_TRUE(st.nondegenerate);
    EXPECT_EQ(st.determinant, laurent_monomial(0, 4, -1));
    try {
        induced_S0(antidiagonal(3, {1, 1, 1}, 1));
        FAIL();
    } catch (const Error& e) {
        EXPECT_STREQ(e.what(), "gram not theta^(n-1)-divisible");
    }
}

TEST(PoleOrders, Examples) {
    EXPECT_TRUE(check_pole_orders(antidiagonal(3, {1, 2, 1}, 2), 3));
    EXPECT_FALSE(check_pole_orders(antidiagonal(3, {1, 2, 1}, 3), 3));
    EXPECT_FALSE(check_pole_orders(antidiagonal(3, {1, 2, 1}, 1), 3));
}

} // namespace
