#pragma once

// Test-only oracles and generators. Nothing here calls the Ore product.

#include "gmdual/gmdual.hpp"

#include <random>
#include <string>
#include <vector>

namespace gmdual::testing {

/// Applies op to f by formal differentiation: each term c theta^a t^b dtheta^p dt^q
/// acts as f -> c theta^a t^b d^p/dtheta^p d^q/dt^q f.
inline Laurent apply(const OreOperator& op, const Laurent& f) {
    Laurent out;
    for (const auto& [k, c] : op.terms()) {
        Laurent g = f;
        for (int i = 0; i < k[kDTheta]; ++i) g = d_theta(g);
        for (int i = 0; i < k[kDT]; ++i) g = d_t(g);
        out += shift(g, k[kTheta], k[kT]) * c;
    }
    return out;
}

struct Ranges {
    int min_exp = -2, max_exp = 2, max_deriv = 2, max_terms = 4;
};

inline Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(1, 9), den(1, 5), sign(0, 1);
    Rational r(sign(rng) ? num(rng) : -num(rng), den(rng));
    r.canonicalize();
    return r;
}

inline OreOperator random_operator(std::mt19937_64& rng, const Ranges& r = {}) {
    std::uniform_int_distribution<int> nterms(1, r.max_terms), ex(r.min_exp, r.max_exp), dx(0, r.max_deriv);
    OreOperator op;
    const int m = nterms(rng);
    for (int i = 0; i < m; ++i) {
        const int a = ex(rng), b = ex(rng), p = dx(rng), q = dx(rng);
        op.add_term({a, b, p, q}, random_rational(rng));
    }
    return op;
}

inline Laurent random_laurent(std::mt19937_64& rng, int lo = -3, int hi = 3, int max_terms = 5) {
    std::uniform_int_distribution<int> nterms(1, max_terms), ex(lo, hi);
    Laurent f;
    const int m = nterms(rng);
    for (int i = 0; i < m; ++i) {
        const int a = ex(rng), b = ex(rng);
        f.add_term({a, b}, random_rational(rng));
    }
    return f;
}

inline Rational q(long p, long d = 1) {
    Rational r(p, d);
    r.canonicalize();
    return r;
}

inline SpectrumInstance n2() { return SpectrumInstance(2, {0, 1}, 1, std::nullopt, "n2"); }
inline SpectrumInstance n3() { return SpectrumInstance(3, {q(1, 2), 1, q(3, 2)}, 1, std::nullopt, "n3"); }
inline SpectrumInstance asymmetric() { return SpectrumInstance(2, {0, q(1, 2)}, 1, std::nullopt, "asymmetric"); }

inline std::string instances_dir() { return GMDUAL_INSTANCES; }

/// The bundled valid instances, n = 2..6 plus the one carrying nu_tilde.
inline std::vector<SpectrumInstance> bundled() {
    std::vector<SpectrumInstance> out;
    for (const auto& path : instance_files(instances_dir())) out.push_back(load_instance(path));
    return out;
}

} // namespace gmdual::testing
