#pragma once

#include "rational.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace gmdual {

/// Spectral data (n, nu_1..nu_n, c) and optionally a second spectrum nu~.
struct SpectrumInstance {
    int n = 0;
    std::vector<Rational> nu;
    Rational c;
    std::optional<std::vector<Rational>> nu_tilde;
    std::string label;

    SpectrumInstance() = default;
    SpectrumInstance(int n_, std::vector<Rational> nu_, Rational c_,
                     std::optional<std::vector<Rational>> nu_tilde_ = std::nullopt, std::string label_ = {})
        : n(n_), nu(std::move(nu_)), c(std::move(c_)), nu_tilde(std::move(nu_tilde_)), label(std::move(label_)) {
        if (n < 1) throw Error("n must be a positive integer");
        if (static_cast<int>(nu.size()) != n) throw Error("nu must have exactly n entries");
        if (c == 0) throw Error("c must be nonzero");
        if (nu_tilde && static_cast<int>(nu_tilde->size()) != n)
            throw Error("nu_tilde must have exactly n entries");
    }

    /// a_i = (i - 1 - nu_i) / n for i = 1..n (stored 0-based).
    static std::vector<Rational> shifts_of(const std::vector<Rational>& spectrum) {
        const int n = static_cast<int>(spectrum.size());
        std::vector<Rational> out;
        for (int i = 0; i < n; ++i) out.emplace_back((Rational(i) - spectrum[i]) / n);
        return out;
    }
    std::vector<Rational> shifts() const { return shifts_of(nu); }

    /// c / n^n
    Rational scaled_c() const { return c / rational_pow(Rational(n), static_cast<unsigned>(n)); }

    bool degenerate() const { return n == 1; }
};

struct ValidationItem {
    std::string name;
    bool passed;
    std::string witness;  // empty when passed
};

struct ValidationReport {
    std::vector<ValidationItem> items;
    bool all_passed() const {
        return std::all_of(items.begin(), items.end(), [](const auto& i) { return i.passed; });
    }
};

namespace detail {

inline ValidationItem check_gaps(const std::vector<Rational>& s, const std::string& name) {
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
        if (s[i + 1] - s[i] > 1)
            return {name, false,
                    "i=" + std::to_string(i + 1) + ": nu_" + std::to_string(i + 2) + " - nu_" +
                        std::to_string(i + 1) + " = " + to_string(Rational(s[i + 1] - s[i])) + " > 1"};
    return {name, true, {}};
}

inline ValidationItem check_sorted_symmetry(const std::vector<Rational>& s, const std::string& name) {
    const std::size_t n = s.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return s[a] < s[b]; });
    for (std::size_t i = 0; i < n; ++i) {
        const auto lo = order[i], hi = order[n - 1 - i];
        if (s[lo] + s[hi] != Rational(static_cast<long>(n) - 1))
            return {name, false,
                    "indices (" + std::to_string(lo + 1) + "," + std::to_string(hi + 1) + "): " +
                        to_string(s[lo]) + " + " + to_string(s[hi]) + " != " + std::to_string(n - 1)};
    }
    return {name, true, {}};
}

inline ValidationItem check_negation_symmetry(const std::vector<Rational>& s, const std::string& name) {
    auto a = SpectrumInstance::shifts_of(s);
    auto sorted = a;
    std::sort(sorted.begin(), sorted.end());
    std::vector<Rational> neg;
    for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) neg.emplace_back(-*it);
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] != neg[i]) {
            // Report an original index whose negated shift is missing.
            for (std::size_t j = 0; j < a.size(); ++j)
                if (std::count(a.begin(), a.end(), Rational(-a[j])) != std::count(a.begin(), a.end(), a[j]))
                    return {name, false,
                            "i=" + std::to_string(j + 1) + ": a_i = " + to_string(a[j]) + " has no negated partner"};
            return {name, false, "shift multiset not symmetric"};
        }
    return {name, true, {}};
}

} // namespace detail

/// Checks the structural properties required of a spectrum. Failures are
/// returned as data, each with a witness naming the violating indices.
inline ValidationReport validate(const SpectrumInstance& inst) {
    ValidationReport r;
    r.items.push_back(detail::check_gaps(inst.nu, "property_a"));
    r.items.push_back(detail::check_sorted_symmetry(inst.nu, "property_b"));
    r.items.push_back(detail::check_negation_symmetry(inst.nu, "duality_symmetry"));
    if (inst.nu_tilde) {
        const auto& s = *inst.nu_tilde;
        r.items.push_back(detail::check_gaps(s, "nu_tilde.property_a"));
        r.items.push_back(detail::check_sorted_symmetry(s, "nu_tilde.property_b"));
        r.items.push_back(detail::check_negation_symmetry(s, "nu_tilde.duality_symmetry"));
        Rational spread = s.front() - s.back();
        if (spread > 1)
            r.items.push_back({"nu_tilde.spread", false, "nu~_1 - nu~_n = " + to_string(spread) + " > 1"});
        else
            r.items.push_back({"nu_tilde.spread", true, {}});
    }
    return r;
}

} // namespace gmdual
