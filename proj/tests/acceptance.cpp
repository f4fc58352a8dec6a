// Acceptance run: one PASS/FAIL line per criterion. All comparisons are exact;
// the only numeric thresholds are the wall-clock budgets below.

#include "support.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <set>

using namespace gmdual;
using namespace gmdual::testing;

namespace {

constexpr double kCommutatorBudgetSeconds = 10.0;
constexpr double kGramBudgetSeconds = 30.0;
constexpr int kLatticeTrials = 100;
constexpr int kOracleTriples = 1000;
constexpr int kRoundTrips = 1000;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) detail = what;
        ok = ok && cond;
    }
};

std::vector<SpectrumInstance> g_instances;
std::vector<SpectrumInstance> g_invalid;

Outcome commutator_identity() {
    Outcome o;
    std::set<int> ns;
    const auto t0 = Clock::now();
    for (const auto& inst : g_instances) {
        ns.insert(inst.n);
        o.require(check_commutator(build_generators(inst)).passed, "nonzero residual for " + inst.label);
    }
    const double secs = seconds_since(t0);
    o.require(ns == std::set<int>{2, 3, 4, 5, 6}, "instances do not cover n = 2..6");
    o.require(secs < kCommutatorBudgetSeconds, "runtime " + std::to_string(secs) + " s");
    if (o.ok) o.detail = std::to_string(g_instances.size()) + " instances, " + std::to_string(secs) + " s";
    return o;
}

Outcome resolution_and_regularity() {
    Outcome o;
    for (const auto& inst : g_instances) {
        const GeneratorSet g = build_generators(inst);
        o.require(check_resolution_complex(g).passed(), "complex fails for " + inst.label);
        const auto ord = check_symbol_regularity(g, WeightVector::order());
        const auto f = check_symbol_regularity(g, WeightVector::f_filtration());
        o.require(ord.regular, "order filtration, " + inst.label + ": " + ord.reason);
        o.require(f.regular, "F filtration, " + inst.label + ": " + f.reason);
    }
    return o;
}

Outcome dual_generator() {
    Outcome o;
    for (const auto& inst : g_instances)
        o.require(check_dual_generator(build_generators(inst)).passed, "fails for " + inst.label);
    int broken = 0;
    for (const auto& inst : g_invalid) {
        const auto v = validate(inst);
        bool asymmetric = false;
        for (const auto& item : v.items) asymmetric |= item.name == "duality_symmetry" && !item.passed;
        if (asymmetric && !check_dual_generator(build_generators(inst)).passed) ++broken;
    }
    o.require(broken >= 1, "no asymmetric spectrum broke the identity");
    if (o.ok) o.detail = "negative control fails on " + std::to_string(broken) + " asymmetric spectra";
    return o;
}

Outcome phi_welldefined() {
    Outcome o;
    std::set<std::string> conventions;
    for (const auto& inst : g_instances) {
        const auto r = check_phi_welldefined(build_generators(inst));
        o.require(r.passed(), "nonzero reduction for " + inst.label);
        conventions.insert(r.convention);
    }
    o.require(conventions.size() == 1, "convention differs between instances");
    if (o.ok) o.detail = "convention " + *conventions.begin();
    return o;
}

Outcome square_identities_and_sign() {
    Outcome o;
    for (const auto& inst : g_instances) {
        const auto [i1, i2] = check_diagram8(build_generators(inst));
        o.require(i1.passed && i2.passed, "square identity fails for " + inst.label);
    }
    std::string signs;
    for (int n = 2; n <= 6; ++n) {
        const auto it = std::find_if(g_instances.begin(), g_instances.end(), [n](const auto& i) { return i.n == n; });
        if (it == g_instances.end()) {
            o.require(false, "no instance with n = " + std::to_string(n));
            continue;
        }
        const int s = duality_sign(*it);
        o.require(s == sign_pow(n - 1), "sign for n = " + std::to_string(n));
        signs += s > 0 ? '+' : '-';
    }
    o.require(signs == "-+-+-", "signs " + signs);
    if (o.ok) o.detail = "signs n=2..6: " + signs;
    return o;
}

Outcome connection_flat() {
    Outcome o;
    for (const auto& inst : g_instances) {
        o.require(is_zero(curvature_check(build_connection(inst, Basis::Omega))), "curvature for " + inst.label);
        if (inst.nu_tilde)
            o.require(is_zero(curvature_check(build_connection(inst, Basis::OmegaTilde))),
                      "omega_tilde curvature for " + inst.label);
        ConnectionData perturbed = build_connection(inst, Basis::Omega);
        perturbed.Ainf_prime[0] += 1;
        o.require(!is_zero(curvature_check(perturbed)), "perturbation left " + inst.label + " flat");
    }
    return o;
}

Outcome presentation_consistency() {
    Outcome o;
    std::set<int> signs;
    for (const auto& inst : g_instances) {
        try {
            const auto c = phi_calibrate(inst);
            const std::size_t k = c.sign == 1 ? 0 : 1;
            o.require(is_zero(c.residual_dt[k]) && is_zero(c.residual_dtheta[k]), "residual for " + inst.label);
            signs.insert(c.sign);
        } catch (const Error& e) {
            o.require(false, inst.label + ": " + e.what());
        }
    }
    if (o.ok) o.detail = "s = " + std::to_string(*signs.begin()) + (signs.size() > 1 ? " (varies)" : "");
    return o;
}

Outcome gram_solver() {
    Outcome o;
    double worst_n6 = 0;
    for (const auto& inst : g_instances) {
        std::vector<Basis> bases{Basis::Omega};
        if (inst.nu_tilde) bases.push_back(Basis::OmegaTilde);
        for (Basis b : bases) {
            const std::string where = inst.label + "/" + to_string(b);
            const auto t0 = Clock::now();
            FlatGramSolution sol;
            try {
                sol = solve_flat_gram(build_connection(inst, b), sign_pow(inst.n - 1));
            } catch (const Error& e) {
                o.require(false, where + ": " + e.what());
                continue;
            }
            const GramMatrix& g = sol.gram;
            o.require(sol.dimension == 1, where + ": dimension " + std::to_string(sol.dimension));
            o.require(check_antidiagonal_form(g), where + ": not antidiagonal in Q* theta^(n-1) t^(2k)");
            o.require(check_symmetry(g, inst.n), where + ": symmetry");
            o.require(check_homogeneity(g, inst.n), where + ": homogeneity");
            o.require(check_lattice_compat(g, kLatticeTrials, Lattice::G0star), where + ": G0star lattice");
            o.require(check_lattice_compat(g, kLatticeTrials, Lattice::G0log), where + ": G0log lattice");
            const auto s0 = induced_S0(g);
            o.require(s0.symmetric, where + ": S0 not symmetric");
            o.require(s0.nondegenerate, where + ": det S0 = " + print(s0.determinant));
            const double secs = seconds_since(t0);
            if (inst.n == 6) worst_n6 = std::max(worst_n6, secs);
            o.require(secs < kGramBudgetSeconds, where + ": runtime " + std::to_string(secs) + " s");
        }
    }
    if (o.ok) o.detail = "n=6 solve " + std::to_string(worst_n6) + " s";
    return o;
}

Outcome jacobian_relation() {
    Outcome o;
    for (const auto& inst : g_instances) {
        const auto j = jacobian_identity_check(build_generators(inst));
        o.require(j.relation_holds, "relation fails for " + inst.label);
        o.require(j.quotient_free && j.rank == inst.n, "quotient not free of rank n for " + inst.label);
    }
    return o;
}

Outcome arithmetic_oracle() {
    Outcome o;
    std::mt19937_64 rng(20180604);
    for (int i = 0; i < kOracleTriples; ++i) {
        const OreOperator p = random_operator(rng), r = random_operator(rng);
        const Laurent f = random_laurent(rng);
        o.require(apply(p * r, f) == apply(p, apply(r, f)), "product mismatch: " + print(p) + " * " + print(r));
    }
    for (int i = 0; i < kRoundTrips; ++i) {
        const OreOperator op = random_operator(rng, {-3, 3, 3, 6});
        o.require(eval(print(op)) == op, "round trip: " + print(op));
    }
    if (o.ok) o.detail = std::to_string(kOracleTriples) + " triples, " + std::to_string(kRoundTrips) + " round trips";
    return o;
}

} // namespace

int main() {
    try {
        g_instances = bundled();
        for (const auto& path : instance_files(instances_dir() + "/invalid")) {
            try {
                g_invalid.push_back(load_instance(path));
            } catch (const InputError&) {
                // malformed on purpose; exercised by the CLI tests
            }
        }
    } catch (const std::exception& e) {
        std::cout << "FAIL setup: " << e.what() << "\n";
        return 1;
    }

    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"commutator identity [P1t,P2t] = n theta P1t", commutator_identity},
        {"resolution complex and symbol regularity (order, F)", resolution_and_regularity},
        {"dual generator Ptilde1 = P1t, negative control", dual_generator},
        {"phi well defined", phi_welldefined},
        {"square identities I1, I2 and duality sign", square_identities_and_sign},
        {"connection flat, perturbation detected", connection_flat},
        {"presentation/connection consistency", presentation_consistency},
        {"flat Gram matrix", gram_solver},
        {"Jacobian algebra relation", jacobian_relation},
        {"arithmetic oracle and parser round trip", arithmetic_oracle},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.ok;
        std::cout << (o.ok ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first;
        if (!o.detail.empty()) std::cout << "  (" << o.detail << ")";
        std::cout << "\n";
    }
    std::cout << (failed ? "FAIL" : "PASS") << " " << criteria.size() - static_cast<std::size_t>(failed) << "/"
              << criteria.size() << " criteria\n";
    return failed ? 1 : 0;
}
