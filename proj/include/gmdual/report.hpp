#pragma once

#include "duality.hpp"
#include "pairing.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

namespace gmdual {

/// Malformed or unreadable input; maps to exit code 2.
class InputError : public Error {
public:
    using Error::Error;
};

enum class Format { Text, Json };

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInput = 2;

// Instance files are JSON objects:
//   {"label": "...", "n": 3, "nu": ["1/2", "1", "3/2"], "c": "1", "nu_tilde": [...]}
// Rationals are strings "p" or "p/q"; plain JSON integers are accepted too.
// Floating point values are rejected.

namespace detail {

inline Rational json_rational(const nlohmann::json& v, const std::string& where) {
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const Error& e) {
            throw InputError(where + ": " + e.what());
        }
    }
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_number_float()) throw InputError(where + ": floating point value, write it as a \"p/q\" string");
    throw InputError(where + ": expected a rational string");
}

inline std::vector<Rational> json_rationals(const nlohmann::json& v, const std::string& where) {
    if (!v.is_array()) throw InputError(where + ": expected an array");
    std::vector<Rational> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(json_rational(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

inline nlohmann::json rationals_json(const std::vector<Rational>& xs) {
    auto out = nlohmann::json::array();
    for (const auto& x : xs) out.push_back(to_string(x));
    return out;
}

} // namespace detail

inline SpectrumInstance parse_instance(const std::string& text, const std::string& source = "<input>") {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(source + ": " + e.what());
    }
    if (!j.is_object()) throw InputError(source + ": expected a JSON object");
    for (const char* key : {"n", "nu", "c"})
        if (!j.contains(key)) throw InputError(source + ": missing field '" + key + "'");
    for (const auto& [key, _] : j.items())
        if (key != "n" && key != "nu" && key != "c" && key != "nu_tilde" && key != "label")
            throw InputError(source + ": unknown field '" + key + "'");
    if (!j["n"].is_number_integer()) throw InputError(source + ": n must be an integer");
    const long n = j["n"].get<long>();
    if (n < 1 || n > 64) throw InputError(source + ": n out of range");

    std::optional<std::vector<Rational>> nu_tilde;
    if (j.contains("nu_tilde")) nu_tilde = detail::json_rationals(j["nu_tilde"], "nu_tilde");
    std::string label;
    if (j.contains("label")) {
        if (!j["label"].is_string()) throw InputError(source + ": label must be a string");
        label = j["label"].get<std::string>();
    }
    try {
        return SpectrumInstance(static_cast<int>(n), detail::json_rationals(j["nu"], "nu"),
                                detail::json_rational(j["c"], "c"), std::move(nu_tilde), std::move(label));
    } catch (const InputError&) {
        throw;
    } catch (const Error& e) {
        throw InputError(source + ": " + e.what());
    }
}

inline SpectrumInstance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path.string() + ": cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str(), path.string());
}

inline nlohmann::json instance_json(const SpectrumInstance& inst) {
    nlohmann::json j;
    j["label"] = inst.label;
    j["n"] = inst.n;
    j["nu"] = detail::rationals_json(inst.nu);
    j["c"] = to_string(inst.c);
    if (inst.nu_tilde) j["nu_tilde"] = detail::rationals_json(*inst.nu_tilde);
    return j;
}

struct CheckRecord {
    std::string name;
    std::string status;  // PASS, FAIL or ERROR
    std::string detail;
};

struct GramRecord {
    Basis basis;
    int dimension = 0;
    std::string convention;
    std::string normalization;
    std::vector<std::vector<std::string>> entries;
    std::vector<std::pair<std::string, int>> dimensions_by_convention;
};

struct Report {
    SpectrumInstance instance;
    std::vector<CheckRecord> checks;
    std::vector<std::pair<std::string, std::string>> conventions;
    std::vector<GramRecord> grams;
    std::vector<std::pair<std::string, double>> timings_ms;

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.status == "PASS"; });
    }
    const CheckRecord* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

inline std::string print_matrix(const LaurentMatrix& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
        out += i ? ", [" : "[";
        for (std::size_t j = 0; j < m[i].size(); ++j) out += (j ? ", " : "") + print(m[i][j]);
        out += "]";
    }
    return out + "]";
}

inline std::string print_coefficients(const QCoefficients& h) {
    std::string out = "(";
    for (std::size_t i = 0; i < h.size(); ++i) out += (i ? ", " : "") + print(h[i]);
    return out + ")";
}

namespace detail {

class Recorder {
public:
    explicit Recorder(Report& r) : r_(r) {}

    void add(std::string name, bool ok, std::string detail = {}) {
        r_.checks.push_back({std::move(name), ok ? "PASS" : "FAIL", std::move(detail)});
    }

    /// Runs body, timing it; an exception becomes an ERROR record named after the step.
    void step(const std::string& name, const std::function<void()>& body) {
        const auto t0 = std::chrono::steady_clock::now();
        try {
            body();
        } catch (const std::exception& e) {
            r_.checks.push_back({name, "ERROR", e.what()});
        }
        const auto t1 = std::chrono::steady_clock::now();
        r_.timings_ms.emplace_back(name, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }

    void identity(const IdentityCheck& c) { add(c.name, c.passed, c.passed ? "" : "residual " + print(c.residual)); }

private:
    Report& r_;
};

inline void gram_checks(Recorder& rec, Report& report, const SpectrumInstance& inst, Basis basis) {
    const std::string p = "gram." + to_string(basis);
    const ConnectionData cd = build_connection(inst, basis);
    const LaurentMatrix curv = curvature_check(cd);
    rec.add("curvature." + to_string(basis), is_zero(curv), is_zero(curv) ? "" : "residual " + print_matrix(curv));

    const FlatGramSolution sol = solve_flat_gram(cd, sign_pow(inst.n - 1));
    const GramMatrix& g = sol.gram;
    GramRecord gr{basis, sol.dimension, sol.convention, g.normalization, {}, sol.dimensions_by_convention};
    for (const auto& row : g.entries) {
        gr.entries.emplace_back();
        for (const auto& e : row) gr.entries.back().push_back(print(e));
    }
    report.grams.push_back(gr);
    report.conventions.emplace_back("pairing_convention." + to_string(basis), sol.convention);

    rec.add(p + ".nullspace_dimension", sol.dimension == 1, "dimension " + std::to_string(sol.dimension));
    rec.add(p + ".antidiagonal", check_antidiagonal_form(g), print_matrix(g.entries));
    rec.add(p + ".symmetry", check_symmetry(g, inst.n), "sign " + std::to_string(sign_pow(inst.n - 1)));
    rec.add(p + ".homogeneity", check_homogeneity(g, inst.n));
    rec.add(p + ".pole_orders", check_pole_orders(g, inst.n));
    rec.add(p + ".nondegenerate", is_nondegenerate(g), "det " + print(determinant(g.entries)));
    rec.add(p + ".lattice_G0star", check_lattice_compat(g, 100, Lattice::G0star), "100 random pairs");
    rec.add(p + ".lattice_G0log", check_lattice_compat(g, 100, Lattice::G0log), "100 random pairs");
    const InducedPairing s0 = induced_S0(g);
    rec.add(p + ".S0_symmetric", s0.symmetric, print_matrix(s0.s0));
    rec.add(p + ".S0_unit_determinant", s0.nondegenerate, "det " + print(s0.determinant));
}

} // namespace detail

/// Runs the whole battery on one instance. Each check is recorded even when
/// validation fails, so negative controls show which identities break.
inline Report run_verify(const SpectrumInstance& inst) {
    Report report;
    report.instance = inst;
    detail::Recorder rec(report);
    report.conventions.emplace_back("iota_variable", "theta");
    report.conventions.emplace_back("p1prime_constant", "c/n^n");
    if (inst.degenerate()) report.conventions.emplace_back("degenerate", "n=1");

    rec.step("validate", [&] {
        for (const auto& item : validate(inst).items) rec.add("validate." + item.name, item.passed, item.witness);
    });

    std::optional<GeneratorSet> gens;
    rec.step("generators", [&] {
        gens = build_generators(inst);
        rec.add("generators.transpose_consistent", true);
    });
    if (gens) {
        const GeneratorSet& g = *gens;
        rec.step("commutator", [&] { rec.identity(check_commutator(g)); });
        rec.step("resolution", [&] {
            auto r = check_resolution_complex(g);
            rec.identity(r.complex);
            rec.identity(r.theta_central);
        });
        rec.step("symbol_regularity", [&] {
            auto o = check_symbol_regularity(g, WeightVector::order());
            rec.add("symbol_regularity.order", o.regular, o.reason);
            auto f = check_symbol_regularity(g, WeightVector::f_filtration());
            rec.add("symbol_regularity.F", f.regular, f.reason);
        });
        rec.step("dual_generator", [&] { rec.identity(check_dual_generator(g)); });
        rec.step("phi_welldefined", [&] {
            auto r = check_phi_welldefined(g);
            std::string detail = std::string("iota_on_operator ") + (r.operator_convention_passes() ? "PASS" : "FAIL") +
                                 ", iota_on_ideal " + (r.ideal_convention_passes() ? "PASS" : "FAIL");
            rec.add("phi_welldefined", r.passed(), detail);
            report.conventions.emplace_back("iota_twist", r.passed() ? r.convention : "none");
        });
        rec.step("square_identities", [&] {
            auto [i1, i2] = check_diagram8(g);
            rec.identity(i1);
            rec.identity(i2);
        });
        rec.step("duality_sign", [&] {
            const int s = duality_sign(inst);
            rec.add("duality_sign", true, std::to_string(s));
            report.conventions.emplace_back("duality_sign", std::to_string(s));
        });
        rec.step("jacobian", [&] {
            auto j = jacobian_identity_check(g);
            rec.add("jacobian.relation", j.relation_holds,
                    j.relation_holds ? "" : "residual " + print_coefficients(j.relation_residual));
            rec.add("jacobian.quotient_free", j.quotient_free, "det " + print(j.quotient_determinant));
        });
    }
    rec.step("phi_calibrate", [&] {
        auto c = phi_calibrate(inst);
        rec.add("phi_calibrate", true, "s = " + std::to_string(c.sign));
        report.conventions.emplace_back("phi_sign", std::to_string(c.sign));
    });
    rec.step("gram.omega", [&] { detail::gram_checks(rec, report, inst, Basis::Omega); });
    if (inst.nu_tilde)
        rec.step("gram.omega_tilde", [&] { detail::gram_checks(rec, report, inst, Basis::OmegaTilde); });
    return report;
}

inline nlohmann::json gram_json(const GramRecord& g) {
    nlohmann::json j;
    j["basis"] = to_string(g.basis);
    j["dimension"] = g.dimension;
    j["convention"] = g.convention;
    j["normalization"] = g.normalization;
    j["entries"] = g.entries;
    auto dims = nlohmann::json::object();
    for (const auto& [name, d] : g.dimensions_by_convention) dims[name] = d;
    j["dimensions_by_convention"] = dims;
    return j;
}

inline nlohmann::json report_json(const Report& r, bool timings = true) {
    nlohmann::json j;
    j["instance"] = instance_json(r.instance);
    j["status"] = r.passed() ? "PASS" : "FAIL";
    auto checks = nlohmann::json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"status", c.status}, {"detail", c.detail}});
    j["checks"] = checks;
    auto conv = nlohmann::json::object();
    for (const auto& [k, v] : r.conventions) conv[k] = v;
    j["conventions"] = conv;
    auto grams = nlohmann::json::array();
    for (const auto& g : r.grams) grams.push_back(gram_json(g));
    j["gram"] = grams;
    if (timings) {
        auto t = nlohmann::json::object();
        for (const auto& [k, v] : r.timings_ms) t[k] = v;
        j["timings_ms"] = t;
    }
    return j;
}

inline void write_text(std::ostream& out, const Report& r) {
    out << "instance " << (r.instance.label.empty() ? "(unlabelled)" : r.instance.label) << "  n=" << r.instance.n
        << "  c=" << to_string(r.instance.c) << "\n";
    for (const auto& c : r.checks) {
        out << "  " << c.status << "  " << c.name;
        if (!c.detail.empty()) out << "  " << c.detail;
        out << "\n";
    }
    for (const auto& [k, v] : r.conventions) out << "  convention " << k << " = " << v << "\n";
    out << (r.passed() ? "PASS" : "FAIL") << "\n";
}

inline int cmd_verify(const std::filesystem::path& path, Format fmt, std::ostream& out, std::ostream& err) {
    SpectrumInstance inst;
    try {
        inst = load_instance(path);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kExitInput;
    }
    const Report r = run_verify(inst);
    if (fmt == Format::Json) out << report_json(r).dump(2) << "\n";
    else write_text(out, r);
    return r.passed() ? kExitPass : kExitFail;
}

inline int cmd_reduce(const std::filesystem::path& path, const std::string& expr, Format fmt, std::ostream& out,
                      std::ostream& err) {
    SpectrumInstance inst;
    OreOperator op;
    try {
        inst = load_instance(path);
        op = eval(expr);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kExitInput;
    }
    const auto v = validate(inst);
    if (!v.all_passed()) {
        for (const auto& i : v.items)
            if (!i.passed) err << "validate." << i.name << " FAIL " << i.witness << "\n";
        return kExitFail;
    }
    const QCoefficients h = normal_form(op, build_generators(inst));
    if (fmt == Format::Json) {
        nlohmann::json j;
        j["expr"] = print(op);
        auto coeffs = nlohmann::json::array();
        for (const auto& x : h) coeffs.push_back(print(x));
        j["coefficients"] = coeffs;
        out << j.dump(2) << "\n";
    } else {
        out << print_coefficients(h) << "\n";
    }
    return kExitPass;
}

inline int cmd_gram(const std::filesystem::path& path, Basis basis, Format fmt, std::ostream& out, std::ostream& err) {
    SpectrumInstance inst;
    try {
        inst = load_instance(path);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kExitInput;
    }
    if (basis == Basis::OmegaTilde && !inst.nu_tilde) {
        err << path.string() << ": basis omega_tilde needs nu_tilde\n";
        return kExitInput;
    }
    const auto v = validate(inst);
    if (!v.all_passed()) {
        for (const auto& i : v.items)
            if (!i.passed) err << "validate." << i.name << " FAIL " << i.witness << "\n";
        return kExitFail;
    }
    FlatGramSolution sol;
    try {
        sol = solve_flat_gram(build_connection(inst, basis), sign_pow(inst.n - 1));
    } catch (const Error& e) {
        err << "gram: " << e.what() << "\n";
        return kExitFail;
    }
    if (fmt == Format::Json) {
        GramRecord gr{basis, sol.dimension, sol.convention, sol.gram.normalization, {}, sol.dimensions_by_convention};
        for (const auto& row : sol.gram.entries) {
            gr.entries.emplace_back();
            for (const auto& e : row) gr.entries.back().push_back(print(e));
        }
        out << gram_json(gr).dump(2) << "\n";
    } else {
        out << "dimension " << sol.dimension << "\nconvention " << sol.convention << "\nnormalization "
            << sol.gram.normalization << "\n";
        for (const auto& row : sol.gram.entries) {
            for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "  " : "") << print(row[j]);
            out << "\n";
        }
    }
    return kExitPass;
}

struct SuiteEntry {
    std::string file;
    std::optional<Report> report;
    std::string error;  // input error, when report is empty
    bool passed() const { return report && report->passed(); }
};

/// Instance files (*.json) directly inside dir, sorted by name.
inline std::vector<std::filesystem::path> instance_files(const std::filesystem::path& dir) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) throw InputError(dir.string() + ": not a readable directory");
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::directory_iterator(dir, ec))
        if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path());
    if (ec) throw InputError(dir.string() + ": " + ec.message());
    std::sort(out.begin(), out.end());
    return out;
}

/// Verifies every file with up to jobs workers. Results keep the file order.
inline std::vector<SuiteEntry> run_suite(const std::vector<std::filesystem::path>& files, int jobs) {
    std::vector<SuiteEntry> out(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < files.size();) {
            out[i].file = files[i].filename().string();
            try {
                out[i].report = run_verify(load_instance(files[i]));
            } catch (const std::exception& e) {
                out[i].error = e.what();
            }
        }
    };
    const int workers = std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(files.size(), 1)));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

inline int cmd_suite(const std::filesystem::path& dir, int jobs, Format fmt, std::ostream& out, std::ostream& err) {
    std::vector<std::filesystem::path> files;
    try {
        files = instance_files(dir);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kExitInput;
    }
    if (files.empty()) {
        err << "no instances in " << dir.string() << "\n";
        return kExitInput;
    }
    const auto entries = run_suite(files, jobs);
    const bool all = std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.passed(); });
    std::vector<std::string> failed;
    for (const auto& e : entries)
        if (!e.passed()) failed.push_back(e.file);

    if (fmt == Format::Json) {
        nlohmann::json j;
        j["status"] = all ? "PASS" : "FAIL";
        j["failed"] = failed;
        auto items = nlohmann::json::array();
        for (const auto& e : entries) {
            nlohmann::json item;
            item["file"] = e.file;
            if (e.report) item["report"] = report_json(*e.report);
            else {
                item["status"] = "ERROR";
                item["error"] = e.error;
            }
            items.push_back(item);
        }
        j["instances"] = items;
        out << j.dump(2) << "\n";
    } else {
        for (const auto& e : entries) {
            if (e.report) out << (e.passed() ? "PASS  " : "FAIL  ") << e.file << "\n";
            else out << "ERROR " << e.file << "  " << e.error << "\n";
        }
        out << (all ? "PASS" : "FAIL") << "  " << entries.size() - failed.size() << "/" << entries.size() << "\n";
        for (const auto& f : failed) out << "failed: " << f << "\n";
    }
    return all ? kExitPass : kExitFail;
}

} // namespace gmdual
