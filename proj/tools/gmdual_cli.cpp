#include "gmdual/gmdual.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

using namespace gmdual;

int main(int argc, char** argv) {
    CLI::App app{"Exact checks for the Gauss-Manin system of a linear free divisor"};
    app.require_subcommand(1);

    std::string format = "text", basis = "omega", path, expr, dir = "instances";
    int jobs = 1;
    const std::map<std::string, Format> formats{{"text", Format::Text}, {"json", Format::Json}};
    const std::map<std::string, Basis> bases{{"omega", Basis::Omega}, {"omega_tilde", Basis::OmegaTilde}};
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    };

    auto* verify = app.add_subcommand("verify", "Run every check on one instance file");
    verify->add_option("instance", path, "Instance file")->required();
    add_format(verify);

    auto* reduce = app.add_subcommand("reduce", "Normal form of an operator in the Q_i basis");
    reduce->add_option("instance", path, "Instance file")->required();
    reduce->add_option("expr", expr, "Operator expression")->required();
    add_format(reduce);

    auto* gram = app.add_subcommand("gram", "Solve for the flat pairing");
    gram->add_option("instance", path, "Instance file")->required();
    gram->add_option("--basis", basis, "Basis")->check(CLI::IsMember({"omega", "omega_tilde"}));
    add_format(gram);

    auto* suite = app.add_subcommand("suite", "Verify every *.json instance in a directory");
    suite->add_option("--instances", dir, "Instance directory");
    suite->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    add_format(suite);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    const Format fmt = formats.at(format);
    if (*verify) return cmd_verify(path, fmt, std::cout, std::cerr);
    if (*reduce) return cmd_reduce(path, expr, fmt, std::cout, std::cerr);
    if (*gram) return cmd_gram(path, bases.at(basis), fmt, std::cout, std::cerr);
    return cmd_suite(dir, jobs, fmt, std::cout, std::cerr);
}
