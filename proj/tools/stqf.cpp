#include "stqf/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>

namespace {

using namespace stqf;

std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read '" + path + "'");
    return {std::istreambuf_iterator<char>(in), {}};
}

std::optional<Vector> vector_flag(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return parse_vector(s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quadratic forms over supertropical semirings"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string group, sizes = "full", only, file, x, y, window = "-1,0,1", derived;
    cli::Options opt;
    app.add_option("--group", group, "Value group: int or rat (overrides the file)")->check(CLI::IsMember({"int", "rat", "tri"}));
    app.add_option("--jobs", opt.jobs, "Worker threads for selftest")->check(CLI::PositiveNumber);
    app.add_flag("--pretty", opt.pretty, "Indented JSON and aligned tables");
    app.add_option("--seed", opt.seed, "Random seed for selftest");

    auto* classify = app.add_subcommand("classify", "Classify the pair (x, y) as quasilinear or excessive");
    auto* qtable = app.add_subcommand("qtable", "Piecewise q-values on the span of (x, y) against direct evaluation");
    auto* cs = app.add_subcommand("cs", "CS-ratio of (x, y), optionally of a derived pair");
    for (auto* sc : {classify, qtable, cs}) {
        sc->add_option("file", file, "Instance file, - for stdin")->required();
        sc->add_option("--x", x, "Vector x, e.g. \"[t:0, 0]\"");
        sc->add_option("--y", y, "Vector y");
    }
    cs->add_option("--derived", derived, "Coefficients l1,m1,l2,m2 of x' = l1 x + m1 y, y' = l2 x + m2 y");

    auto* minimal = app.add_subcommand("minimal", "q-minimal vectors");
    minimal->require_subcommand(1);
    auto* decide = minimal->add_subcommand("decide", "Decide q-minimality of x or each listed vector");
    auto* enumerate = minimal->add_subcommand("enumerate", "List q-minimal vectors with coordinates in a window");
    auto* structure = minimal->add_subcommand("structure", "Structure of a q-minimal vector with support 3 or 4");
    for (auto* sc : {decide, enumerate, structure}) {
        sc->add_option("file", file, "Instance file, - for stdin")->required();
        sc->fallthrough();
    }
    for (auto* sc : {decide, structure}) sc->add_option("--x", x, "Vector x");
    enumerate->add_option("--window", window, "Comma-separated coordinate values");

    auto* strop = app.add_subcommand("stropicalize", "Supertropicalize a rational binary form after a base change");
    strop->add_option("file", file, "Input file, - for stdin")->required();

    auto* selftest = app.add_subcommand("selftest", "Run the acceptance criteria");
    selftest->add_option("--only", only, "Criteria by id, range or name, comma separated");
    selftest->add_option("--sizes", sizes, "full or small")->check(CLI::IsMember({"full", "small"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::kParse;
    }

    try {
        if (!group.empty()) opt.group = parse_group(group);
        cli::Result r;
        if (*selftest) {
            r = cli::selftest(opt, only, sizes);
        } else if (*strop) {
            r = cli::stropicalize(parse_json_text(read_input(file)), opt);
        } else {
            Instance in = parse_instance(read_input(file));
            if (*classify)
                r = cli::classify(in, opt, vector_flag(x), vector_flag(y));
            else if (*qtable)
                r = cli::qtable(in, opt, vector_flag(x), vector_flag(y));
            else if (*cs)
                r = cli::cs(in, opt, derived.empty() ? std::nullopt : std::optional(cli::parse_coefficients(derived)),
                            vector_flag(x), vector_flag(y));
            else if (*decide)
                r = cli::minimal(in, opt, cli::MinimalMode::Decide, vector_flag(x));
            else if (*enumerate)
                r = cli::minimal(in, opt, cli::MinimalMode::Enumerate, std::nullopt, window);
            else
                r = cli::minimal(in, opt, cli::MinimalMode::Structure, vector_flag(x));
        }
        std::cout << r.out;
        return r.code;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return cli::kParse;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return cli::kPrecondition;
    }
}
