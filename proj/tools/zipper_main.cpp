#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "zipper/combinators.hpp"
#include "zipper/dot.hpp"
#include "zipper/engine.hpp"
#include "zipper/knots.hpp"
#include "zipper/suites.hpp"
#include "zipper/term.hpp"

namespace {

using namespace zipper;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

// A .zg path loads as a graph; anything else is a term string.
ZGraph load_input(const std::string& input) {
    if (input.size() > 3 && input.substr(input.size() - 3) == ".zg")
        return parse_zg(read_file(input));
    return compile(parse_term(input));
}

int run_verify(const std::string& suite, std::uint64_t seed) {
    std::vector<std::string> names =
        suite == "all" ? suite_names() : std::vector<std::string>{suite};
    bool all_ok = true;
    for (const std::string& name : names) {
        SuiteResult res = run_suite(name, seed);
        int passed = 0;
        for (const CaseResult& c : res.cases) {
            if (c.passed) {
                ++passed;
                continue;
            }
            std::cout << "FAIL  [" << res.suite << "] " << c.name
                      << (c.detail.empty() ? "" : " — " + c.detail) << "\n";
        }
        std::cout << (passed == static_cast<int>(res.cases.size()) ? "PASS" : "FAIL") << "  "
                  << res.suite << " (" << passed << "/" << res.cases.size() << " cases)\n";
        all_ok = all_ok && res.all_passed();
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App cli{"zipper logic toolkit: compile SKI terms to zipper graphs, "
                 "rewrite them, and check the theory on your desk"};
    cli.require_subcommand(1);

    std::string term_text, input, out_path, trace_path, suite;
    std::string priority_list, tie_break = "first";
    int max_steps = 10000;
    std::uint64_t seed = 0;
    int fuzz_count = 200, fuzz_max_size = 12;
    bool unrestricted_click = false;

    auto* c_compile = cli.add_subcommand("compile", "compile a term to a .zg graph");
    c_compile->add_option("term", term_text, "SKI term, e.g. \"S K K\"")->required();
    c_compile->add_option("-o,--out", out_path, "output path (default stdout)");

    auto* c_reduce = cli.add_subcommand("reduce", "reduce a term or .zg file to normal form");
    c_reduce->add_option("input", input, "term string or .zg path")->required();
    c_reduce->add_option("-o,--out", out_path, "final graph output path");
    c_reduce->add_option("--trace", trace_path, "write the step log here");
    c_reduce->add_option("--priority", priority_list, "comma separated move names");
    c_reduce->add_option("--max-steps", max_steps, "step budget");
    c_reduce->add_option("--seed", seed, "random tie-break seed");
    c_reduce->add_option("--tie-break", tie_break, "first|random");
    c_reduce->add_flag("--unrestricted-click", unrestricted_click,
                       "allow CLICK on a (+) arity below the (-) arity");

    auto* c_verify = cli.add_subcommand("verify", "run a named check suite");
    c_verify->add_option("suite", suite, "all or one of the named suites")->required();
    c_verify->add_option("--seed", seed, "suite seed");

    auto* c_fuzz = cli.add_subcommand("fuzz", "compare graph reduction with the term oracle");
    c_fuzz->add_option("--count", fuzz_count, "number of cases");
    c_fuzz->add_option("--max-size", fuzz_max_size, "term size bound");
    c_fuzz->add_option("--seed", seed, "generator seed");

    auto* c_dot = cli.add_subcommand("dot", "render a term or .zg file as graphviz");
    c_dot->add_option("input", input, "term string or .zg path")->required();
    c_dot->add_option("-o,--out", out_path, "output path (default stdout)");

    auto* c_knots = cli.add_subcommand("knots", "render a term or .zg file as a tangle diagram");
    c_knots->add_option("input", input, "term string or .zg path")->required();
    c_knots->add_option("-o,--out", out_path, "output path (default stdout)");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = cli.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_compile->parsed()) {
            write_output(out_path, emit_zg(compile(parse_term(term_text))));
            return 0;
        }
        if (c_reduce->parsed()) {
            Strategy s = default_strategy();
            if (!priority_list.empty()) {
                s.priority.clear();
                std::stringstream ss(priority_list);
                std::string name;
                while (std::getline(ss, name, ',')) {
                    auto kind = move_from_name(name);
                    if (!kind) throw std::runtime_error("unknown move '" + name + "'");
                    s.priority.push_back(*kind);
                }
            }
            s.max_steps = max_steps;
            s.seed = seed;
            if (tie_break == "random")
                s.tie_break = TieBreak::Random;
            else if (tie_break != "first")
                throw std::runtime_error("bad --tie-break value");
            s.saturated_click = !unrestricted_click;
            Trace tr = reduce(load_input(input), s);
            if (!trace_path.empty()) write_output(trace_path, format_trace(tr));
            write_output(out_path, emit_zg(tr.final));
            return tr.status == ReduceStatus::NormalForm ? 0 : 1;
        }
        if (c_verify->parsed()) return run_verify(suite, seed == 0 ? 20130520 : seed);
        if (c_fuzz->parsed()) {
            std::mt19937_64 rng(seed);
            int failures = 0;
            for (int i = 0; i < fuzz_count; ++i) {
                Term t = random_term(rng, fuzz_max_size);
                NormalForm nf = oracle_nf(t, 500);
                if (nf.fuel_exhausted) {
                    std::cout << "case " << i << ": SKIP (oracle fuel) " << to_string(t) << "\n";
                    continue;
                }
                Trace tr = reduce(compile(t), default_strategy());
                Readback rb = readback(tr.final);
                bool ok = tr.status == ReduceStatus::NormalForm && rb.term &&
                          term_eq(*rb.term, nf.term);
                failures += ok ? 0 : 1;
                std::cout << "case " << i << ": " << (ok ? "OK   " : "FAIL ") << to_string(t)
                          << " -> " << (rb.term ? to_string(*rb.term) : "<" + rb.reason + ">")
                          << "\n";
            }
            return failures == 0 ? 0 : 1;
        }
        if (c_dot->parsed()) {
            write_output(out_path, emit_dot(load_input(input)));
            return 0;
        }
        if (c_knots->parsed()) {
            write_output(out_path, emit_diagram(encode_extended(load_input(input))));
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
