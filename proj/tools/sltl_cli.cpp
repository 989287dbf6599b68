// sltl: command-line front end for the SLTL solver and translations.

#include "sltl/errors.hpp"
#include "sltl/json_io.hpp"
#include "sltl/parser.hpp"
#include "sltl/solver.hpp"
#include "sltl/syntax.hpp"
#include "sltl/translate.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

namespace {

enum Exit : int {
    kSat = 0,
    kUnsat = 1,
    kUnknown = 2,
    kOutOfFragment = 3,
    kUsage = 64,
    kData = 65,
    kNoInput = 66,
    kSoftware = 70,
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    if (path == "-")
        return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read " + path);
    return {std::istreambuf_iterator<char>(in), {}};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text << '\n'))
        throw IoError("cannot write " + path);
}

struct FormulaInput {
    std::string text;
    std::string file;
    bool allow_reserved = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("formula", text, "Formula text, or - for stdin");
        cmd->add_option("--file", file, "Read the formula from a file (- for stdin)");
        cmd->add_flag("--allow-reserved", allow_reserved, "Accept $-prefixed names produced by translate");
    }

    sltl::Formula read() const {
        if (!text.empty() && !file.empty())
            throw UsageError("give the formula either as an argument or with --file, not both");
        std::string src;
        if (!file.empty())
            src = slurp(file);
        else if (text == "-")
            src = slurp("-");
        else if (!text.empty())
            src = text;
        else
            throw UsageError("no formula given");
        return sltl::parse(src, {allow_reserved});
    }
};

std::size_t env_size(const char* name, std::size_t fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v)
        return fallback;
    try {
        return std::stoull(v);
    } catch (const std::exception&) {
        throw UsageError(std::string("environment variable ") + name + " must be a non-negative integer");
    }
}

sltl::SearchBounds parse_bounds(const std::string& text) {
    std::istringstream in(text);
    std::size_t k = 0, p = 0, q = 0;
    char c1 = 0, c2 = 0;
    if (!(in >> k >> c1 >> p >> c2 >> q) || c1 != ',' || c2 != ',' || !in.eof())
        throw UsageError("--bounds expects K,P,Q (traces, prefix, period), got '" + text + "'");
    sltl::SearchBounds b{k, p, q, {}};
    try {
        b.validate();
    } catch (const sltl::Error& e) {
        throw UsageError(std::string("--bounds: ") + e.what());
    }
    return b;
}

void print_witness(std::ostream& os, const sltl::Witness& w) {
    const auto& m = w.model;
    os << "witness: " << m.traces.size() << " traces, prefix " << m.prefix_len << ", period " << m.period_len
       << ", designated " << w.designated << '\n';
    for (const auto& t : m.traces) {
        os << "  " << t.id << ':';
        for (std::size_t i = 0; i < m.length(); ++i) {
            os << (i == m.prefix_len ? " | {" : " {");
            bool first = true;
            for (const auto& p : t.trace.at(i)) {
                os << (first ? "" : ",") << p;
                first = false;
            }
            os << '}';
        }
        os << '\n';
    }
    for (const auto& [s, ids] : m.lambda) {
        os << "  " << sltl::to_string(s) << " ->";
        for (const auto& id : ids)
            os << ' ' << id;
        os << '\n';
    }
}

int exit_for(sltl::Status s) {
    switch (s) {
    case sltl::Status::Sat:
        return kSat;
    case sltl::Status::Unsat:
        return kUnsat;
    case sltl::Status::Unknown:
        return kUnknown;
    case sltl::Status::OutOfFragment:
        return kOutOfFragment;
    }
    return kSoftware;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Satisfiability and translations for standpoint LTL"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    // solve
    FormulaInput solve_in;
    bool strict = false, as_json = false;
    std::string bounds_text, witness_out, dump_path;
    std::size_t jobs = 1;
    auto* solve = app.add_subcommand("solve", "Decide satisfiability; exit 0 sat, 1 unsat, 2 unknown, 3 out of fragment");
    solve_in.attach(solve);
    solve->add_flag("--fragment-strict", strict, "Refuse inputs outside LTL+PSL instead of running the bounded search");
    solve->add_option("--bounds", bounds_text, "Bounded search limits K,P,Q: traces, prefix, period");
    solve->add_flag("--json", as_json, "Print the verdict as JSON");
    solve->add_option("--witness-out", witness_out, "Write the witness JSON here when satisfiable");
    solve->add_option("--jobs", jobs, "Partitions decided in parallel")->check(CLI::PositiveNumber);
    solve->add_option("--dump-automaton", dump_path, "Write the explored automaton graph here");

    // translate
    FormulaInput tr_in;
    std::string target;
    auto* translate = app.add_subcommand("translate", "Print a translated formula");
    tr_in.attach(translate);
    translate->add_option("--to", target, "Target: ptls5, sltl, s5 or strict-until")
        ->required()
        ->check(CLI::IsMember({"ptls5", "sltl", "s5", "strict-until"}));

    // gen
    std::string family;
    long long gen_n = 0;
    auto* gen = app.add_subcommand("gen", "Print a generated formula");
    gen->add_option("family", family, "counter or phi-c")->required()->check(CLI::IsMember({"counter", "phi-c"}));
    gen->add_option("n", gen_n, "Number of counter bits (>= 1)")->required();

    // check
    FormulaInput check_in;
    std::string witness_path;
    auto* check = app.add_subcommand("check", "Evaluate a witness; exit 0 if it satisfies the formula, 1 if not");
    check_in.attach(check);
    check->add_option("--witness", witness_path, "Witness JSON file (- for stdin)")->required();

    // classify
    FormulaInput cls_in;
    auto* classify = app.add_subcommand("classify", "Print the fragment: PSL, PureLTL, LtlPsl or FullSLTL");
    cls_in.attach(classify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }

    try {
        if (*solve) {
            sltl::Formula f = solve_in.read();
            sltl::SolveOptions opts;
            if (!bounds_text.empty())
                opts.bounds = parse_bounds(bounds_text);
            opts.fragment_strict = strict;
            opts.jobs = jobs;
            opts.automaton.max_states = env_size("SLTL_MAX_STATES", opts.automaton.max_states);
            opts.oracle_limits.max_vars = env_size("SLTL_ORACLE_MAX_VARS", opts.oracle_limits.max_vars);
            if (std::getenv("SLTL_ORACLE_MAX_CONFLICTS"))
                opts.oracle_limits.max_conflicts =
                    static_cast<std::int64_t>(env_size("SLTL_ORACLE_MAX_CONFLICTS", 0));
            std::ofstream dump;
            if (!dump_path.empty()) {
                dump.open(dump_path);
                if (!dump)
                    throw IoError("cannot write " + dump_path);
                opts.automaton.dump = &dump;
            }
            sltl::Verdict v = sltl::solve(f, opts);
            if (v.witness && !witness_out.empty())
                write_file(witness_out, sltl::witness_to_json(*v.witness, 2));
            if (as_json) {
                std::cout << sltl::verdict_to_json(v, 2) << '\n';
            } else {
                std::cout << sltl::to_string(v.status);
                if (v.engine != sltl::Engine::None)
                    std::cout << " (" << sltl::to_string(v.engine) << ')';
                std::cout << '\n';
                if (v.partition && !(v.partition->i_plus.empty() && v.partition->i_minus.empty())) {
                    std::cout << "partition:";
                    for (const auto& [a, b] : v.partition->i_plus)
                        std::cout << ' ' << sltl::to_string(a) << " <= " << sltl::to_string(b) << ';';
                    for (const auto& [a, b] : v.partition->i_minus)
                        std::cout << " !(" << sltl::to_string(a) << " <= " << sltl::to_string(b) << ");";
                    std::cout << '\n';
                }
                if (v.bounds)
                    std::cout << "bounds: " << v.bounds->max_traces << ',' << v.bounds->max_prefix << ','
                              << v.bounds->max_period << '\n';
                if (!v.details.empty())
                    std::cout << v.details << '\n';
                if (v.translation)
                    std::cout << "translation: " << *v.translation << '\n';
                if (v.witness)
                    print_witness(std::cout, *v.witness);
            }
            return exit_for(v.status);
        }
        if (*translate) {
            sltl::Formula f = tr_in.read();
            sltl::Formula out = target == "ptls5" ? sltl::sltl_to_ptls5(f)
                                : target == "sltl" ? sltl::t1(f)
                                : target == "s5"   ? sltl::psl_to_s5(f)
                                                   : sltl::until_to_strict(f);
            std::cout << out << '\n';
            return 0;
        }
        if (*gen) {
            if (gen_n < 1)
                throw UsageError("gen: n must be at least 1");
            auto n = static_cast<std::size_t>(gen_n);
            std::cout << (family == "counter" ? sltl::gen_counter(n) : sltl::gen_phi_c(n)) << '\n';
            return 0;
        }
        if (*check) {
            sltl::Formula f = check_in.read();
            sltl::Witness w;
            try {
                w = sltl::witness_from_json(slurp(witness_path));
            } catch (const sltl::ModelError& e) {
                std::cerr << "sltl: " << e.what() << '\n';
                return kUsage;
            }
            bool ok = false;
            try {
                ok = sltl::check_witness(f, w.model, w.designated);
            } catch (const sltl::EvalError& e) {
                std::cerr << "sltl: witness does not interpret the formula: " << e.what() << '\n';
            }
            std::cout << (ok ? "valid" : "invalid") << '\n';
            return ok ? 0 : 1;
        }
        if (*classify) {
            std::cout << sltl::to_string(sltl::classify(cls_in.read())) << '\n';
            return 0;
        }
    } catch (const sltl::ParseError& e) {
        std::cerr << "sltl: parse error at " << e.line() << ':' << e.column() << ": " << e.message() << '\n';
        return kData;
    } catch (const UsageError& e) {
        std::cerr << "sltl: " << e.what() << '\n';
        return kUsage;
    } catch (const IoError& e) {
        std::cerr << "sltl: " << e.what() << '\n';
        return kNoInput;
    } catch (const sltl::ResourceError& e) {
        std::cerr << "sltl: resource limit '" << e.limit() << "' reached: " << e.what() << '\n';
        return kSoftware;
    } catch (const sltl::FragmentError& e) {
        std::cerr << "sltl: " << e.what() << '\n';
        return kData;
    } catch (const sltl::Error& e) {
        std::cerr << "sltl: " << e.what() << '\n';
        return kSoftware;
    }
    return kUsage;
}
