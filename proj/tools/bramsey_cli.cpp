// Command-line front end: witness verification, Zarankiewicz numbers,
// arrowing decisions, BR_m scans and the full reproduction table.

#include <bramsey/bramsey.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

using namespace bramsey;

constexpr int exit_malformed = 2;
constexpr int exit_unknown = 3;

auto read_file(const std::string & path) -> std::string
{
    std::ifstream in(path, std::ios::binary);
    if (! in)
        throw std::runtime_error("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string & path, const std::string & text)
{
    std::ofstream out(path, std::ios::binary);
    if (! out || ! (out << text))
        throw std::runtime_error("cannot write " + path);
}

struct SearchFlags {
    std::string budget = "5e7";
    unsigned workers = 1;
    bool deterministic = true;
    bool no_degree_lemmas = false;
    bool no_edge_window = false;
    bool no_symmetry = false;
    bool no_capacity = false;

    void attach(CLI::App * app)
    {
        app->add_option("--budget", budget, "node budget, e.g. 1000000, 10^6 or 1e6")->capture_default_str();
        app->add_option("--workers", workers, "worker threads (0 = hardware concurrency)")->capture_default_str();
        app->add_flag("--deterministic,!--nondeterministic", deterministic,
                      "identical output for every worker count (default on)");
        app->add_flag("--no-degree-lemmas", no_degree_lemmas, "do not cap X-degrees by the forcing lemmas");
        app->add_flag("--no-edge-window", no_edge_window, "do not restrict |E(G)| by tabulated bounds");
        app->add_flag("--no-symmetry-breaking", no_symmetry, "explore all row and column orders");
        app->add_flag("--no-capacity-bound", no_capacity, "disable pooled subset-count pruning");
    }

    auto config() const -> SearchConfig
    {
        SearchConfig c;
        c.node_budget = parse_budget(budget);
        c.worker_count = workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : workers;
        c.deterministic = deterministic;
        c.use_degree_lemmas = ! no_degree_lemmas;
        c.use_edge_window = ! no_edge_window;
        c.use_symmetry_breaking = ! no_symmetry;
        c.use_capacity_bound = ! no_capacity;
        return c;
    }
};

auto exit_code(Verdict v) -> int
{
    switch (v) {
    case Verdict::arrows:
        return 0;
    case Verdict::not_arrows:
        return 1;
    case Verdict::unknown:
        return exit_unknown;
    }
    return exit_unknown;
}

auto load_witness(const std::string & source) -> WitnessRecord
{
    if (auto w = builtin_witness(source))
        return *w;
    return read_witness_file(read_file(source), source);
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"bipartite Ramsey and Zarankiewicz toolkit"};
    app.require_subcommand(1);

    std::string witness_source;
    auto verify = app.add_subcommand("verify-witness", "check a coloring and its claimed properties");
    verify->add_option("witness", witness_source, "witness file or builtin name")->required();

    std::string dump_name, dump_out;
    auto dump = app.add_subcommand("dump-witness", "print a builtin witness in the witness file format");
    dump->add_option("name", dump_name, "builtin name")->required();
    dump->add_option("-o,--output", dump_out, "write to this file instead of stdout");

    auto list = app.add_subcommand("list-witnesses", "list builtin witness names");

    std::size_t zm = 0, zn = 0, zs = 0, zt = 0;
    bool z_show = false;
    SearchFlags z_flags;
    auto zmax = app.add_subcommand("zmax", "compute z((m,n), K_{s,t})");
    zmax->add_option("m", zm)->required()->check(CLI::PositiveNumber);
    zmax->add_option("n", zn)->required()->check(CLI::PositiveNumber);
    zmax->add_option("s", zs)->required()->check(CLI::PositiveNumber);
    zmax->add_option("t", zt)->required()->check(CLI::PositiveNumber);
    zmax->add_flag("--show-extremal", z_show, "print the extremal graph as a 0/1 matrix");
    z_flags.attach(zmax);

    std::size_t am = 0, an = 0, as1 = 0, at1 = 0, as2 = 0, at2 = 0;
    std::string emit_cnf, witness_out, solver_output;
    bool lex_clauses = false;
    SearchFlags a_flags;
    auto arrow = app.add_subcommand("arrow", "decide K_{m,n} -> (K_{s1,t1}, K_{s2,t2})");
    arrow->add_option("m", am)->required()->check(CLI::PositiveNumber);
    arrow->add_option("n", an)->required()->check(CLI::PositiveNumber);
    arrow->add_option("s1", as1)->required()->check(CLI::PositiveNumber);
    arrow->add_option("t1", at1)->required()->check(CLI::PositiveNumber);
    arrow->add_option("s2", as2)->required()->check(CLI::PositiveNumber);
    arrow->add_option("t2", at2)->required()->check(CLI::PositiveNumber);
    arrow->add_option("--emit-cnf", emit_cnf, "write the DIMACS encoding of the instance");
    arrow->add_flag("--lex-clauses", lex_clauses, "add column-ordering clauses to the emitted CNF");
    arrow->add_option("--witness-out", witness_out, "write a found good coloring to this file");
    arrow->add_option("--solver-output", solver_output,
                      "decide from an external solver's output for the emitted encoding");
    a_flags.attach(arrow);

    std::size_t bm = 0, nmax = 30;
    SearchFlags b_flags;
    auto brm = app.add_subcommand("brm", "scan BR_m(K_{2,2}, K_{4,4})");
    brm->add_option("m", bm)->required()->check(CLI::PositiveNumber);
    brm->add_option("--nmax", nmax, "largest n to try")->capture_default_str()->check(CLI::PositiveNumber);
    b_flags.attach(brm);

    SearchFlags r_flags;
    auto repro = app.add_subcommand("reproduce", "certify the BR_m(K_{2,2}, K_{4,4}) table for m = 2..13");
    r_flags.attach(repro);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        // usage errors share the malformed-input exit code; --help stays 0
        int code = app.exit(e);
        return code == 0 ? 0 : exit_malformed;
    }

    try {
        if (*verify) {
            WitnessRecord w;
            try {
                w = load_witness(witness_source);
            }
            catch (const std::exception & e) {
                std::cerr << "malformed witness: " << e.what() << "\n";
                return exit_malformed;
            }
            auto report = verify_witness(w);
            std::cout << format_report(report);
            return report.good_coloring ? 0 : 1;
        }
        if (*dump) {
            auto w = builtin_witness(dump_name);
            if (! w) {
                std::cerr << "unknown builtin witness '" << dump_name << "'\n";
                return exit_malformed;
            }
            if (dump_out.empty())
                std::cout << write_witness_file(*w);
            else
                write_file(dump_out, write_witness_file(*w));
            return 0;
        }
        if (*list) {
            for (const auto & name : builtin_witness_names())
                std::cout << name << "\n";
            return 0;
        }
        if (*zmax) {
            auto e = z_exact(zm, zn, zs, zt, z_flags.config());
            std::cout << format_value(e) << "\n";
            std::cout << "z((" << zm << "," << zn << "), K_{" << zs << "," << zt << "}) nodes=" << e.nodes << "\n";
            if (auto cited = bundled_table().lookup(zm, zn, zs, zt))
                std::cout << "cited upper bound " << cited->upper << " [" << cited->citation << "]\n";
            if (z_show && e.extremal)
                std::cout << write_matrix(*e.extremal);
            return e.provenance == Provenance::computed_exact ? 0 : exit_unknown;
        }
        if (*arrow) {
            BicliqueShape s1(as1, at1), s2(as2, at2);
            std::optional<CnfInstance> cnf;
            if (! emit_cnf.empty() || ! solver_output.empty())
                cnf = encode(am, an, s1, s2, {lex_clauses});
            if (! emit_cnf.empty()) {
                write_file(emit_cnf, write_dimacs(*cnf));
                std::cout << "cnf " << emit_cnf << " digest=" << instance_digest(*cnf) << " variables="
                          << cnf->variable_count << " clauses=" << cnf->clauses.size() << "\n";
            }
            ArrowDecision d;
            if (! solver_output.empty()) {
                std::string text;
                try {
                    text = read_file(solver_output);
                }
                catch (const std::exception & e) {
                    std::cerr << e.what() << "\n";
                    return exit_malformed;
                }
                d = decision_from_solver(*cnf, read_solver_output(text));
            }
            else
                d = arrows(am, an, s1, s2, a_flags.config());
            if (d.witness() && ! witness_out.empty()) {
                WitnessRecord w{"arrow-" + std::to_string(am) + "x" + std::to_string(an), *d.witness(), s1, s2, {},
                                std::get<WitnessCertificate>(d.certificate).source};
                write_file(witness_out, write_witness_file(w));
                std::cout << format_decision(d, witness_out);
            }
            else
                std::cout << format_decision(d);
            return exit_code(d.verdict);
        }
        if (*brm) {
            auto r = br_m(bm, {2, 2}, {4, 4}, nmax, b_flags.config());
            for (const auto & d : r.decisions) {
                auto text = format_decision(d, "omitted");
                std::cout << text.substr(0, text.find('\n') + 1);
            }
            std::cout << std::string(polarity_note) << "\n";
            if (r.least_n)
                std::cout << "BR_" << bm << "(K_{2,2}, K_{4,4}) = " << *r.least_n
                          << (r.unknown_tainted ? " (unknown-tainted: some smaller n undecided)" : "") << "\n";
            else if (r.unknown_tainted)
                std::cout << "undecided up to n=" << nmax << " (unknown-tainted)\n";
            else
                std::cout << "no n <= " << nmax << " arrows; good colorings certified for every n scanned\n";
            return r.least_n ? 0 : (r.unknown_tainted ? exit_unknown : 1);
        }
        if (*repro) {
            auto rows = reproduce(r_flags.config());
            bool all = true;
            for (const auto & row : rows) {
                std::cout << format_row(row) << "\n";
                all = all && row.verdict == RowVerdict::reproduced;
            }
            std::cout << std::string(polarity_note) << "\n";
            return all ? 0 : exit_unknown;
        }
    }
    catch (const ParseError & e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_malformed;
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_malformed;
    }
    return 0;
}
