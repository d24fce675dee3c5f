#pragma once

#include <bramsey/arrowing.hpp>
#include <bramsey/bigraph.hpp>
#include <bramsey/graph_io.hpp>
#include <bramsey/witnesses.hpp>

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bramsey {

/// CNF whose models are exactly the good colorings of K_{m,n}.  Variable
/// var(i,j) = i*n + j + 1 is true iff edge (x_i, y_j) is in G.  Optional
/// column-ordering clauses add auxiliary variables after the m*n edge
/// variables.
struct CnfInstance {
    std::size_t m = 0, n = 0;
    BicliqueShape shape1, shape2;
    bool lex_columns = false;
    std::size_t variable_count = 0;
    std::vector<std::vector<int>> clauses;
    std::vector<std::string> notes;

    auto edge_variables() const -> std::size_t { return m * n; }
};

inline auto edge_var(std::size_t i, std::size_t j, std::size_t n) -> int { return static_cast<int>(i * n + j + 1); }

struct EncodeOptions {
    /// Require columns to be lexicographically nonincreasing (row 0 most
    /// significant).  Column permutations preserve good colorings, so this
    /// keeps satisfiability unchanged.
    bool lex_columns = false;
};

namespace detail {

    /// Calls f(indices) for every k-subset of {0..n-1} in lexicographic order.
    template <typename F>
    void for_each_subset(std::size_t n, std::size_t k, F && f)
    {
        if (k > n)
            return;
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i)
            idx[i] = i;
        while (true) {
            f(idx);
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == n - k + i - 1)
                --i;
            if (i == 0)
                return;
            ++idx[i - 1];
            for (std::size_t j = i; j < k; ++j)
                idx[j] = idx[j - 1] + 1;
        }
    }

    inline auto shape_text(const BicliqueShape & s) -> std::string
    {
        return std::to_string(s.s) + "," + std::to_string(s.t);
    }

} // namespace detail

inline auto encode(std::size_t m, std::size_t n, const BicliqueShape & shape1, const BicliqueShape & shape2,
                   const EncodeOptions & options = {}) -> CnfInstance
{
    CnfInstance cnf;
    cnf.m = m;
    cnf.n = n;
    cnf.shape1 = shape1;
    cnf.shape2 = shape2;
    cnf.lex_columns = options.lex_columns;
    cnf.variable_count = m * n;

    auto family = [&](const BicliqueShape & shape, bool negative) {
        detail::for_each_subset(m, shape.s, [&](const std::vector<std::size_t> & rows) {
            detail::for_each_subset(n, shape.t, [&](const std::vector<std::size_t> & cols) {
                std::vector<int> clause;
                clause.reserve(rows.size() * cols.size());
                for (auto i : rows)
                    for (auto j : cols)
                        clause.push_back(negative ? -edge_var(i, j, n) : edge_var(i, j, n));
                cnf.clauses.push_back(std::move(clause));
            });
        });
    };

    if (shape1.s > m || shape1.t > n)
        cnf.notes.push_back("shape1 " + to_string(shape1) + " does not fit: any G avoids it");
    else
        family(shape1, true);
    if (shape2.s > m || shape2.t > n)
        cnf.notes.push_back("shape2 " + to_string(shape2) +
                            " unsatisfiable-by-size: any G avoiding shape1 is a good coloring");
    else
        family(shape2, false);

    if (options.lex_columns && m > 0) {
        // e_k: columns j and j+1 agree on rows 0..k-1; e_0 is true.
        for (std::size_t j = 0; j + 1 < n; ++j) {
            std::vector<int> eq(m + 1, 0);
            for (std::size_t k = 1; k < m; ++k)
                eq[k] = static_cast<int>(++cnf.variable_count);
            for (std::size_t k = 0; k < m; ++k) {
                int a = edge_var(k, j, n), b = edge_var(k, j + 1, n);
                auto guarded = [&](std::vector<int> c) {
                    if (k > 0)
                        c.insert(c.begin(), -eq[k]);
                    cnf.clauses.push_back(std::move(c));
                };
                guarded({a, -b});
                if (k + 1 < m) {
                    guarded({-a, -b, eq[k + 1]});
                    guarded({a, b, eq[k + 1]});
                }
            }
        }
        cnf.notes.push_back("lexicographic column-ordering clauses added");
    }
    return cnf;
}

/// "fnv1a64-<bytes>-<hex>" over the header line and clause lines.
inline auto instance_digest(const CnfInstance & cnf) -> std::string
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    std::uint64_t length = 0;
    auto feed = [&](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        length += s.size();
    };
    feed("p cnf " + std::to_string(cnf.variable_count) + " " + std::to_string(cnf.clauses.size()) + "\n");
    std::string line;
    for (const auto & clause : cnf.clauses) {
        line.clear();
        for (auto lit : clause) {
            line += std::to_string(lit);
            line += ' ';
        }
        line += "0\n";
        feed(line);
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
    return "fnv1a64-" + std::to_string(length) + "-" + hex;
}

inline auto write_dimacs(const CnfInstance & cnf) -> std::string
{
    std::ostringstream out;
    out << "c meta m=" << cnf.m << " n=" << cnf.n << " shape1=" << detail::shape_text(cnf.shape1)
        << " shape2=" << detail::shape_text(cnf.shape2) << " varmap=rowmajor lex=" << (cnf.lex_columns ? 1 : 0)
        << "\n";
    out << "c var(i,j) = i*n + j + 1 is true iff edge (x_i, y_j) is in G\n";
    for (const auto & note : cnf.notes)
        out << "c note " << note << "\n";
    out << "c digest " << instance_digest(cnf) << "\n";
    out << "p cnf " << cnf.variable_count << " " << cnf.clauses.size() << "\n";
    for (const auto & clause : cnf.clauses) {
        for (auto lit : clause)
            out << lit << ' ';
        out << "0\n";
    }
    return out.str();
}

/// Parses DIMACS CNF.  The "c meta" line, when present, restores the host
/// dimensions and shapes.
inline auto read_dimacs(std::string_view text) -> CnfInstance
{
    CnfInstance cnf;
    std::optional<std::size_t> declared_clauses;
    std::vector<int> current;
    for (const auto & [number, line] : detail::split_lines(text)) {
        auto tok = detail::tokens(line);
        if (tok.empty())
            continue;
        if (tok[0] == "c") {
            if (tok.size() >= 2 && tok[1] == "meta") {
                for (std::size_t k = 2; k < tok.size(); ++k) {
                    auto eq = tok[k].find('=');
                    if (eq == std::string::npos)
                        continue;
                    auto key = tok[k].substr(0, eq), value = tok[k].substr(eq + 1);
                    auto shape = [&] {
                        auto comma = value.find(',');
                        if (comma == std::string::npos)
                            throw ParseError(number, "bad shape '" + value + "'");
                        return BicliqueShape(detail::parse_count(value.substr(0, comma), number),
                                             detail::parse_count(value.substr(comma + 1), number));
                    };
                    if (key == "m")
                        cnf.m = detail::parse_count(value, number);
                    else if (key == "n")
                        cnf.n = detail::parse_count(value, number);
                    else if (key == "shape1")
                        cnf.shape1 = shape();
                    else if (key == "shape2")
                        cnf.shape2 = shape();
                    else if (key == "lex")
                        cnf.lex_columns = value == "1";
                }
            }
            else if (tok.size() >= 2 && tok[1] == "note") {
                auto pos = line.find("note");
                cnf.notes.push_back(line.substr(pos + 5));
            }
            continue;
        }
        if (tok[0] == "p") {
            if (tok.size() != 4 || tok[1] != "cnf")
                throw ParseError(number, "header must be 'p cnf <vars> <clauses>'");
            cnf.variable_count = detail::parse_count(tok[2], number);
            declared_clauses = detail::parse_count(tok[3], number);
            continue;
        }
        if (! declared_clauses)
            throw ParseError(number, "clause before 'p cnf' header");
        for (const auto & t : tok) {
            char * end = nullptr;
            long v = std::strtol(t.c_str(), &end, 10);
            if (end == t.c_str() || *end != '\0')
                throw ParseError(number, "bad literal '" + t + "'");
            if (v == 0) {
                cnf.clauses.push_back(std::move(current));
                current.clear();
                continue;
            }
            if (static_cast<std::size_t>(std::labs(v)) > cnf.variable_count)
                throw ParseError(number, "literal " + t + " exceeds variable count");
            current.push_back(static_cast<int>(v));
        }
    }
    if (! declared_clauses)
        throw ParseError(1, "missing 'p cnf' header");
    if (! current.empty())
        throw ParseError(0, "last clause is not 0-terminated");
    if (cnf.clauses.size() != *declared_clauses)
        throw ParseError(0, "header declares " + std::to_string(*declared_clauses) + " clauses, found " +
                                std::to_string(cnf.clauses.size()));
    return cnf;
}

enum class SolverStatus { sat, unsat, unknown };

inline auto to_string(SolverStatus s) -> std::string
{
    switch (s) {
    case SolverStatus::sat:
        return "SAT";
    case SolverStatus::unsat:
        return "UNSAT";
    case SolverStatus::unknown:
        return "UNKNOWN";
    }
    return "?";
}

struct SolverResult {
    SolverStatus status = SolverStatus::unknown;
    /// model[v - 1] is the value of variable v.
    std::vector<bool> model;
    std::string diagnostic;
};

/// Accepts the competition output format: "s SATISFIABLE" or
/// "s UNSATISFIABLE", "v ..." value lines ending in 0, "c" comments.
/// Anything else yields unknown with a diagnostic instead of an exception.
inline auto read_solver_output(std::string_view text) -> SolverResult
{
    SolverResult r;
    auto fail = [](std::string why) { return SolverResult{SolverStatus::unknown, {}, std::move(why)}; };
    std::optional<SolverStatus> status;
    bool terminated = false;
    std::vector<int> literals;
    for (const auto & [number, line] : detail::split_lines(text)) {
        auto tok = detail::tokens(line);
        if (tok.empty() || tok[0] == "c")
            continue;
        auto where = "line " + std::to_string(number) + ": ";
        if (tok[0] == "s") {
            if (status)
                return fail(where + "second status line");
            if (tok.size() == 2 && tok[1] == "SATISFIABLE")
                status = SolverStatus::sat;
            else if (tok.size() == 2 && tok[1] == "UNSATISFIABLE")
                status = SolverStatus::unsat;
            else if (tok.size() == 2 && tok[1] == "UNKNOWN")
                status = SolverStatus::unknown;
            else
                return fail(where + "unrecognised status '" + line + "'");
            continue;
        }
        if (tok[0] == "v") {
            if (terminated)
                return fail(where + "value line after terminating 0");
            for (std::size_t k = 1; k < tok.size(); ++k) {
                char * end = nullptr;
                long v = std::strtol(tok[k].c_str(), &end, 10);
                if (end == tok[k].c_str() || *end != '\0')
                    return fail(where + "bad literal '" + tok[k] + "'");
                if (v == 0) {
                    terminated = true;
                    if (k + 1 != tok.size())
                        return fail(where + "literals after terminating 0");
                    break;
                }
                literals.push_back(static_cast<int>(v));
            }
            continue;
        }
        return fail(where + "unexpected line '" + line + "'");
    }
    if (! status)
        return fail("no status line");
    r.status = *status;
    if (r.status == SolverStatus::unknown) {
        r.diagnostic = "solver reported UNKNOWN";
        return r;
    }
    if (r.status == SolverStatus::unsat) {
        if (! literals.empty())
            return fail("value lines given for an UNSATISFIABLE result");
        return r;
    }
    if (! terminated)
        return fail("SATISFIABLE without a 0-terminated model");
    std::size_t vars = 0;
    for (auto lit : literals)
        vars = std::max(vars, static_cast<std::size_t>(std::abs(lit)));
    r.model.assign(vars, false);
    std::vector<bool> seen(vars, false);
    for (auto lit : literals) {
        auto v = static_cast<std::size_t>(std::abs(lit)) - 1;
        if (seen[v] && r.model[v] != (lit > 0))
            return fail("variable " + std::to_string(v + 1) + " assigned both values");
        seen[v] = true;
        r.model[v] = lit > 0;
    }
    return r;
}

inline auto write_solver_output(const SolverResult & r) -> std::string
{
    switch (r.status) {
    case SolverStatus::unsat:
        return "s UNSATISFIABLE\n";
    case SolverStatus::unknown:
        return "s UNKNOWN\n";
    case SolverStatus::sat:
        break;
    }
    std::string out = "s SATISFIABLE\nv";
    for (std::size_t v = 0; v < r.model.size(); ++v) {
        out += ' ';
        out += std::to_string(r.model[v] ? static_cast<long>(v + 1) : -static_cast<long>(v + 1));
    }
    return out + " 0\n";
}

/// Edge (i,j) present iff var(i,j) is true.  The model must assign exactly
/// the instance's variables.
inline auto decode(const CnfInstance & cnf, const std::vector<bool> & model) -> BipartiteGraph
{
    if (model.size() != cnf.variable_count)
        throw std::invalid_argument("model assigns " + std::to_string(model.size()) + " variables, instance has " +
                                    std::to_string(cnf.variable_count));
    BipartiteGraph g(cnf.m, cnf.n);
    for (std::size_t i = 0; i < cnf.m; ++i)
        for (std::size_t j = 0; j < cnf.n; ++j)
            if (model[static_cast<std::size_t>(edge_var(i, j, cnf.n)) - 1])
                g.add_edge(i, j);
    return g;
}

/// The assignment describing g, with auxiliary variables set to their
/// intended meaning.
inline auto assignment_of(const CnfInstance & cnf, const BipartiteGraph & g) -> std::vector<bool>
{
    if (g.m() != cnf.m || g.n() != cnf.n)
        throw std::invalid_argument("graph dimensions do not match the instance");
    std::vector<bool> model(cnf.variable_count, false);
    for (std::size_t i = 0; i < cnf.m; ++i)
        g.row(i).for_each([&](std::size_t j) { model[static_cast<std::size_t>(edge_var(i, j, cnf.n)) - 1] = true; });
    if (cnf.lex_columns && cnf.m > 0) {
        std::size_t next = cnf.m * cnf.n;
        for (std::size_t j = 0; j + 1 < cnf.n; ++j) {
            bool equal = true;
            for (std::size_t k = 1; k < cnf.m; ++k) {
                equal = equal && g.row(k - 1).test(j) == g.row(k - 1).test(j + 1);
                model[next++] = equal;
            }
        }
    }
    return model;
}

/// Index of the first clause the model falsifies.
inline auto first_violated_clause(const CnfInstance & cnf, const std::vector<bool> & model) -> std::optional<std::size_t>
{
    for (std::size_t c = 0; c < cnf.clauses.size(); ++c) {
        bool satisfied = false;
        for (auto lit : cnf.clauses[c]) {
            auto v = static_cast<std::size_t>(std::abs(lit)) - 1;
            if (v < model.size() && model[v] == (lit > 0)) {
                satisfied = true;
                break;
            }
        }
        if (! satisfied)
            return c;
    }
    return std::nullopt;
}

/// Turns a solver answer into a decision.  A model is accepted only if it
/// decodes to a verified good coloring; UNSAT is accepted with the instance
/// digest attached.
inline auto decision_from_solver(const CnfInstance & cnf, const SolverResult & result) -> ArrowDecision
{
    ArrowDecision d;
    d.m = cnf.m;
    d.n = cnf.n;
    d.shape1 = cnf.shape1;
    d.shape2 = cnf.shape2;
    auto digest = instance_digest(cnf);
    auto reject = [&](std::string why) {
        d.verdict = Verdict::unknown;
        d.diagnostics = UnknownDiagnostics{0, 0, "solver answer rejected: " + why};
        return d;
    };
    switch (result.status) {
    case SolverStatus::unknown:
        return reject(result.diagnostic.empty() ? "no verdict" : result.diagnostic);
    case SolverStatus::unsat:
        d.verdict = Verdict::arrows;
        d.certificate = ExternalSatCertificate{digest, "UNSAT"};
        d.notes.push_back("instance digest " + digest + " recorded for the UNSAT claim");
        return d;
    case SolverStatus::sat:
        break;
    }
    if (result.model.size() < cnf.edge_variables())
        return reject("model shorter than the " + std::to_string(cnf.edge_variables()) + " edge variables");
    std::vector<bool> model(result.model.begin(), result.model.end());
    model.resize(cnf.variable_count, false);
    BipartiteGraph g = decode(cnf, model);
    WitnessRecord w{"external-sat", g, cnf.shape1, cnf.shape2, {}, "solver model for " + digest};
    auto report = verify_witness(w);
    if (! report.good_coloring)
        return reject("decoded graph is not a good coloring");
    d.verdict = Verdict::not_arrows;
    d.certificate = WitnessCertificate{std::move(g), "external-sat " + digest};
    return d;
}

/// Small DPLL solver with unit propagation, for cross-checking encodings on
/// desk-sized instances.  Returns unknown once `decision_budget` branchings
/// have been spent.
class Dpll {
public:
    explicit Dpll(const CnfInstance & cnf) : cnf_(cnf), value_(cnf.variable_count + 1, 0) {}

    auto solve(std::uint64_t decision_budget = 10'000'000) -> SolverResult
    {
        budget_ = decision_budget;
        SolverResult r;
        auto outcome = search();
        if (outcome == 1) {
            r.status = SolverStatus::sat;
            r.model.resize(cnf_.variable_count);
            for (std::size_t v = 1; v <= cnf_.variable_count; ++v)
                r.model[v - 1] = value_[v] > 0;
        }
        else if (outcome == 0)
            r.status = SolverStatus::unsat;
        else
            r.diagnostic = "decision budget exhausted";
        return r;
    }

private:
    auto lit_value(int lit) const -> int
    {
        int v = value_[static_cast<std::size_t>(std::abs(lit))];
        return lit > 0 ? v : -v;
    }

    /// Assigns implied literals; false on conflict.
    auto propagate(std::vector<int> & trail) -> bool
    {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto & clause : cnf_.clauses) {
                int unassigned = 0, last = 0;
                bool satisfied = false;
                for (auto lit : clause) {
                    int v = lit_value(lit);
                    if (v > 0) {
                        satisfied = true;
                        break;
                    }
                    if (v == 0) {
                        ++unassigned;
                        last = lit;
                    }
                }
                if (satisfied)
                    continue;
                if (unassigned == 0)
                    return false;
                if (unassigned == 1) {
                    value_[static_cast<std::size_t>(std::abs(last))] = last > 0 ? 1 : -1;
                    trail.push_back(std::abs(last));
                    changed = true;
                }
            }
        }
        return true;
    }

    /// 1 sat, 0 unsat, -1 out of budget.
    auto search() -> int
    {
        std::vector<int> trail;
        auto undo = [&] {
            for (auto v : trail)
                value_[static_cast<std::size_t>(v)] = 0;
        };
        if (! propagate(trail)) {
            undo();
            return 0;
        }
        std::size_t branch = 0;
        for (std::size_t v = 1; v <= cnf_.variable_count && ! branch; ++v)
            if (value_[v] == 0)
                branch = v;
        if (! branch)
            return 1;
        for (int phase : {1, -1}) {
            if (budget_ == 0) {
                undo();
                return -1;
            }
            --budget_;
            value_[branch] = phase;
            auto r = search();
            if (r == 1)
                return 1;
            value_[branch] = 0;
            if (r == -1) {
                undo();
                return -1;
            }
        }
        undo();
        return 0;
    }

    const CnfInstance & cnf_;
    std::vector<int> value_;
    std::uint64_t budget_ = 0;
};

} // namespace bramsey
