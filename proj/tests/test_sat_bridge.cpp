#include "oracles.hpp"

#include <bramsey/arrowing.hpp>
#include <bramsey/sat_bridge.hpp>
#include <bramsey/witnesses.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace bramsey;

namespace {

const BicliqueShape k22{2, 2}, k44{4, 4};

} // namespace

TEST(SatBridge, EncodeFiveByTwentyFive)
{
    auto cnf = encode(5, 25, k22, k44);
    EXPECT_EQ(cnf.variable_count, 125u);
    // C(5,2)C(25,2) negative clauses, then C(5,4)C(25,4) positive ones
    EXPECT_EQ(cnf.clauses.size(), 3000u + 63250u);
    EXPECT_EQ(cnf.clauses.front(), (std::vector<int>{-1, -2, -26, -27}));
    EXPECT_EQ(cnf.clauses.back().size(), 16u);
    EXPECT_GT(cnf.clauses.back().front(), 0);
    EXPECT_TRUE(cnf.notes.empty());

    auto w = witness_5_25().graph;
    EXPECT_FALSE(first_violated_clause(cnf, assignment_of(cnf, w)));
    auto bad = w;
    bad.add_edge(0, 24);
    bad.add_edge(1, 24);
    EXPECT_TRUE(first_violated_clause(cnf, assignment_of(cnf, bad)));
}

TEST(SatBridge, VariableMapIsRowMajor)
{
    EXPECT_EQ(edge_var(0, 0, 25), 1);
    EXPECT_EQ(edge_var(1, 0, 25), 26);
    EXPECT_EQ(edge_var(4, 24, 25), 125);
}

TEST(SatBridge, VacuousShapesAreNoted)
{
    auto cnf = encode(3, 10, k22, k44);
    EXPECT_EQ(cnf.clauses.size(), 3u * 45u);
    ASSERT_EQ(cnf.notes.size(), 1u);
    EXPECT_NE(cnf.notes[0].find("unsatisfiable-by-size"), std::string::npos);
    auto none = encode(1, 1, k22, k44);
    EXPECT_TRUE(none.clauses.empty());
    EXPECT_EQ(none.notes.size(), 2u);
}

TEST(SatBridge, DimacsRoundTripAndDigest)
{
    for (bool lex : {false, true}) {
        auto cnf = encode(4, 6, k22, {3, 3}, {lex});
        auto text = write_dimacs(cnf);
        EXPECT_EQ(text.substr(0, 11), "c meta m=4 ");
        EXPECT_NE(text.find("c digest " + instance_digest(cnf)), std::string::npos);
        auto back = read_dimacs(text);
        EXPECT_EQ(back.m, 4u);
        EXPECT_EQ(back.n, 6u);
        EXPECT_EQ(back.shape1, k22);
        EXPECT_EQ(back.shape2, (BicliqueShape{3, 3}));
        EXPECT_EQ(back.lex_columns, lex);
        EXPECT_EQ(back.variable_count, cnf.variable_count);
        EXPECT_EQ(back.clauses, cnf.clauses);
        EXPECT_EQ(back.notes, cnf.notes);
        EXPECT_EQ(instance_digest(back), instance_digest(cnf));
        EXPECT_EQ(write_dimacs(back), text);
    }
    auto a = instance_digest(encode(4, 6, k22, {3, 3}));
    EXPECT_EQ(a.substr(0, 8), "fnv1a64-");
    EXPECT_EQ(a, instance_digest(encode(4, 6, k22, {3, 3})));
    EXPECT_NE(a, instance_digest(encode(4, 7, k22, {3, 3})));
}

TEST(SatBridge, DimacsErrors)
{
    EXPECT_THROW(read_dimacs("1 2 0\n"), ParseError);
    EXPECT_THROW(read_dimacs("p cnf 2 1\n1 3 0\n"), ParseError);
    EXPECT_THROW(read_dimacs("p cnf 2 2\n1 2 0\n"), ParseError);
    EXPECT_THROW(read_dimacs("p cnf 2 1\n1 2\n"), ParseError);
    EXPECT_THROW(read_dimacs("p cnf 2 1\n1 x 0\n"), ParseError);
    EXPECT_THROW(read_dimacs("c only comments\n"), ParseError);
    EXPECT_THROW(read_dimacs("c meta shape1=22\np cnf 1 0\n"), ParseError);
}

TEST(SatBridge, SolverOutputParsing)
{
    auto sat = read_solver_output("c hello\ns SATISFIABLE\nv 1 -2\nv 3 0\n");
    EXPECT_EQ(sat.status, SolverStatus::sat);
    EXPECT_EQ(sat.model, (std::vector<bool>{true, false, true}));
    EXPECT_EQ(read_solver_output(write_solver_output(sat)).model, sat.model);

    EXPECT_EQ(read_solver_output("s UNSATISFIABLE\n").status, SolverStatus::unsat);
    EXPECT_EQ(read_solver_output(write_solver_output({SolverStatus::unsat, {}, ""})).status, SolverStatus::unsat);

    for (const char * bad : {"", "v 1 0\n", "s SATISFIABLE\nv 1 2\n", "s MAYBE\n", "s SATISFIABLE\nv 1 -1 0\n",
                             "s UNSATISFIABLE\nv 1 0\n", "s SATISFIABLE\ns SATISFIABLE\nv 0\n"}) {
        auto r = read_solver_output(bad);
        EXPECT_EQ(r.status, SolverStatus::unknown) << bad;
        EXPECT_FALSE(r.diagnostic.empty()) << bad;
    }
}

TEST(SatBridge, DecodeRejectsWrongSize)
{
    auto cnf = encode(2, 3, k22, k44);
    EXPECT_THROW(decode(cnf, std::vector<bool>(5)), std::invalid_argument);
    auto g = decode(cnf, {true, false, false, false, false, true});
    EXPECT_TRUE(g.has_edge(0, 0));
    EXPECT_TRUE(g.has_edge(1, 2));
    EXPECT_EQ(edge_count(g), 2u);
}

TEST(SatBridge, DecisionFromSolver)
{
    auto cnf = encode(5, 25, k22, k44);
    SolverResult good{SolverStatus::sat, assignment_of(cnf, witness_5_25().graph), ""};
    auto d = decision_from_solver(cnf, good);
    EXPECT_EQ(d.verdict, Verdict::not_arrows);
    EXPECT_EQ(*d.witness(), witness_5_25().graph);

    // all-false model: complement is complete, contains K_{4,4}
    SolverResult empty{SolverStatus::sat, std::vector<bool>(125, false), ""};
    auto rejected = decision_from_solver(cnf, empty);
    EXPECT_EQ(rejected.verdict, Verdict::unknown);
    EXPECT_NE(rejected.diagnostics->reason.find("rejected"), std::string::npos);

    EXPECT_EQ(decision_from_solver(cnf, {SolverStatus::sat, std::vector<bool>(3), ""}).verdict, Verdict::unknown);
    EXPECT_EQ(decision_from_solver(cnf, read_solver_output("garbage")).verdict, Verdict::unknown);

    auto unsat_cnf = encode(5, 26, k22, k44);
    auto u = decision_from_solver(unsat_cnf, {SolverStatus::unsat, {}, ""});
    EXPECT_EQ(u.verdict, Verdict::arrows);
    EXPECT_EQ(std::get<ExternalSatCertificate>(u.certificate).instance_digest, instance_digest(unsat_cnf));
    EXPECT_NE(format_decision(u).find("certificate=external-sat digest=fnv1a64-"), std::string::npos);
}

TEST(SatBridge, DpllAgreesWithSearchAndOracle)
{
    for (std::size_t m = 1; m <= 4; ++m)
        for (std::size_t n = 1; n <= 4; ++n)
            for (auto s1 : {BicliqueShape{1, 1}, BicliqueShape{2, 2}, BicliqueShape{1, 2}})
                for (auto s2 : {BicliqueShape{2, 2}, BicliqueShape{3, 3}, BicliqueShape{2, 3}})
                    for (bool lex : {false, true}) {
                        auto cnf = encode(m, n, s1, s2, {lex});
                        auto r = Dpll(cnf).solve();
                        ASSERT_NE(r.status, SolverStatus::unknown);
                        bool expected = oracle::good_coloring_exists(m, n, s1, s2);
                        ASSERT_EQ(r.status == SolverStatus::sat, expected)
                            << m << "x" << n << " " << to_string(s1) << " " << to_string(s2) << " lex=" << lex;
                        auto searched = search_good_coloring(m, n, s1, s2, {});
                        ASSERT_EQ(searched.status == SearchStatus::found, expected);
                        if (r.status == SolverStatus::sat) {
                            EXPECT_FALSE(first_violated_clause(cnf, r.model));
                            EXPECT_EQ(decision_from_solver(cnf, r).verdict, Verdict::not_arrows);
                        }
                    }
}

TEST(SatBridge, LexClausesAcceptSortedWitness)
{
    // sort the columns of a good coloring into nonincreasing order; the
    // lex-extended instance must accept it with the intended auxiliaries
    auto w = witness_7_21().graph;
    std::vector<std::size_t> order(w.n());
    std::iota(order.begin(), order.end(), 0);
    auto key = [&](std::size_t j) {
        std::vector<bool> c(w.m());
        for (std::size_t i = 0; i < w.m(); ++i)
            c[i] = w.has_edge(i, j);
        return c;
    };
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return key(a) > key(b); });
    BipartiteGraph sorted(w.m(), w.n());
    for (std::size_t j = 0; j < w.n(); ++j)
        for (std::size_t i = 0; i < w.m(); ++i)
            if (w.has_edge(i, order[j]))
                sorted.add_edge(i, j);
    auto cnf = encode(7, 21, k22, k44, {true});
    EXPECT_FALSE(first_violated_clause(cnf, assignment_of(cnf, sorted)));

    BipartiteGraph reversed(w.m(), w.n());
    for (std::size_t j = 0; j < w.n(); ++j)
        for (std::size_t i = 0; i < w.m(); ++i)
            if (sorted.has_edge(i, w.n() - 1 - j))
                reversed.add_edge(i, j);
    EXPECT_TRUE(first_violated_clause(cnf, assignment_of(cnf, reversed)));
}
