#include "oracles.hpp"

#include <bramsey/search_engine.hpp>
#include <bramsey/zarankiewicz.hpp>

#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <sstream>

using namespace bramsey;

namespace {

auto exact(std::size_t m, std::size_t n, std::size_t s, std::size_t t, SearchConfig c = {}) -> std::uint64_t
{
    auto e = z_exact(m, n, s, t, c);
    EXPECT_EQ(e.provenance, Provenance::computed_exact) << m << " " << n << " " << s << " " << t;
    return e.lower;
}

} // namespace

TEST(SearchEngine, SubmaskEnumeration)
{
    std::vector<search::Mask> seen;
    search::detail::for_each_submask_of_size(0b10110, 2, [&](search::Mask s) {
        seen.push_back(s);
        return true;
    });
    EXPECT_EQ(seen.size(), 3u);
    for (auto s : seen) {
        EXPECT_EQ(std::popcount(s), 2);
        EXPECT_EQ(s & ~search::Mask{0b10110}, 0u);
    }
}

TEST(SearchEngine, CapacityTablesGiveKnownCountingBound)
{
    // pooled pair counting for C4-free 7x7 graphs is tight at 21
    EXPECT_EQ(search::counting_edge_bound(7, 7, {2, 2}), 21u);
    EXPECT_GE(search::counting_edge_bound(5, 6, {2, 2}), 14u);
}

TEST(SearchEngine, ResultIndependentOfWorkerCount)
{
    for (auto [m, n, s] : {std::tuple{5u, 7u, 2u}, std::tuple{6u, 6u, 3u}}) {
        search::Problem p;
        p.rows = m;
        p.columns = n;
        p.forbid_in_g = BicliqueShape(s, s);
        p.goal = search::Goal::max_edges;
        SearchConfig one;
        auto a = search::run(p, one);
        for (unsigned w : {2u, 3u, 8u}) {
            SearchConfig many;
            many.worker_count = w;
            auto b = search::run(p, many);
            EXPECT_EQ(a.nodes, b.nodes);
            EXPECT_EQ(a.best_edges, b.best_edges);
            EXPECT_EQ(a.columns, b.columns);
            EXPECT_EQ(a.complete, b.complete);
        }
    }
}

TEST(SearchEngine, TruncatedRunsAreDeterministic)
{
    search::Problem p;
    p.rows = 8;
    p.columns = 12;
    p.forbid_in_g = BicliqueShape(3, 3);
    p.goal = search::Goal::max_edges;
    for (std::uint64_t budget : {1ull, 10ull, 1000ull, 20000ull}) {
        SearchConfig one;
        one.node_budget = budget;
        auto a = search::run(p, one);
        SearchConfig four = one;
        four.worker_count = 4;
        auto b = search::run(p, four);
        EXPECT_EQ(a.nodes, b.nodes);
        EXPECT_LE(a.nodes, budget);
        EXPECT_EQ(a.best_edges, b.best_edges);
        EXPECT_EQ(a.proven_upper, b.proven_upper);
        EXPECT_EQ(a.columns, b.columns);
        EXPECT_LE(a.best_edges, a.proven_upper);
    }
}

TEST(SearchEngine, RejectsTooManyMaskRows)
{
    search::Problem p;
    p.rows = 21;
    p.columns = 21;
    EXPECT_THROW(search::run(p, {}), std::invalid_argument);
}

TEST(Zarankiewicz, SmallValues)
{
    EXPECT_EQ(exact(2, 2, 2, 2), 3u);
    EXPECT_EQ(exact(3, 3, 2, 2), 6u);
    EXPECT_EQ(exact(4, 4, 2, 2), 9u);
    EXPECT_EQ(exact(5, 5, 2, 2), 12u);
    EXPECT_EQ(exact(6, 6, 2, 2), 16u);
    EXPECT_EQ(exact(7, 7, 2, 2), 21u);
    for (std::size_t n = 1; n <= 30; n += 7)
        EXPECT_EQ(exact(1, n, 2, 2), n);
    EXPECT_EQ(exact(4, 3, 5, 1), 12u);
}

TEST(Zarankiewicz, MatchesOracle)
{
    for (std::size_t m = 1; m <= 16; ++m)
        for (std::size_t n = 1; m * n <= 12; ++n)
            for (std::size_t s : {2, 3}) {
                auto e = z_exact(m, n, s, s, {});
                EXPECT_EQ(e.lower, oracle::z(m, n, {s, s})) << m << "x" << n << " K" << s << s;
            }
}

TEST(Zarankiewicz, AsymmetricShapesAndTranspose)
{
    for (std::size_t m = 2; m <= 4; ++m)
        for (std::size_t n = 2; n <= 4; ++n) {
            auto a = z_exact(m, n, 2, 3, {});
            auto b = z_exact(n, m, 3, 2, {});
            EXPECT_EQ(a.lower, b.lower);
            EXPECT_EQ(a.lower, oracle::z(m, n, {2, 3}));
        }
    // masks cover the smaller side
    EXPECT_EQ(z_exact(24, 3, 2, 2, {}).lower, z_exact(3, 24, 2, 2, {}).lower);
}

TEST(Zarankiewicz, ExtremalWitnessIsSound)
{
    for (auto [m, n, s] : {std::tuple{5, 6, 2}, std::tuple{6, 7, 2}, std::tuple{5, 5, 3}, std::tuple{7, 4, 2}}) {
        auto e = z_exact(m, n, s, s, {});
        ASSERT_TRUE(e.extremal);
        EXPECT_EQ(edge_count(*e.extremal), e.lower);
        EXPECT_FALSE(contains_biclique(*e.extremal, {std::size_t(s), std::size_t(s)}));
        EXPECT_EQ(e.extremal->m(), std::size_t(m));
        EXPECT_EQ(e.extremal->n(), std::size_t(n));
    }
}

TEST(Zarankiewicz, BudgetDegradesProvenance)
{
    SearchConfig c;
    c.node_budget = 50;
    auto e = z_exact(8, 16, 4, 4, c);
    EXPECT_EQ(e.provenance, Provenance::computed_bounded);
    EXPECT_LE(e.lower, e.upper);
    EXPECT_LE(e.nodes, 50u);
    ASSERT_TRUE(e.extremal);
    EXPECT_EQ(edge_count(*e.extremal), e.lower);
    EXPECT_FALSE(contains_biclique(*e.extremal, {4, 4}));
}

TEST(Zarankiewicz, Monotonicity)
{
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::uint64_t> z;
    for (std::size_t m = 2; m <= 5; ++m)
        for (std::size_t n = 2; n <= 7; ++n)
            for (std::size_t s = 2; s <= 4; ++s)
                z[std::tuple{m, n, s}] = exact(m, n, s, s);
    auto at = [&](std::size_t m, std::size_t n, std::size_t s) { return z.at(std::tuple{m, n, s}); };
    for (std::size_t m = 2; m <= 5; ++m)
        for (std::size_t n = 2; n <= 7; ++n) {
            if (n < 7) {
                for (std::size_t s = 2; s <= 4; ++s)
                    EXPECT_LE(at(m, n, s), at(m, n + 1, s));
            }
            EXPECT_LE(at(m, n, 2), at(m, n, 3));
            EXPECT_LE(at(m, n, 3), at(m, n, 4));
        }
}

TEST(Zarankiewicz, ComplementDuality)
{
    // any G whose complement avoids K_{u,v} has at least mn - z edges
    for (auto [m, n] : {std::pair{3, 4}, std::pair{4, 4}, std::pair{2, 8}}) {
        for (std::size_t u : {2, 3}) {
            auto z = exact(m, n, u, u);
            for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (m * n)); ++bits) {
                auto g = oracle::graph_from_bits(m, n, bits);
                if (! contains_biclique(complement(g), {u, u})) {
                    ASSERT_GE(edge_count(g), std::uint64_t(m * n) - z);
                }
            }
        }
    }
}

TEST(ZTable, BundledEntries)
{
    auto t = bundled_table();
    EXPECT_EQ(t.size(), 14u);
    EXPECT_EQ(t.lookup(10, 14, 2, 2)->upper, 42u);
    EXPECT_EQ(t.lookup(14, 10, 2, 2)->upper, 42u);
    EXPECT_EQ(t.lookup(5, 6, 2, 2)->upper, 14u);
    EXPECT_EQ(t.lookup(8, 16, 4, 4)->upper, 90u);
    EXPECT_FALSE(t.lookup(2, 2, 2, 2));
    for (const auto & e : t.entries()) {
        EXPECT_EQ(e.provenance, Provenance::paper_cited);
        EXPECT_FALSE(e.citation.empty());
    }
}

TEST(ZTable, EmbeddedCopyMatchesDataFile)
{
    std::ifstream in(BRAMSEY_DATA_DIR "/z_bounds.txt");
    ASSERT_TRUE(in);
    std::ostringstream s;
    s << in.rdbuf();
    EXPECT_EQ(s.str(), std::string(bundled_table_text()));
}

TEST(ZTable, TransposeLookupAndDuplicates)
{
    ZTable t;
    ZEntry e;
    e.m = 3;
    e.n = 5;
    e.s = 2;
    e.t = 3;
    e.upper = 11;
    t.insert(e);
    EXPECT_EQ(t.lookup(5, 3, 3, 2)->upper, 11u);
    EXPECT_FALSE(t.lookup(5, 3, 2, 3));
    auto dup = e.transposed();
    EXPECT_THROW(t.insert(dup), std::invalid_argument);
    EXPECT_THROW(parse_z_table("1 2 3\n"), ParseError);
    EXPECT_THROW(parse_z_table("5 6 2 2 14 a\n6 5 2 2 14 b\n"), ParseError);
}

TEST(ZTable, DerivedUpperBounds)
{
    auto t = bundled_table();
    EXPECT_EQ(t.upper_bound(10, 14, 4, 4)->value, 97u);
    EXPECT_EQ(t.upper_bound(13, 14, 2, 2)->value, 54u);
    EXPECT_EQ(t.upper_bound(13, 14, 4, 4)->value, 126u);
    EXPECT_EQ(t.upper_bound(14, 13, 2, 2)->value, 54u);
    EXPECT_EQ(t.upper_bound(5, 5, 2, 2)->value, 14u);
    EXPECT_EQ(t.upper_bound(3, 3, 4, 4)->value, 9u);
    EXPECT_FALSE(t.upper_bound(3, 3, 2, 3));
    EXPECT_EQ(t.upper_bound(3, 3, 2, 2)->value, 14u);
}

TEST(ZTable, DerivedBoundsAreValidOnExactValues)
{
    // the derivation rules applied to exact small values never undercut truth
    ZTable t;
    for (auto [m, n] : {std::pair{4, 5}, std::pair{5, 6}, std::pair{6, 6}}) {
        auto e = z_exact(m, n, 2, 2, {});
        e.provenance = Provenance::paper_cited;
        e.citation = "computed";
        t.insert(e);
    }
    for (std::size_t m = 2; m <= 9; ++m)
        for (std::size_t n = 2; n <= 9; ++n)
            if (auto b = t.upper_bound(m, n, 2, 2)) {
                EXPECT_GE(b->value, exact(m, n, 2, 2)) << m << "x" << n << " " << b->derivation;
            }
}

TEST(ZTable, ConsistencyCheck)
{
    ZTable t;
    ZEntry e;
    e.m = 5;
    e.n = 6;
    e.s = 2;
    e.t = 2;
    e.upper = 14;
    e.citation = "c";
    t.insert(e);
    e.m = 4;
    e.n = 4;
    e.upper = 8; // wrong on purpose: z = 9
    t.insert(e);
    auto r = consistency_check(t, {}, {{2, 2, 2, 2}});
    ASSERT_EQ(r.lines.size(), 3u);
    EXPECT_FALSE(r.ok());
    std::map<std::string, ConsistencyStatus> by_key;
    for (const auto & l : r.lines)
        by_key[to_string(l.key)] = l.status;
    EXPECT_EQ(by_key["5 6 2 2"], ConsistencyStatus::consistent);
    EXPECT_EQ(by_key["4 4 2 2"], ConsistencyStatus::violation);
    EXPECT_EQ(by_key["2 2 2 2"], ConsistencyStatus::uncited);
    EXPECT_EQ(format_line(r.lines.back()), "2 2 2 2: uncited");
}
