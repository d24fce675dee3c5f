#pragma once

#include <bramsey/bigraph.hpp>
#include <bramsey/graph_io.hpp>
#include <bramsey/search_engine.hpp>
#include <bramsey/witnesses.hpp>
#include <bramsey/zarankiewicz.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace bramsey {

/// Arrows: K_{m,n} -> (K_{s1,t1}, K_{s2,t2}) in the Ramsey sense, i.e. no
/// good coloring exists.  NotArrows: some G avoids shape1 while its
/// complement avoids shape2.
enum class Verdict { arrows, not_arrows, unknown };

inline auto to_string(Verdict v) -> std::string
{
    switch (v) {
    case Verdict::arrows:
        return "ARROWS";
    case Verdict::not_arrows:
        return "NOT-ARROWS";
    case Verdict::unknown:
        return "UNKNOWN";
    }
    return "?";
}

inline constexpr std::string_view polarity_note =
    "polarity: ARROWS means no good coloring exists (every G has shape1 in G or shape2 in its complement); "
    "NOT-ARROWS means a good coloring exists";

struct CountingCertificate {
    std::uint64_t edges = 0;
    std::uint64_t z1_upper = 0;
    std::uint64_t z2_upper = 0;
    std::vector<std::string> citations;
};

struct ExhaustiveCertificate {
    std::uint64_t nodes_explored = 0;
    /// Facts the search relied on beyond the definitions.
    std::vector<std::string> assumptions;
};

struct ExternalSatCertificate {
    std::string instance_digest;
    std::string solver_verdict;
};

struct WitnessCertificate {
    BipartiteGraph graph;
    std::string source;
};

struct UnknownDiagnostics {
    std::uint64_t nodes = 0;
    std::uint64_t budget = 0;
    std::string reason;
};

using Certificate =
    std::variant<std::monostate, CountingCertificate, ExhaustiveCertificate, ExternalSatCertificate, WitnessCertificate>;

struct ArrowDecision {
    std::size_t m = 0, n = 0;
    BicliqueShape shape1, shape2;
    Verdict verdict = Verdict::unknown;
    Certificate certificate;
    std::optional<UnknownDiagnostics> diagnostics;
    std::vector<std::string> notes;

    auto witness() const -> const BipartiteGraph *
    {
        auto w = std::get_if<WitnessCertificate>(&certificate);
        return w ? &w->graph : nullptr;
    }
};

/// Feasible range of |E(G)| for a good coloring G.
struct EdgeWindow {
    std::uint64_t min_edges = 0;
    std::uint64_t max_edges = 0;
    std::optional<ZBound> bound1;
    std::optional<ZBound> bound2;

    auto empty() const -> bool { return min_edges > max_edges; }
};

inline auto edge_window(std::size_t m, std::size_t n, const BicliqueShape & shape1, const BicliqueShape & shape2,
                        const ZTable & table) -> EdgeWindow
{
    const std::uint64_t total = std::uint64_t{m} * n;
    EdgeWindow w;
    w.bound1 = table.upper_bound(m, n, shape1.s, shape1.t);
    w.bound2 = table.upper_bound(m, n, shape2.s, shape2.t);
    w.max_edges = w.bound1 ? std::min(total, w.bound1->value) : total;
    w.min_edges = (w.bound2 && w.bound2->value < total) ? total - w.bound2->value : 0;
    return w;
}

/// Arrows when m*n exceeds the sum of the two Zarankiewicz upper bounds.
/// Never returns NotArrows.  `note` receives the reason when inconclusive.
inline auto counting_certificate(std::size_t m, std::size_t n, const BicliqueShape & shape1,
                                 const BicliqueShape & shape2, const ZTable & table, std::string * note = nullptr)
    -> std::optional<ArrowDecision>
{
    auto say = [&](std::string s) {
        if (note)
            *note = std::move(s);
    };
    auto b1 = table.upper_bound(m, n, shape1.s, shape1.t);
    auto b2 = table.upper_bound(m, n, shape2.s, shape2.t);
    if (! b1 || ! b2) {
        say(std::string("missing data for ") + (! b1 ? to_string(shape1) : to_string(shape2)));
        return std::nullopt;
    }
    const std::uint64_t total = std::uint64_t{m} * n;
    if (total <= b1->value + b2->value) {
        say("inconclusive: " + std::to_string(total) + " <= " + std::to_string(b1->value) + " + " +
            std::to_string(b2->value));
        return std::nullopt;
    }
    ArrowDecision d;
    d.m = m;
    d.n = n;
    d.shape1 = shape1;
    d.shape2 = shape2;
    d.verdict = Verdict::arrows;
    d.certificate = CountingCertificate{total, b1->value, b2->value, {b1->derivation, b2->derivation}};
    return d;
}

/// Largest Δ(G_X) a good coloring for ((2,2),(4,4)) can have.  Any row of
/// degree >= 8 (m >= 5, n >= 8) or >= 7 (m >= 9, n >= 9) forces a K_{2,2} in
/// G or a K_{4,4} in the complement.
inline auto degree_cap(std::size_t m, std::size_t n, const BicliqueShape & shape1 = {2, 2},
                       const BicliqueShape & shape2 = {4, 4}) -> std::optional<unsigned>
{
    if (shape1 != BicliqueShape{2, 2} || shape2 != BicliqueShape{4, 4})
        return std::nullopt;
    if (m >= 9 && n >= 9)
        return 6u;
    if (m >= 5 && n >= 8)
        return 7u;
    return std::nullopt;
}

enum class SearchStatus { found, none, unknown };

struct GoodColoringSearch {
    SearchStatus status = SearchStatus::unknown;
    std::optional<BipartiteGraph> graph;
    std::uint64_t nodes = 0;
    std::vector<std::string> assumptions;
    std::string reason;
};

/// Exhaustive search for a good coloring, subject to the pruning switched on
/// in `config`.  Degree caps and the edge window are only applied when they
/// are sound for the requested shapes.
inline auto search_good_coloring(std::size_t m, std::size_t n, const BicliqueShape & shape1,
                                 const BicliqueShape & shape2, const SearchConfig & config,
                                 const ZTable & table = bundled_table()) -> GoodColoringSearch
{
    config.validate();
    GoodColoringSearch result;
    if (m < 1 || n < 1)
        throw std::invalid_argument("search_good_coloring needs m, n >= 1");

    bool transpose = ! (m <= search::max_rows && (m <= n || n > search::max_rows));
    std::size_t rows = transpose ? n : m, cols = transpose ? m : n;
    if (rows > search::max_rows) {
        result.reason = "both sides exceed " + std::to_string(search::max_rows) + " vertices";
        return result;
    }

    search::Problem p;
    p.rows = static_cast<unsigned>(rows);
    p.columns = static_cast<unsigned>(cols);
    auto s1 = transpose ? shape1.transposed() : shape1;
    auto s2 = transpose ? shape2.transposed() : shape2;
    if (s1.s <= rows && s1.t <= cols)
        p.forbid_in_g = s1;
    if (s2.s <= rows && s2.t <= cols)
        p.forbid_in_complement = s2;
    p.goal = search::Goal::feasible;

    if (config.use_degree_lemmas) {
        if (auto cap = degree_cap(m, n, shape1, shape2)) {
            (transpose ? p.column_degree_cap : p.row_degree_cap) = *cap;
            result.assumptions.push_back("max X-degree <= " + std::to_string(*cap) + " (degree-forcing lemma)");
        }
    }
    if (config.use_edge_window) {
        auto w = edge_window(m, n, shape1, shape2, table);
        p.min_edges = w.min_edges;
        p.max_edges = w.max_edges;
        if (w.bound1 && w.bound1->value < std::uint64_t{m} * n)
            result.assumptions.push_back("|E(G)| <= " + std::to_string(w.max_edges) + " from " + w.bound1->derivation);
        if (w.bound2 && w.min_edges > 0)
            result.assumptions.push_back("|E(G)| >= " + std::to_string(w.min_edges) + " from " + w.bound2->derivation);
    }

    auto out = search::run(p, config);
    result.nodes = out.nodes;
    if (out.columns) {
        auto g = search::to_graph(p.rows, *out.columns);
        if (transpose)
            g = g.transpose();
        if (! is_good_coloring(g, shape1, shape2))
            throw std::logic_error("search produced a coloring that fails verification");
        result.status = SearchStatus::found;
        result.graph = std::move(g);
    }
    else if (out.complete)
        result.status = SearchStatus::none;
    else
        result.reason = "node budget exhausted";
    return result;
}

/// Good colorings already known: the bundled witnesses, the nonexistence
/// family for m <= 4, `extra`, and restrictions of any of these.
inline auto known_good_coloring(std::size_t m, std::size_t n, const BicliqueShape & shape1,
                                const BicliqueShape & shape2, const std::vector<WitnessCertificate> & extra = {})
    -> std::optional<WitnessCertificate>
{
    if (m >= 1 && m <= 4 && n >= 1) {
        auto g = nonexistence_family(m, n);
        if (is_good_coloring(g, shape1, shape2))
            return WitnessCertificate{std::move(g), "nonexistence-" + std::to_string(m) + "x" + std::to_string(n)};
    }
    for (const auto * name : {"paper-5x25", "paper-7x21", "paper-8x15"}) {
        auto w = *builtin_witness(name);
        if (w.graph.m() < m || w.graph.n() < n)
            continue;
        auto g = w.graph.restrict_to(m, n);
        if (is_good_coloring(g, shape1, shape2)) {
            std::string source = name;
            if (g.m() != w.graph.m() || g.n() != w.graph.n())
                source += " restricted to " + std::to_string(m) + "x" + std::to_string(n);
            return WitnessCertificate{std::move(g), source};
        }
    }
    for (const auto & w : extra) {
        if (w.graph.m() < m || w.graph.n() < n)
            continue;
        auto g = w.graph.restrict_to(m, n);
        if (is_good_coloring(g, shape1, shape2)) {
            auto source = w.source;
            if (g.m() != w.graph.m() || g.n() != w.graph.n())
                source += " restricted to " + std::to_string(m) + "x" + std::to_string(n);
            return WitnessCertificate{std::move(g), source};
        }
    }
    return std::nullopt;
}

struct ArrowOptions {
    /// Bounds used by the counting certificate and the edge window.
    const ZTable * table = nullptr;
    bool use_witness_library = true;
    /// Further good colorings to try, restricted to the host as needed.
    std::vector<WitnessCertificate> extra_witnesses;
};

/// Counting certificate, then known colorings, then exhaustive search;
/// Unknown when the budget runs out first.
inline auto arrows(std::size_t m, std::size_t n, const BicliqueShape & shape1, const BicliqueShape & shape2,
                   const SearchConfig & config, const ArrowOptions & options = {}) -> ArrowDecision
{
    auto bundled = options.table ? ZTable{} : bundled_table();
    const ZTable & table = options.table ? *options.table : bundled;

    std::string counting_note;
    if (auto d = counting_certificate(m, n, shape1, shape2, table, &counting_note))
        return *d;

    ArrowDecision d;
    d.m = m;
    d.n = n;
    d.shape1 = shape1;
    d.shape2 = shape2;
    d.notes.push_back("counting: " + counting_note);

    if (options.use_witness_library)
        if (auto w = known_good_coloring(m, n, shape1, shape2, options.extra_witnesses)) {
            d.verdict = Verdict::not_arrows;
            d.certificate = std::move(*w);
            return d;
        }

    auto s = search_good_coloring(m, n, shape1, shape2, config, table);
    switch (s.status) {
    case SearchStatus::found:
        d.verdict = Verdict::not_arrows;
        d.certificate = WitnessCertificate{std::move(*s.graph), "search"};
        d.notes.push_back("search nodes: " + std::to_string(s.nodes));
        break;
    case SearchStatus::none:
        d.verdict = Verdict::arrows;
        d.certificate = ExhaustiveCertificate{s.nodes, s.assumptions};
        break;
    case SearchStatus::unknown:
        d.verdict = Verdict::unknown;
        d.diagnostics = UnknownDiagnostics{s.nodes, config.node_budget, s.reason};
        break;
    }
    return d;
}

/// First line of a decision report.  `witness_ref` names the file a witness
/// was written to; without one the witness is printed inline below.
inline auto format_decision(const ArrowDecision & d, const std::string & witness_ref = "") -> std::string
{
    std::string head = to_string(d.verdict) + " " + std::to_string(d.m) + " " + std::to_string(d.n) + " | ";
    std::string body;
    if (auto c = std::get_if<CountingCertificate>(&d.certificate)) {
        head += "certificate=counting z1=" + std::to_string(c->z1_upper) + " z2=" + std::to_string(c->z2_upper) +
                " edges=" + std::to_string(c->edges);
        for (const auto & cite : c->citations)
            body += "bound: " + cite + "\n";
    }
    else if (auto e = std::get_if<ExhaustiveCertificate>(&d.certificate)) {
        head += "certificate=exhaustive nodes=" + std::to_string(e->nodes_explored);
        for (const auto & a : e->assumptions)
            body += "assumption: " + a + "\n";
    }
    else if (auto x = std::get_if<ExternalSatCertificate>(&d.certificate)) {
        head += "certificate=external-sat digest=" + x->instance_digest + " solver=" + x->solver_verdict;
    }
    else if (auto w = std::get_if<WitnessCertificate>(&d.certificate)) {
        head += "witness=" + (witness_ref.empty() ? std::string("inline") : witness_ref) + " source=" + w->source;
        if (witness_ref.empty())
            body += write_neighbor_lists(w->graph);
    }
    else if (d.diagnostics) {
        head += "nodes=" + std::to_string(d.diagnostics->nodes) + " budget=" + std::to_string(d.diagnostics->budget);
        if (! d.diagnostics->reason.empty())
            head += " reason=" + d.diagnostics->reason;
    }
    std::string out = head + "\n";
    out += "shapes: " + to_string(d.shape1) + " in G, " + to_string(d.shape2) + " in complement\n";
    out += std::string(polarity_note) + "\n";
    for (const auto & note : d.notes)
        out += "note: " + note + "\n";
    return out + body;
}

struct BrmResult {
    std::optional<std::size_t> least_n;
    /// Some n below the answer (or below n_max) came back Unknown.
    bool unknown_tainted = false;
    std::vector<ArrowDecision> decisions;
};

/// Scans n upwards from max(t1, t2) and stops at the first Arrows.  When a
/// counting certificate is available at some n0 <= n_max, n0 - 1 is decided
/// first: a good coloring there restricts to every smaller n.
inline auto br_m(std::size_t m, const BicliqueShape & shape1, const BicliqueShape & shape2, std::size_t n_max,
                 const SearchConfig & config, const ArrowOptions & options = {}) -> BrmResult
{
    if (n_max < 1)
        throw std::invalid_argument("br_m needs n_max >= 1");
    auto bundled = options.table ? ZTable{} : bundled_table();
    const ZTable & table = options.table ? *options.table : bundled;
    const std::size_t first = std::max(shape1.t, shape2.t);

    ArrowOptions scan = options;
    std::optional<ArrowDecision> probe;
    for (std::size_t n = first + 1; n <= n_max; ++n)
        if (counting_certificate(m, n, shape1, shape2, table)) {
            probe = arrows(m, n - 1, shape1, shape2, config, options);
            if (probe->verdict == Verdict::not_arrows && options.use_witness_library)
                scan.extra_witnesses.push_back(std::get<WitnessCertificate>(probe->certificate));
            break;
        }

    BrmResult r;
    for (std::size_t n = first; n <= n_max; ++n) {
        auto d = probe && probe->n == n ? *probe : arrows(m, n, shape1, shape2, config, scan);
        auto v = d.verdict;
        r.decisions.push_back(std::move(d));
        if (v == Verdict::unknown)
            r.unknown_tainted = true;
        if (v == Verdict::arrows) {
            r.least_n = n;
            break;
        }
    }
    return r;
}

} // namespace bramsey
