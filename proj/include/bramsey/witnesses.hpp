#pragma once

#include <bramsey/bigraph.hpp>
#include <bramsey/graph_io.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bramsey {

/// A checkable statement about neighborhoods of a set of X-vertices.
///
/// Text form (1-based rows), optionally prefixed by a label and a colon:
///
///     edges                     |E(G)|
///     max_degree_x              Δ(G_X)
///     degree{5-8}               every listed row has this degree
///     intersection_of_2{1-8}    every 2-subset has this common-neighborhood size
///     union_of_4{1-7}           every 4-subset has this neighborhood-union size
struct Claim {
    enum class Kind { edges, max_degree_x, degree, intersection_of, union_of };

    std::string label;
    Kind kind = Kind::edges;
    std::size_t k = 0;
    std::vector<std::size_t> rows; // 0-based
    std::int64_t expected = 0;
};

namespace detail {

    inline auto format_rows(const std::vector<std::size_t> & rows) -> std::string
    {
        std::string out;
        for (std::size_t a = 0; a < rows.size();) {
            std::size_t b = a;
            while (b + 1 < rows.size() && rows[b + 1] == rows[b] + 1)
                ++b;
            if (! out.empty())
                out += ',';
            out += std::to_string(rows[a] + 1);
            if (b > a)
                out += '-' + std::to_string(rows[b] + 1);
            a = b + 1;
        }
        return out;
    }

    inline auto parse_rows(std::string_view spec) -> std::vector<std::size_t>
    {
        std::set<std::size_t> rows;
        std::size_t start = 0;
        while (start <= spec.size()) {
            auto end = spec.find(',', start);
            if (end == std::string_view::npos)
                end = spec.size();
            std::string item(spec.substr(start, end - start));
            auto dash = item.find('-');
            auto lo = detail::parse_count(item.substr(0, dash), 0);
            auto hi = dash == std::string::npos ? lo : detail::parse_count(item.substr(dash + 1), 0);
            if (lo == 0 || hi < lo)
                throw ParseError(0, "bad row range '" + item + "'");
            for (auto r = lo; r <= hi; ++r)
                rows.insert(r - 1);
            start = end + 1;
        }
        return {rows.begin(), rows.end()};
    }

} // namespace detail

inline auto claim_name(const Claim & c) -> std::string
{
    std::string body;
    switch (c.kind) {
    case Claim::Kind::edges: body = "edges"; break;
    case Claim::Kind::max_degree_x: body = "max_degree_x"; break;
    case Claim::Kind::degree: body = "degree{" + detail::format_rows(c.rows) + "}"; break;
    case Claim::Kind::intersection_of:
        body = "intersection_of_" + std::to_string(c.k) + "{" + detail::format_rows(c.rows) + "}";
        break;
    case Claim::Kind::union_of:
        body = "union_of_" + std::to_string(c.k) + "{" + detail::format_rows(c.rows) + "}";
        break;
    }
    return c.label.empty() ? body : c.label + ":" + body;
}

/// Parses "<name> = <value>" where <name> is as produced by claim_name.
inline auto parse_claim(std::string_view text) -> Claim
{
    auto eq = text.find('=');
    if (eq == std::string_view::npos)
        throw ParseError(0, "claim needs '<name> = <value>'");
    auto trim = [](std::string_view s) {
        while (! s.empty() && s.front() == ' ')
            s.remove_prefix(1);
        while (! s.empty() && s.back() == ' ')
            s.remove_suffix(1);
        return std::string(s);
    };
    auto name = trim(text.substr(0, eq));
    auto value = trim(text.substr(eq + 1));

    Claim c;
    c.expected = static_cast<std::int64_t>(detail::parse_count(value, 0));
    if (auto colon = name.find(':'); colon != std::string::npos) {
        c.label = name.substr(0, colon);
        name = name.substr(colon + 1);
    }

    if (name == "edges") {
        c.kind = Claim::Kind::edges;
        return c;
    }
    if (name == "max_degree_x") {
        c.kind = Claim::Kind::max_degree_x;
        return c;
    }
    auto brace = name.find('{');
    if (brace == std::string::npos || name.back() != '}')
        throw ParseError(0, "unknown claim '" + name + "'");
    auto head = name.substr(0, brace);
    c.rows = detail::parse_rows(std::string_view(name).substr(brace + 1, name.size() - brace - 2));
    if (head == "degree") {
        c.kind = Claim::Kind::degree;
        c.k = 1;
    }
    else if (head.starts_with("intersection_of_")) {
        c.kind = Claim::Kind::intersection_of;
        c.k = detail::parse_count(head.substr(16), 0);
    }
    else if (head.starts_with("union_of_")) {
        c.kind = Claim::Kind::union_of;
        c.k = detail::parse_count(head.substr(9), 0);
    }
    else
        throw ParseError(0, "unknown claim '" + name + "'");
    if (c.k == 0 || c.k > c.rows.size())
        throw ParseError(0, "claim '" + name + "' selects more rows than it lists");
    return c;
}

struct ClaimOutcome {
    Claim claim;
    bool confirmed = false;
    /// Human-readable computed value: the common value when all subsets
    /// agree, otherwise the observed range and the first mismatching subset.
    std::string computed;
};

inline auto evaluate_claim(const BipartiteGraph & g, const Claim & c) -> ClaimOutcome
{
    ClaimOutcome out{c, false, {}};
    for (auto r : c.rows)
        if (r >= g.m())
            throw std::out_of_range("claim '" + claim_name(c) + "' names a row outside the graph");

    if (c.kind == Claim::Kind::edges || c.kind == Claim::Kind::max_degree_x) {
        auto v = static_cast<std::int64_t>(c.kind == Claim::Kind::edges ? g.edge_count() : max_degree_x(g));
        out.confirmed = v == c.expected;
        out.computed = std::to_string(v);
        return out;
    }

    std::int64_t lo = INT64_MAX, hi = INT64_MIN;
    std::optional<std::pair<std::vector<std::size_t>, std::int64_t>> mismatch;
    std::vector<std::size_t> pick;
    auto visit = [&](auto && self, std::size_t from) -> void {
        if (pick.size() == c.k) {
            std::vector<std::size_t> chosen;
            for (auto p : pick)
                chosen.push_back(c.rows[p]);
            BitSet acc = c.kind == Claim::Kind::union_of ? BitSet(g.n()) : BitSet::full(g.n());
            for (auto r : chosen) {
                if (c.kind == Claim::Kind::union_of)
                    acc |= g.row(r);
                else
                    acc &= g.row(r);
            }
            auto v = static_cast<std::int64_t>(acc.count());
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            if (v != c.expected && ! mismatch)
                mismatch.emplace(chosen, v);
            return;
        }
        for (std::size_t p = from; p < c.rows.size(); ++p) {
            pick.push_back(p);
            self(self, p + 1);
            pick.pop_back();
        }
    };
    visit(visit, 0);

    out.confirmed = ! mismatch;
    if (lo == hi)
        out.computed = std::to_string(lo);
    else
        out.computed = "range " + std::to_string(lo) + ".." + std::to_string(hi);
    if (mismatch) {
        std::string who;
        for (auto r : mismatch->first)
            who += (who.empty() ? "x" : ",x") + std::to_string(r + 1);
        out.computed += "; first mismatch {" + who + "} = " + std::to_string(mismatch->second);
    }
    return out;
}

/// An explicit coloring together with the shapes it is meant to avoid and
/// the properties claimed for it.
struct WitnessRecord {
    std::string name;
    BipartiteGraph graph;
    BicliqueShape avoid_in_g{2, 2};
    BicliqueShape avoid_in_complement{4, 4};
    std::vector<Claim> claims;
    std::string source;
};

struct PropertyReport {
    std::string name;
    std::size_t m = 0, n = 0;
    BicliqueShape avoid_in_g, avoid_in_complement;
    std::optional<Biclique> found_in_g;
    std::optional<Biclique> found_in_complement;
    bool good_coloring = false;
    std::vector<ClaimOutcome> claims;

    auto all_claims_confirmed() const -> bool
    {
        return std::all_of(claims.begin(), claims.end(), [](const auto & c) { return c.confirmed; });
    }
};

/// Freeness of both shapes plus every claim; claim refutations are data, not
/// errors.
inline auto verify_witness(const WitnessRecord & w) -> PropertyReport
{
    PropertyReport r;
    r.name = w.name;
    r.m = w.graph.m();
    r.n = w.graph.n();
    r.avoid_in_g = w.avoid_in_g;
    r.avoid_in_complement = w.avoid_in_complement;
    r.found_in_g = contains_biclique(w.graph, w.avoid_in_g);
    r.found_in_complement = contains_biclique(complement(w.graph), w.avoid_in_complement);
    r.good_coloring = ! r.found_in_g && ! r.found_in_complement;
    for (const auto & c : w.claims)
        r.claims.push_back(evaluate_claim(w.graph, c));
    return r;
}

namespace detail {

    inline auto format_biclique(const Biclique & b) -> std::string
    {
        std::string out = "rows {";
        for (std::size_t k = 0; k < b.row_set.size(); ++k)
            out += (k ? ",x" : "x") + std::to_string(b.row_set[k] + 1);
        out += "} cols {";
        for (std::size_t k = 0; k < b.col_set.size(); ++k)
            out += (k ? ",y" : "y") + std::to_string(b.col_set[k] + 1);
        return out + "}";
    }

} // namespace detail

inline auto format_report(const PropertyReport & r) -> std::string
{
    std::ostringstream out;
    out << "witness " << r.name << " " << r.m << "x" << r.n << "\n";
    out << "avoid-in-G " << to_string(r.avoid_in_g) << ": "
        << (r.found_in_g ? "FOUND " + detail::format_biclique(*r.found_in_g) : std::string("absent")) << "\n";
    out << "avoid-in-complement " << to_string(r.avoid_in_complement) << ": "
        << (r.found_in_complement ? "FOUND " + detail::format_biclique(*r.found_in_complement)
                                  : std::string("absent"))
        << "\n";
    for (const auto & c : r.claims)
        out << "claim " << claim_name(c.claim) << " expected=" << c.claim.expected << " computed=" << c.computed
            << " verdict=" << (c.confirmed ? "confirmed" : "refuted (discrepancy with stated value)") << "\n";
    out << "good_coloring " << (r.good_coloring ? "true" : "false") << "\n";
    return out.str();
}

namespace detail {

    inline auto ranges(std::initializer_list<std::pair<std::size_t, std::size_t>> spans)
        -> std::vector<std::size_t>
    {
        std::vector<std::size_t> out;
        for (auto [lo, hi] : spans)
            for (auto v = lo; v <= hi; ++v)
                out.push_back(v - 1);
        return out;
    }

    inline auto claim(std::string label, Claim::Kind kind, std::size_t k, std::size_t lo, std::size_t hi,
                      std::int64_t expected) -> Claim
    {
        return Claim{std::move(label), kind, k, ranges({{lo, hi}}), expected};
    }

} // namespace detail

/// K_{2,2}-free 5x25 graph whose complement avoids K_{4,4}: five rows of
/// degree 7 meeting pairwise in exactly one column.
inline auto witness_5_25() -> WitnessRecord
{
    using detail::ranges;
    std::vector<std::vector<std::size_t>> lists{
        ranges({{1, 7}}),
        ranges({{1, 1}, {8, 13}}),
        ranges({{2, 2}, {8, 8}, {14, 18}}),
        ranges({{3, 3}, {9, 9}, {14, 14}, {19, 22}}),
        ranges({{4, 4}, {10, 10}, {15, 15}, {19, 19}, {23, 25}}),
    };
    using K = Claim::Kind;
    return WitnessRecord{
        "paper-5x25",
        from_neighbor_lists(5, 25, lists),
        {2, 2},
        {4, 4},
        {
            detail::claim("pairwise", K::intersection_of, 2, 1, 5, 1),
            detail::claim("union-excluding-one", K::union_of, 4, 1, 5, 22),
            detail::claim("degrees", K::degree, 1, 1, 5, 7),
        },
        "lower bound BR_5(K22,K44) >= 26",
    };
}

/// 7x21 graph: columns are the 21 pairs of rows, so any two rows share one
/// column and any four rows cover 18 columns.
inline auto witness_7_21() -> WitnessRecord
{
    using detail::ranges;
    std::vector<std::vector<std::size_t>> lists{
        ranges({{1, 6}}),
        ranges({{1, 1}, {7, 11}}),
        ranges({{2, 2}, {7, 7}, {12, 15}}),
        ranges({{3, 3}, {8, 8}, {12, 12}, {16, 18}}),
        ranges({{4, 4}, {9, 9}, {13, 13}, {16, 16}, {19, 20}}),
        ranges({{5, 5}, {10, 10}, {14, 14}, {17, 17}, {19, 19}, {21, 21}}),
        ranges({{6, 6}, {11, 11}, {15, 15}, {18, 18}, {20, 21}}),
    };
    using K = Claim::Kind;
    return WitnessRecord{
        "paper-7x21",
        from_neighbor_lists(7, 21, lists),
        {2, 2},
        {4, 4},
        {
            detail::claim("E1", K::intersection_of, 2, 1, 7, 1),
            detail::claim("E2", K::union_of, 4, 1, 7, 18),
        },
        "lower bound BR_7(K22,K44) >= 22",
    };
}

/// 8x15 coloring given as a 15x8 matrix (rows are Y, columns are X).  The
/// attached claims are the stated ones; several do not hold for the matrix
/// as printed and the verifier reports them as refuted.
inline auto witness_8_15() -> WitnessRecord
{
    static constexpr const char * display[15] = {
        "11110000", "10001010", "10000101", "10000000", "01001000", "01000110", "01000001", "00101000",
        "00100100", "00100010", "00011001", "00010100", "00010010", "00001100", "00000011",
    };
    BipartiteGraph g(8, 15);
    for (std::size_t y = 0; y < 15; ++y)
        for (std::size_t x = 0; x < 8; ++x)
            if (display[y][x] == '1')
                g.add_edge(x, y);
    using K = Claim::Kind;
    return WitnessRecord{
        "paper-8x15",
        std::move(g),
        {2, 2},
        {4, 4},
        {
            detail::claim("P1", K::intersection_of, 2, 1, 8, 1),
            detail::claim("P2", K::degree, 1, 1, 4, 4),
            detail::claim("P3", K::degree, 1, 5, 8, 5),
            detail::claim("P4", K::union_of, 4, 1, 4, 13),
            detail::claim("P5", K::union_of, 4, 5, 8, 14),
            detail::claim("M1", K::union_of, 2, 1, 4, 7),
            detail::claim("M2", K::union_of, 3, 1, 4, 10),
            detail::claim("M3", K::union_of, 2, 5, 8, 9),
            detail::claim("M4", K::union_of, 3, 5, 8, 12),
        },
        "lower bound BR_8(K22,K44) >= 16, as transcribed",
    };
}

/// A good (K_{2,2}, K_{4,4}) coloring of K_{m,n} for m <= 4 and any n: the
/// empty graph for m <= 3, and for m = 4 each column adjacent to exactly row
/// (j mod 4).
inline auto nonexistence_family(std::size_t m, std::size_t n) -> BipartiteGraph
{
    if (m < 1 || m > 4)
        throw std::invalid_argument("nonexistence_family is defined for 1 <= m <= 4, got m=" + std::to_string(m));
    if (n < 1)
        throw std::invalid_argument("nonexistence_family needs n >= 1");
    BipartiteGraph g(m, n);
    if (m == 4)
        for (std::size_t j = 0; j < n; ++j)
            g.add_edge(j % 4, j);
    return g;
}

inline auto nonexistence_record(std::size_t m, std::size_t n) -> WitnessRecord
{
    auto g = nonexistence_family(m, n);
    auto edges = static_cast<std::int64_t>(g.edge_count());
    return WitnessRecord{
        "nonexistence-" + std::to_string(m) + "x" + std::to_string(n),
        std::move(g),
        {2, 2},
        {4, 4},
        {Claim{"", Claim::Kind::edges, 0, {}, edges}},
        "good coloring of K_{m,n} for every n when m <= 4",
    };
}

/// Parses "<m>x<n>" at the end of a witness name.
inline auto dimensions_from_name(std::string_view name) -> std::optional<std::pair<std::size_t, std::size_t>>
{
    auto dash = name.rfind('-');
    auto x = name.rfind('x');
    if (dash == std::string_view::npos || x == std::string_view::npos || x < dash)
        return std::nullopt;
    auto a = std::string(name.substr(dash + 1, x - dash - 1));
    auto b = std::string(name.substr(x + 1));
    if (a.empty() || b.empty() || a.find_first_not_of("0123456789") != std::string::npos ||
        b.find_first_not_of("0123456789") != std::string::npos)
        return std::nullopt;
    return std::pair{std::stoull(a), std::stoull(b)};
}

inline auto builtin_witness_names() -> std::vector<std::string>
{
    return {"paper-5x25", "paper-7x21", "paper-8x15", "nonexistence-<m>x<n> (m <= 4)"};
}

inline auto builtin_witness(std::string_view name) -> std::optional<WitnessRecord>
{
    if (name == "paper-5x25")
        return witness_5_25();
    if (name == "paper-7x21")
        return witness_7_21();
    if (name == "paper-8x15")
        return witness_8_15();
    if (name.starts_with("nonexistence-"))
        if (auto dims = dimensions_from_name(name); dims && dims->first >= 1 && dims->first <= 4 && dims->second >= 1)
            return nonexistence_record(dims->first, dims->second);
    return std::nullopt;
}

/// Witness file: "# key: value" header lines, then the neighbor-list format.
inline auto write_witness_file(const WitnessRecord & w) -> std::string
{
    std::string out;
    out += "# witness: " + w.name + "\n";
    out += "# avoid-in-G: " + std::to_string(w.avoid_in_g.s) + " " + std::to_string(w.avoid_in_g.t) + "\n";
    out += "# avoid-in-complement: " + std::to_string(w.avoid_in_complement.s) + " " +
           std::to_string(w.avoid_in_complement.t) + "\n";
    if (! w.source.empty())
        out += "# source: " + w.source + "\n";
    for (const auto & c : w.claims)
        out += "# claim: " + claim_name(c) + " = " + std::to_string(c.expected) + "\n";
    out += write_neighbor_lists(w.graph);
    return out;
}

/// Reads a witness file or a bare graph (matrix or neighbor lists).  Missing
/// header keys default to the (K_{2,2}, K_{4,4}) pair and the given name.
inline auto read_witness_file(std::string_view text, std::string default_name = "file") -> WitnessRecord
{
    WitnessRecord w;
    w.name = std::move(default_name);
    for (const auto & [number, line] : detail::split_lines(text)) {
        if (! detail::is_comment(line))
            break;
        auto body = std::string_view(line).substr(1);
        while (! body.empty() && body.front() == ' ')
            body.remove_prefix(1);
        auto colon = body.find(':');
        if (colon == std::string_view::npos)
            continue;
        auto key = body.substr(0, colon);
        auto value = std::string(body.substr(colon + 1));
        while (! value.empty() && value.front() == ' ')
            value.erase(value.begin());
        auto shape = [&] {
            auto t = detail::tokens(value);
            if (t.size() != 2)
                throw ParseError(number, "shape must be 's t'");
            auto s = detail::parse_count(t[0], number);
            auto u = detail::parse_count(t[1], number);
            if (s == 0 || u == 0)
                throw ParseError(number, "shape sides must be positive");
            return BicliqueShape{s, u};
        };
        try {
            if (key == "witness")
                w.name = value;
            else if (key == "avoid-in-G")
                w.avoid_in_g = shape();
            else if (key == "avoid-in-complement")
                w.avoid_in_complement = shape();
            else if (key == "source")
                w.source = value;
            else if (key == "claim")
                w.claims.push_back(parse_claim(value));
        }
        catch (const ParseError & e) {
            if (e.line() != 0)
                throw;
            throw ParseError(number, e.detail());
        }
    }
    w.graph = read_graph(text);
    for (const auto & c : w.claims)
        for (auto r : c.rows)
            if (r >= w.graph.m())
                throw ParseError(0, "claim '" + claim_name(c) + "' names a row outside the graph");
    return w;
}

} // namespace bramsey
