#pragma once

#include <bramsey/bigraph.hpp>
#include <bramsey/graph_io.hpp>
#include <bramsey/search_engine.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace bramsey {

enum class Provenance { paper_cited, computed_exact, computed_bounded };

inline auto to_string(Provenance p) -> std::string
{
    switch (p) {
    case Provenance::paper_cited:
        return "paper-cited";
    case Provenance::computed_exact:
        return "computed-exact";
    case Provenance::computed_bounded:
        return "computed-bounded";
    }
    return "?";
}

/// z((m,n), K_{s,t}): maximum edges of a K_{s,t}-free subgraph of K_{m,n},
/// s on the m side.
struct ZKey {
    std::size_t m = 0, n = 0, s = 0, t = 0;

    auto transposed() const -> ZKey { return {n, m, t, s}; }

    /// Representative of {key, transposed key}.
    auto normalized() const -> ZKey { return std::min(*this, transposed()); }

    friend auto operator<=>(const ZKey &, const ZKey &) = default;
};

inline auto to_string(const ZKey & k) -> std::string
{
    return std::to_string(k.m) + " " + std::to_string(k.n) + " " + std::to_string(k.s) + " " + std::to_string(k.t);
}

struct ZEntry {
    std::size_t m = 0, n = 0, s = 0, t = 0;
    std::uint64_t lower = 0;
    std::uint64_t upper = 0;
    std::optional<BipartiteGraph> extremal;
    Provenance provenance = Provenance::paper_cited;
    std::string citation;
    std::uint64_t nodes = 0;

    auto key() const -> ZKey { return {m, n, s, t}; }
    auto exact() const -> bool { return lower == upper; }

    auto transposed() const -> ZEntry
    {
        ZEntry e = *this;
        e.m = n;
        e.n = m;
        e.s = t;
        e.t = s;
        if (extremal)
            e.extremal = extremal->transpose();
        return e;
    }
};

/// "3 exact", "38..39 bounded" or "<= 42 paper-cited".
inline auto format_value(const ZEntry & e) -> std::string
{
    switch (e.provenance) {
    case Provenance::paper_cited:
        return "<= " + std::to_string(e.upper) + " paper-cited";
    case Provenance::computed_exact:
        return std::to_string(e.lower) + " exact";
    case Provenance::computed_bounded:
        return std::to_string(e.lower) + ".." + std::to_string(e.upper) + " bounded";
    }
    return "?";
}

/// An upper bound on some z value together with how it was obtained.
struct ZBound {
    std::uint64_t value = 0;
    std::string derivation;
};

class ZTable {
public:
    /// Rejects a second entry for the same key up to transposition.
    void insert(const ZEntry & e)
    {
        if (e.lower > e.upper)
            throw std::invalid_argument("z entry " + to_string(e.key()) + " has lower > upper");
        auto k = e.key().normalized();
        if (entries_.contains(k))
            throw std::invalid_argument("duplicate z entry " + to_string(e.key()));
        entries_.emplace(k, k == e.key() ? e : e.transposed());
    }

    /// The entry for (m,n,s,t), oriented as asked.
    auto lookup(std::size_t m, std::size_t n, std::size_t s, std::size_t t) const -> std::optional<ZEntry>
    {
        ZKey key{m, n, s, t};
        auto it = entries_.find(key.normalized());
        if (it == entries_.end())
            return std::nullopt;
        return it->second.key() == key ? it->second : it->second.transposed();
    }

    auto size() const -> std::size_t { return entries_.size(); }

    auto entries() const -> std::vector<ZEntry>
    {
        std::vector<ZEntry> out;
        for (const auto & [k, e] : entries_)
            out.push_back(e);
        return out;
    }

    /// Best upper bound on z((m,n), K_{s,t}) derivable from the table.
    ///
    /// Besides direct lookups this uses two elementary facts.  A subgraph of
    /// a K_{s,t}-free graph is K_{s,t}-free, so entries on larger hosts bound
    /// smaller ones.  Averaging over the m'-row restrictions of an m-row
    /// graph gives z(m,n) <= floor(z(m',n) * m / m') for s <= m' <= m, and
    /// likewise for columns.
    auto upper_bound(std::size_t m, std::size_t n, std::size_t s, std::size_t t) const -> std::optional<ZBound>
    {
        std::optional<ZBound> best;
        auto offer = [&](std::uint64_t v, std::string how) {
            if (! best || v < best->value)
                best = ZBound{v, std::move(how)};
        };
        if (s > m || t > n)
            offer(std::uint64_t{m} * n, "vacuous shape: z = m*n");

        for (const auto & [k, stored] : entries_) {
            for (const auto & e : {stored, stored.transposed()}) {
                if (e.s != s || e.t != t)
                    continue;
                auto name = "z(" + std::to_string(e.m) + "," + std::to_string(e.n) + ")<=" + std::to_string(e.upper) +
                            " [" + e.citation + "]";
                if (e.m == m && e.n == n)
                    offer(e.upper, name);
                else if (e.m >= m && e.n >= n)
                    offer(e.upper, name + " restricted to " + std::to_string(m) + "x" + std::to_string(n));
                else if (e.m <= m && e.n <= n && e.m >= s && e.n >= t) {
                    auto rows_then_cols = (e.upper * m / e.m) * n / e.n;
                    auto cols_then_rows = (e.upper * n / e.n) * m / e.m;
                    offer(std::min(rows_then_cols, cols_then_rows),
                          name + " averaged up to " + std::to_string(m) + "x" + std::to_string(n));
                }
                else if (e.m <= m && e.n >= n && e.m >= s)
                    offer(e.upper * m / e.m, name + " averaged over rows, restricted in columns");
                else if (e.m >= m && e.n <= n && e.n >= t)
                    offer(e.upper * n / e.n, name + " averaged over columns, restricted in rows");
            }
        }
        return best;
    }

private:
    std::map<ZKey, ZEntry> entries_;
};

namespace detail {

    inline constexpr std::string_view bundled_z_bounds = R"(# Zarankiewicz upper bounds z((m,n), K_{s,t}) <= upper.
# Columns: m n s t upper citation
7 14 2 2 31 collins2016:table5
7 16 2 2 34 collins2016:table5
8 14 2 2 35 collins2016:table5
8 16 2 2 38 collins2016:table5
8 16 4 4 90 collins2015:tableC.0
9 14 2 2 39 collins2016:table5
9 14 4 4 88 collins2015:tableC.0
10 14 2 2 42 collins2016:table5
10 14 4 4 97 collins2015:tableC.0
6 9 2 2 21 collins2016:table5
6 12 2 2 26 collins2016:table5
5 6 2 2 14 collins2016:table5
7 9 2 2 24 collins2016:table5
7 12 2 2 28 collins2016:table5
)";

} // namespace detail

/// Reads the "m n s t upper citation" format; '#' lines are comments.
inline auto parse_z_table(std::string_view text) -> ZTable
{
    ZTable table;
    for (const auto & [number, line] : detail::split_lines(text)) {
        if (line.empty() || detail::is_comment(line))
            continue;
        auto tok = detail::tokens(line);
        if (tok.size() != 6)
            throw ParseError(number, "expected 'm n s t upper citation'");
        ZEntry e;
        e.m = detail::parse_count(tok[0], number);
        e.n = detail::parse_count(tok[1], number);
        e.s = detail::parse_count(tok[2], number);
        e.t = detail::parse_count(tok[3], number);
        e.upper = detail::parse_count(tok[4], number);
        e.citation = tok[5];
        e.provenance = Provenance::paper_cited;
        if (e.m == 0 || e.n == 0 || e.s == 0 || e.t == 0)
            throw ParseError(number, "dimensions must be positive");
        try {
            table.insert(e);
        }
        catch (const std::invalid_argument & ex) {
            throw ParseError(number, ex.what());
        }
    }
    return table;
}

inline auto bundled_table_text() -> std::string_view { return detail::bundled_z_bounds; }

inline auto bundled_table() -> ZTable { return parse_z_table(detail::bundled_z_bounds); }

/// Computes z((m,n), K_{s,t}) by branch and bound.  Runs out of budget
/// gracefully: the entry then carries the best graph found and a proven
/// upper bound.
inline auto z_exact(std::size_t m, std::size_t n, std::size_t s, std::size_t t, const SearchConfig & config) -> ZEntry
{
    if (m < 1 || n < 1)
        throw std::invalid_argument("z_exact needs m, n >= 1");
    BicliqueShape shape(s, t);
    config.validate();

    ZEntry e;
    e.m = m;
    e.n = n;
    e.s = s;
    e.t = t;
    if (s > m || t > n) {
        e.lower = e.upper = std::uint64_t{m} * n;
        e.extremal = BipartiteGraph::complete(m, n);
        e.provenance = Provenance::computed_exact;
        return e;
    }

    bool transpose = ! (m <= search::max_rows && (m <= n || n > search::max_rows));
    std::size_t rows = transpose ? n : m, cols = transpose ? m : n;
    if (rows > search::max_rows) {
        e.lower = 0;
        e.extremal = BipartiteGraph(m, n);
        e.upper = std::uint64_t{m} * n;
        e.provenance = Provenance::computed_bounded;
        return e;
    }

    search::Problem p;
    p.rows = static_cast<unsigned>(rows);
    p.columns = static_cast<unsigned>(cols);
    p.forbid_in_g = transpose ? shape.transposed() : shape;
    p.goal = search::Goal::max_edges;
    auto out = search::run(p, config);

    e.nodes = out.nodes;
    if (out.columns) {
        auto g = search::to_graph(p.rows, *out.columns);
        e.extremal = transpose ? g.transpose() : g;
        e.lower = out.best_edges;
    }
    else {
        e.extremal = BipartiteGraph(m, n);
        e.lower = 0;
    }
    e.upper = out.complete ? e.lower : std::max(e.lower, out.proven_upper);
    e.provenance = out.complete ? Provenance::computed_exact : Provenance::computed_bounded;
    return e;
}

enum class ConsistencyStatus { consistent, violation, lower_only, uncited };

inline auto to_string(ConsistencyStatus s) -> std::string
{
    switch (s) {
    case ConsistencyStatus::consistent:
        return "consistent";
    case ConsistencyStatus::violation:
        return "VIOLATION";
    case ConsistencyStatus::lower_only:
        return "checked-lower-only";
    case ConsistencyStatus::uncited:
        return "uncited";
    }
    return "?";
}

struct ConsistencyLine {
    ZKey key;
    ConsistencyStatus status = ConsistencyStatus::uncited;
    std::optional<std::uint64_t> cited;
    std::optional<ZEntry> computed;
};

/// "m n s t: status detail".
inline auto format_line(const ConsistencyLine & l) -> std::string
{
    std::string out = to_string(l.key) + ": " + to_string(l.status);
    if (l.computed)
        out += " computed=" + format_value(*l.computed);
    if (l.cited)
        out += " cited<=" + std::to_string(*l.cited);
    return out;
}

struct ConsistencyReport {
    std::vector<ConsistencyLine> lines;

    auto ok() const -> bool
    {
        return std::none_of(lines.begin(), lines.end(),
                            [](const auto & l) { return l.status == ConsistencyStatus::violation; });
    }
};

/// Solves every cited entry within the budget and compares against the
/// cited bound.  `extra` names keys to report even though the table has no
/// entry for them.
inline auto consistency_check(const ZTable & table, const SearchConfig & config, const std::vector<ZKey> & extra = {})
    -> ConsistencyReport
{
    ConsistencyReport report;
    for (const auto & cited : table.entries()) {
        ConsistencyLine line;
        line.key = cited.key();
        line.cited = cited.upper;
        auto z = z_exact(cited.m, cited.n, cited.s, cited.t, config);
        if (z.lower > cited.upper)
            line.status = ConsistencyStatus::violation;
        else if (z.provenance == Provenance::computed_exact)
            line.status = ConsistencyStatus::consistent;
        else
            line.status = ConsistencyStatus::lower_only;
        line.computed = std::move(z);
        report.lines.push_back(std::move(line));
    }
    for (const auto & k : extra)
        if (! table.lookup(k.m, k.n, k.s, k.t))
            report.lines.push_back({k, ConsistencyStatus::uncited, std::nullopt, std::nullopt});
    return report;
}

} // namespace bramsey
