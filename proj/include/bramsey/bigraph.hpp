#pragma once

#include <bramsey/bitset.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bramsey {

/// Raised when an edge names a vertex outside the host K_{m,n}.
class EdgeRangeError : public std::out_of_range {
public:
    EdgeRangeError(std::size_t row, std::size_t col, std::size_t m, std::size_t n) :
        std::out_of_range("edge (" + std::to_string(row) + ", " + std::to_string(col) + ") outside host K_{" +
                          std::to_string(m) + "," + std::to_string(n) + "}"),
        row_(row),
        col_(col)
    {
    }

    auto row() const noexcept -> std::size_t { return row_; }
    auto col() const noexcept -> std::size_t { return col_; }

private:
    std::size_t row_, col_;
};

/// Subgraph G of K_{m,n}.  X = rows x_0..x_{m-1}, Y = columns y_0..y_{n-1};
/// row i holds N_G(x_i) as an n-bit set.
class BipartiteGraph {
public:
    BipartiteGraph() = default;

    BipartiteGraph(std::size_t m, std::size_t n) : n_(n), rows_(m, BitSet(n)) {}

    static auto complete(std::size_t m, std::size_t n) -> BipartiteGraph
    {
        BipartiteGraph g(m, n);
        for (auto & r : g.rows_)
            r = BitSet::full(n);
        return g;
    }

    auto m() const noexcept -> std::size_t { return rows_.size(); }
    auto n() const noexcept -> std::size_t { return n_; }

    auto row(std::size_t i) const -> const BitSet & { return rows_.at(i); }

    auto has_edge(std::size_t i, std::size_t j) const -> bool
    {
        check(i, j);
        return rows_[i].test(j);
    }

    auto add_edge(std::size_t i, std::size_t j) -> BipartiteGraph &
    {
        check(i, j);
        rows_[i].set(j);
        return *this;
    }

    auto remove_edge(std::size_t i, std::size_t j) -> BipartiteGraph &
    {
        check(i, j);
        rows_[i].reset(j);
        return *this;
    }

    auto degree_x(std::size_t i) const -> std::size_t { return row(i).count(); }

    auto degree_y(std::size_t j) const -> std::size_t
    {
        std::size_t d = 0;
        for (const auto & r : rows_)
            d += r.test(j) ? 1 : 0;
        return d;
    }

    /// N_G(y_j) as an m-bit set.
    auto column(std::size_t j) const -> BitSet
    {
        BitSet c(m());
        for (std::size_t i = 0; i < m(); ++i)
            if (rows_[i].test(j))
                c.set(i);
        return c;
    }

    auto edge_count() const noexcept -> std::size_t
    {
        std::size_t e = 0;
        for (const auto & r : rows_)
            e += r.count();
        return e;
    }

    /// The same graph with the roles of X and Y exchanged.
    auto transpose() const -> BipartiteGraph
    {
        BipartiteGraph t(n_, m());
        for (std::size_t j = 0; j < n_; ++j)
            t.rows_[j] = column(j);
        return t;
    }

    /// Induced subgraph on the first `rows` X-vertices and first `cols` Y-vertices.
    auto restrict_to(std::size_t rows, std::size_t cols) const -> BipartiteGraph
    {
        if (rows > m() || cols > n_)
            throw std::invalid_argument("restrict_to: target larger than graph");
        BipartiteGraph r(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            rows_[i].for_each([&](std::size_t j) {
                if (j < cols)
                    r.rows_[i].set(j);
            });
        return r;
    }

    friend auto operator==(const BipartiteGraph &, const BipartiteGraph &) -> bool = default;

    /// Row-major lexicographic order on the adjacency matrix, used for
    /// deterministic tie-breaking between equally good graphs.
    friend auto matrix_less(const BipartiteGraph & a, const BipartiteGraph & b) -> bool
    {
        if (a.m() != b.m() || a.n() != b.n())
            return std::pair{a.m(), a.n()} < std::pair{b.m(), b.n()};
        for (std::size_t i = 0; i < a.m(); ++i)
            for (std::size_t j = 0; j < a.n(); ++j)
                if (a.rows_[i].test(j) != b.rows_[i].test(j))
                    return b.rows_[i].test(j);
        return false;
    }

private:
    void check(std::size_t i, std::size_t j) const
    {
        if (i >= m() || j >= n_)
            throw EdgeRangeError(i, j, m(), n_);
    }

    std::size_t n_ = 0;
    std::vector<BitSet> rows_;
};

/// K_{s,t} with s vertices on the X side and t on the Y side.
struct BicliqueShape {
    std::size_t s = 1;
    std::size_t t = 1;

    BicliqueShape() = default;
    BicliqueShape(std::size_t rows, std::size_t cols) : s(rows), t(cols)
    {
        if (s < 1 || t < 1)
            throw std::invalid_argument("biclique shape needs s >= 1 and t >= 1");
    }

    auto transposed() const -> BicliqueShape { return {t, s}; }

    friend auto operator==(const BicliqueShape &, const BicliqueShape &) -> bool = default;
};

inline auto to_string(const BicliqueShape & shape) -> std::string
{
    return "K_{" + std::to_string(shape.s) + "," + std::to_string(shape.t) + "}";
}

/// A concrete copy of K_{s,t}: sorted 0-based row and column indices.
struct Biclique {
    std::vector<std::size_t> row_set;
    std::vector<std::size_t> col_set;

    friend auto operator==(const Biclique &, const Biclique &) -> bool = default;
};

inline auto from_neighbor_lists(std::size_t m, std::size_t n, const std::vector<std::vector<std::size_t>> & lists)
    -> BipartiteGraph
{
    if (lists.size() != m)
        throw std::invalid_argument("from_neighbor_lists: expected " + std::to_string(m) + " lists, got " +
                                    std::to_string(lists.size()));
    BipartiteGraph g(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (auto j : lists[i])
            g.add_edge(i, j);
    return g;
}

inline auto complement(const BipartiteGraph & g) -> BipartiteGraph
{
    auto c = BipartiteGraph::complete(g.m(), g.n());
    for (std::size_t i = 0; i < g.m(); ++i)
        g.row(i).for_each([&](std::size_t j) { c.remove_edge(i, j); });
    return c;
}

inline auto edge_count(const BipartiteGraph & g) noexcept -> std::size_t { return g.edge_count(); }

/// Δ(G_X); 0 for a graph with no rows.
inline auto max_degree_x(const BipartiteGraph & g) -> std::size_t
{
    std::size_t d = 0;
    for (std::size_t i = 0; i < g.m(); ++i)
        d = std::max(d, g.degree_x(i));
    return d;
}

/// Columns adjacent to every selected row; all columns for an empty selection.
inline auto common_neighborhood(const BipartiteGraph & g, std::span<const std::size_t> rows) -> BitSet
{
    auto result = BitSet::full(g.n());
    for (auto i : rows)
        result &= g.row(i);
    return result;
}

/// Checks that every (row, col) pair of `b` is an edge of `g` and that the
/// sets are well formed.
inline auto is_biclique_of(const BipartiteGraph & g, const Biclique & b, const BicliqueShape & shape) -> bool
{
    if (b.row_set.size() != shape.s || b.col_set.size() != shape.t)
        return false;
    if (! std::is_sorted(b.row_set.begin(), b.row_set.end()) ||
        std::adjacent_find(b.row_set.begin(), b.row_set.end()) != b.row_set.end())
        return false;
    if (! std::is_sorted(b.col_set.begin(), b.col_set.end()) ||
        std::adjacent_find(b.col_set.begin(), b.col_set.end()) != b.col_set.end())
        return false;
    for (auto i : b.row_set)
        for (auto j : b.col_set)
            if (i >= g.m() || j >= g.n() || ! g.row(i).test(j))
                return false;
    return true;
}

namespace detail {

    inline auto extend_biclique(const BipartiteGraph & g, const BicliqueShape & shape, std::vector<std::size_t> & chosen,
                                const BitSet & common, std::size_t next_row) -> bool
    {
        if (chosen.size() == shape.s)
            return true;
        std::size_t still_needed = shape.s - chosen.size();
        for (std::size_t i = next_row; i + still_needed <= g.m(); ++i) {
            auto narrowed = common & g.row(i);
            if (narrowed.count() < shape.t)
                continue;
            chosen.push_back(i);
            if (extend_biclique(g, shape, chosen, narrowed, i + 1))
                return true;
            chosen.pop_back();
        }
        return false;
    }

} // namespace detail

/// Finds K_{s,t} in g with s rows and t columns.  The witness returned is the
/// lexicographically least (row_set, col_set) pair.
inline auto contains_biclique(const BipartiteGraph & g, const BicliqueShape & shape) -> std::optional<Biclique>
{
    if (shape.s > g.m() || shape.t > g.n())
        return std::nullopt;

    std::vector<std::size_t> chosen;
    chosen.reserve(shape.s);
    auto all = BitSet::full(g.n());
    if (! detail::extend_biclique(g, shape, chosen, all, 0))
        return std::nullopt;

    auto cols = common_neighborhood(g, chosen).indices();
    cols.resize(shape.t);
    return Biclique{std::move(chosen), std::move(cols)};
}

/// A good coloring for (shape1, shape2): shape1 absent from g, shape2 absent
/// from its complement.
inline auto is_good_coloring(const BipartiteGraph & g, const BicliqueShape & shape1, const BicliqueShape & shape2)
    -> bool
{
    return ! contains_biclique(g, shape1) && ! contains_biclique(complement(g), shape2);
}

} // namespace bramsey
