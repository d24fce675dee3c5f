#pragma once

#include <bramsey/bigraph.hpp>

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bramsey {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string & what) :
        std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line),
        detail_(what)
    {
    }

    auto line() const noexcept -> std::size_t { return line_; }
    auto detail() const -> const std::string & { return detail_; }

private:
    std::size_t line_;
    std::string detail_;
};

namespace detail {

    struct Line {
        std::size_t number;
        std::string text;
    };

    /// Splits into lines, keeping empty ones (they mean empty neighborhoods)
    /// but dropping a single trailing newline and '\r'.
    inline auto split_lines(std::string_view text) -> std::vector<Line>
    {
        std::vector<Line> out;
        std::size_t start = 0, number = 1;
        while (start <= text.size()) {
            auto end = text.find('\n', start);
            if (end == std::string_view::npos)
                end = text.size();
            std::string line(text.substr(start, end - start));
            if (! line.empty() && line.back() == '\r')
                line.pop_back();
            out.push_back({number++, std::move(line)});
            if (end == text.size())
                break;
            start = end + 1;
        }
        if (! out.empty() && out.back().text.empty())
            out.pop_back();
        return out;
    }

    inline auto is_comment(const std::string & s) -> bool { return ! s.empty() && s[0] == '#'; }

    inline auto parse_count(const std::string & token, std::size_t line) -> std::size_t
    {
        if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError(line, "expected a non-negative integer, got '" + token + "'");
        try {
            return std::stoull(token);
        }
        catch (const std::out_of_range &) {
            throw ParseError(line, "integer out of range: " + token);
        }
    }

    inline auto tokens(const std::string & s) -> std::vector<std::string>
    {
        std::istringstream in(s);
        std::vector<std::string> out;
        for (std::string t; in >> t;)
            out.push_back(t);
        return out;
    }

    /// Drops leading comment lines and parses the "m n" header.
    inline auto parse_header(const std::vector<Line> & lines, std::size_t & pos) -> std::pair<std::size_t, std::size_t>
    {
        while (pos < lines.size() && is_comment(lines[pos].text))
            ++pos;
        if (pos == lines.size())
            throw ParseError(lines.empty() ? 1 : lines.back().number, "missing 'm n' header");
        auto head = tokens(lines[pos].text);
        if (head.size() != 2)
            throw ParseError(lines[pos].number, "header must be 'm n'");
        auto m = parse_count(head[0], lines[pos].number);
        auto n = parse_count(head[1], lines[pos].number);
        ++pos;
        return {m, n};
    }

    /// The m body lines after the header; comment lines are not allowed in
    /// the body.
    inline auto body_lines(const std::vector<Line> & lines, std::size_t pos, std::size_t m) -> std::vector<Line>
    {
        std::vector<Line> body(lines.begin() + static_cast<std::ptrdiff_t>(pos), lines.end());
        if (body.size() != m)
            throw ParseError(body.size() > m ? body[m].number : (lines.empty() ? 1 : lines.back().number),
                             "expected " + std::to_string(m) + " rows, found " + std::to_string(body.size()));
        for (const auto & l : body)
            if (is_comment(l.text))
                throw ParseError(l.number, "comment inside graph body");
        return body;
    }

} // namespace detail

/// "m n" then m lines of n characters from {0,1}.
inline auto write_matrix(const BipartiteGraph & g) -> std::string
{
    std::string out = std::to_string(g.m()) + " " + std::to_string(g.n()) + "\n";
    for (std::size_t i = 0; i < g.m(); ++i) {
        for (std::size_t j = 0; j < g.n(); ++j)
            out += g.row(i).test(j) ? '1' : '0';
        out += '\n';
    }
    return out;
}

inline auto read_matrix(std::string_view text) -> BipartiteGraph
{
    auto lines = detail::split_lines(text);
    std::size_t pos = 0;
    auto [m, n] = detail::parse_header(lines, pos);
    auto body = detail::body_lines(lines, pos, m);
    BipartiteGraph g(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        const auto & [number, row] = body[i];
        if (row.size() != n)
            throw ParseError(number, "row must have exactly " + std::to_string(n) + " characters");
        for (std::size_t j = 0; j < n; ++j) {
            if (row[j] == '1')
                g.add_edge(i, j);
            else if (row[j] != '0')
                throw ParseError(number, std::string("unexpected character '") + row[j] + "'");
        }
    }
    return g;
}

/// "m n" then m lines of space-separated 1-based column indices.
inline auto write_neighbor_lists(const BipartiteGraph & g) -> std::string
{
    std::string out = std::to_string(g.m()) + " " + std::to_string(g.n()) + "\n";
    for (std::size_t i = 0; i < g.m(); ++i) {
        bool first = true;
        g.row(i).for_each([&](std::size_t j) {
            if (! first)
                out += ' ';
            out += std::to_string(j + 1);
            first = false;
        });
        out += '\n';
    }
    return out;
}

inline auto read_neighbor_lists(std::string_view text) -> BipartiteGraph
{
    auto lines = detail::split_lines(text);
    std::size_t pos = 0;
    auto [m, n] = detail::parse_header(lines, pos);
    auto body = detail::body_lines(lines, pos, m);
    BipartiteGraph g(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        const auto & [number, row] = body[i];
        for (const auto & tok : detail::tokens(row)) {
            auto j = detail::parse_count(tok, number);
            if (j == 0 || j > n)
                throw ParseError(number, "column index " + tok + " outside 1.." + std::to_string(n));
            g.add_edge(i, j - 1);
        }
    }
    return g;
}

/// Matrix format if every body line is an n-character 0/1 string, otherwise
/// neighbor lists.
inline auto read_graph(std::string_view text) -> BipartiteGraph
{
    auto lines = detail::split_lines(text);
    std::size_t pos = 0;
    auto [m, n] = detail::parse_header(lines, pos);
    bool matrix = m > 0 && lines.size() - pos == m;
    for (std::size_t k = pos; matrix && k < lines.size(); ++k)
        matrix = lines[k].text.size() == n && lines[k].text.find_first_not_of("01") == std::string::npos;
    return matrix ? read_matrix(text) : read_neighbor_lists(text);
}

} // namespace bramsey
