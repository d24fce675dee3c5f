#pragma once

#include <bramsey/arrowing.hpp>
#include <bramsey/sat_bridge.hpp>
#include <bramsey/witnesses.hpp>

#include <optional>
#include <string>
#include <vector>

namespace bramsey {

enum class RowVerdict { reproduced, partially_reproduced, discrepancy };

inline auto to_string(RowVerdict v) -> std::string
{
    switch (v) {
    case RowVerdict::reproduced:
        return "reproduced";
    case RowVerdict::partially_reproduced:
        return "partially-reproduced";
    case RowVerdict::discrepancy:
        return "discrepancy";
    }
    return "?";
}

/// One line of the BR_m(K_{2,2}, K_{4,4}) table.
struct ReproductionRow {
    std::size_t m = 0;
    /// Published BR_m; empty when the number does not exist.
    std::optional<std::size_t> claimed;
    /// Diagonal row: checks BR(K_{2,2}, K_{4,4}) on K_{m,m}.
    bool diagonal = false;
    std::string lower_status;
    std::string upper_status;
    RowVerdict verdict = RowVerdict::partially_reproduced;
};

/// Published values: none for m = 2..4, 26, 22, 22, 16, then 14 up to m = 13.
inline auto claimed_brm(std::size_t m) -> std::optional<std::size_t>
{
    if (m <= 4)
        return std::nullopt;
    if (m == 5)
        return 26;
    if (m <= 7)
        return 22;
    if (m == 8)
        return 16;
    return 14;
}

/// Host sizes at which the nonexistence family is checked.
inline const std::vector<std::size_t> nonexistence_sample_n{1, 26, 100, 260};

namespace detail {

    inline auto describe_lower(const ArrowDecision & d) -> std::string
    {
        std::string at = " at " + std::to_string(d.m) + "x" + std::to_string(d.n);
        switch (d.verdict) {
        case Verdict::not_arrows: {
            auto w = std::get_if<WitnessCertificate>(&d.certificate);
            return "witness " + w->source + " verified" + at;
        }
        case Verdict::arrows:
            return "no good coloring" + at + " (contradicts the published value)";
        case Verdict::unknown:
            return "search inconclusive" + at + " (nodes=" + std::to_string(d.diagnostics->nodes) + ")";
        }
        return "?";
    }

    inline auto describe_upper(const ArrowDecision & d) -> std::string
    {
        std::string at = " at " + std::to_string(d.m) + "x" + std::to_string(d.n);
        if (auto c = std::get_if<CountingCertificate>(&d.certificate))
            return "counting z1<=" + std::to_string(c->z1_upper) + " z2<=" + std::to_string(c->z2_upper) + " < " +
                   std::to_string(c->edges) + at;
        if (auto e = std::get_if<ExhaustiveCertificate>(&d.certificate)) {
            std::string s = "exhaustive search nodes=" + std::to_string(e->nodes_explored) + at;
            for (const auto & a : e->assumptions)
                s += "; " + a;
            return s;
        }
        if (d.verdict == Verdict::not_arrows)
            return "good coloring found" + at + " (contradicts the published value)";
        auto cnf = encode(d.m, d.n, d.shape1, d.shape2);
        return "SAT-pending" + at + " digest=" + instance_digest(cnf) +
               " (search nodes=" + std::to_string(d.diagnostics->nodes) + ")";
    }

    inline auto combine(Verdict lower, Verdict upper) -> RowVerdict
    {
        if (lower == Verdict::arrows || upper == Verdict::not_arrows)
            return RowVerdict::discrepancy;
        if (lower == Verdict::not_arrows && upper == Verdict::arrows)
            return RowVerdict::reproduced;
        return RowVerdict::partially_reproduced;
    }

} // namespace detail

/// Certifies each published value from both sides: a good coloring of
/// K_{m,N-1} and an arrowing certificate for K_{m,N}.  Rows whose search
/// runs out of budget are reported as partially reproduced.
inline auto reproduce(const SearchConfig & config) -> std::vector<ReproductionRow>
{
    const BicliqueShape k22{2, 2}, k44{4, 4};
    ArrowOptions options;
    auto remember = [&](const ArrowDecision & d) {
        auto w = std::get_if<WitnessCertificate>(&d.certificate);
        if (w && w->source == "search")
            options.extra_witnesses.push_back(
                {w->graph, "search-" + std::to_string(d.m) + "x" + std::to_string(d.n)});
    };

    // Largest hosts first, so colorings found by search serve smaller rows.
    std::vector<ReproductionRow> rows;
    {
        ReproductionRow r;
        r.m = 14;
        r.claimed = 14;
        r.diagonal = true;
        auto lower = arrows(13, 13, k22, k44, config, options);
        remember(lower);
        auto upper = arrows(14, 14, k22, k44, config, options);
        r.lower_status = detail::describe_lower(lower);
        r.upper_status = detail::describe_upper(upper);
        r.verdict = detail::combine(lower.verdict, upper.verdict);
        rows.push_back(r);
    }
    for (std::size_t m = 13; m >= 5; --m) {
        ReproductionRow r;
        r.m = m;
        r.claimed = claimed_brm(m);
        auto lower = arrows(m, *r.claimed - 1, k22, k44, config, options);
        remember(lower);
        auto upper = arrows(m, *r.claimed, k22, k44, config, options);
        r.lower_status = detail::describe_lower(lower);
        r.upper_status = detail::describe_upper(upper);
        r.verdict = detail::combine(lower.verdict, upper.verdict);
        rows.push_back(r);
    }
    for (std::size_t m = 4; m >= 2; --m) {
        ReproductionRow r;
        r.m = m;
        bool all_good = true;
        std::string sizes;
        for (auto n : nonexistence_sample_n) {
            all_good = all_good && is_good_coloring(nonexistence_family(m, n), k22, k44);
            sizes += (sizes.empty() ? "" : ",") + std::to_string(n);
        }
        r.lower_status = std::string("nonexistence family ") + (all_good ? "verified" : "FAILED") + " at n in {" +
                         sizes + "}";
        r.upper_status = "none (no n arrows)";
        r.verdict = all_good ? RowVerdict::reproduced : RowVerdict::discrepancy;
        rows.push_back(r);
    }
    std::reverse(rows.begin(), rows.end());
    std::stable_partition(rows.begin(), rows.end(), [](const auto & r) { return ! r.diagonal; });
    return rows;
}

inline auto format_row(const ReproductionRow & r) -> std::string
{
    std::string out = (r.diagonal ? "BR(K22,K44) m=n=" : "m=") + std::to_string(r.m);
    out += " claimed=" + (r.claimed ? std::to_string(*r.claimed) : std::string("none"));
    out += " | lower: " + r.lower_status;
    out += " | upper: " + r.upper_status;
    out += " | " + to_string(r.verdict);
    return out;
}

} // namespace bramsey
