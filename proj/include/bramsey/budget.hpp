#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace bramsey {

/// Parses a node budget written as "1000000", "10^6" or "1e6".
inline auto parse_budget(const std::string & text) -> std::uint64_t
{
    auto digits = [&](const std::string & s) {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad budget '" + text + "'");
        return std::stoull(s);
    };
    auto power = [&](std::uint64_t base, std::uint64_t mantissa, std::uint64_t exp) {
        std::uint64_t v = mantissa;
        for (std::uint64_t k = 0; k < exp; ++k) {
            if (v > std::numeric_limits<std::uint64_t>::max() / base)
                throw std::invalid_argument("budget '" + text + "' out of range");
            v *= base;
        }
        return v;
    };
    std::uint64_t value = 0;
    if (auto caret = text.find('^'); caret != std::string::npos)
        value = power(digits(text.substr(0, caret)), 1, digits(text.substr(caret + 1)));
    else if (auto e = text.find_first_of("eE"); e != std::string::npos)
        value = power(10, digits(text.substr(0, e)), digits(text.substr(e + 1)));
    else
        value = digits(text);
    if (value == 0)
        throw std::invalid_argument("budget must be at least 1");
    return value;
}

} // namespace bramsey
