#pragma once

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "entropica/coding.hpp"
#include "entropica/distribution.hpp"
#include "entropica/error.hpp"

namespace entropica {

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline bool looks_like_integer(std::string_view s) {
    if (s.empty())
        return false;
    for (char c : s)
        if (c < '0' || c > '9')
            return false;
    return true;
}

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

// Distribution text format, one entry per line:
//
//   <symbol-id decimal><TAB><count-or-probability decimal>
//
// Lines starting with '#' are comments; blank lines are skipped. If every
// value is a plain unsigned integer the file is read as counts, otherwise as
// probabilities (which must sum to 1).
inline SymbolDistribution parse_distribution(std::string_view text,
                                             double tolerance = SymbolDistribution::kDefaultTolerance) {
    std::vector<std::pair<SymbolId, std::string>> raw; // id, value text
    std::size_t line_no = 0;
    bool all_integers = true;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        line = detail::trim(line);
        if (line.empty() || line.front() == '#')
            continue;

        const std::size_t sep = line.find_first_of(" \t");
        if (sep == std::string_view::npos)
            throw Error(errc::parse_error,
                        "line " + std::to_string(line_no) + ": expected <id><TAB><value>");
        const std::string_view id_part = detail::trim(line.substr(0, sep));
        const std::string_view value_part = detail::trim(line.substr(sep));
        if (id_part.empty() || value_part.empty())
            throw Error(errc::parse_error,
                        "line " + std::to_string(line_no) + ": expected <id><TAB><value>");

        SymbolId id = 0;
        auto [p, ec] = std::from_chars(id_part.data(), id_part.data() + id_part.size(), id);
        if (ec != std::errc{} || p != id_part.data() + id_part.size())
            throw Error(errc::parse_error, "line " + std::to_string(line_no) +
                                               ": bad symbol id '" + std::string(id_part) + "'");
        if (!detail::looks_like_integer(value_part))
            all_integers = false;
        raw.emplace_back(id, std::string(value_part));
    }

    if (raw.empty())
        throw Error(errc::empty_alphabet, "no entries in distribution file");

    if (all_integers) {
        std::vector<std::pair<Symbol, std::uint64_t>> counts;
        counts.reserve(raw.size());
        for (auto& [id, value] : raw) {
            std::uint64_t c = 0;
            auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), c);
            if (ec != std::errc{} || p != value.data() + value.size())
                throw Error(errc::parse_error, "bad count '" + value + "'");
            counts.emplace_back(Symbol{id, {}}, c);
        }
        return SymbolDistribution::from_counts(std::move(counts));
    }

    std::vector<std::pair<Symbol, double>> probs;
    probs.reserve(raw.size());
    for (auto& [id, value] : raw) {
        errno = 0;
        char* end = nullptr;
        const double v = std::strtod(value.c_str(), &end);
        if (end != value.c_str() + value.size() || errno != 0)
            throw Error(errc::parse_error, "bad probability '" + value + "'");
        probs.emplace_back(Symbol{id, {}}, v);
    }
    return SymbolDistribution::from_probabilities(std::move(probs), tolerance);
}

inline std::string write_distribution(const SymbolDistribution& dist) {
    std::string out = "# entropica distribution: <symbol-id>\\t<";
    out += dist.has_counts() ? "count" : "probability";
    out += ">\n";
    for (const auto& e : dist.entries()) {
        out += std::to_string(e.symbol.id);
        out += '\t';
        out += dist.has_counts() ? std::to_string(e.count) : detail::format_double(e.weight);
        out += '\n';
    }
    return out;
}

// Code table text format:
//
//   base <b>
//   <symbol-id decimal><TAB><codeword digits as ASCII characters from '0'>
//
// Digit d is written as the character '0' + d, so the format is printable for
// small bases.
inline std::string write_code_table(const CodeTable& table) {
    std::string out = "base " + std::to_string(table.base) + "\n";
    for (const auto& e : table.entries) {
        out += std::to_string(e.symbol);
        out += '\t';
        for (std::uint8_t d : e.code.digits)
            out += static_cast<char>('0' + d);
        out += '\n';
    }
    return out;
}

inline CodeTable parse_code_table(std::string_view text) {
    CodeTable table;
    bool saw_base = false;
    std::size_t line_no = 0;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        line = detail::trim(line);
        if (line.empty() || line.front() == '#')
            continue;

        if (!saw_base) {
            if (!line.starts_with("base"))
                throw Error(errc::parse_error, "line " + std::to_string(line_no) +
                                                   ": expected 'base <b>' header");
            const std::string_view b = detail::trim(line.substr(4));
            unsigned base = 0;
            auto [p, ec] = std::from_chars(b.data(), b.data() + b.size(), base);
            if (ec != std::errc{} || p != b.data() + b.size())
                throw Error(errc::parse_error, "line " + std::to_string(line_no) +
                                                   ": bad base '" + std::string(b) + "'");
            detail::require_code_base(base);
            table.base = base;
            saw_base = true;
            continue;
        }

        const std::size_t sep = line.find_first_of(" \t");
        if (sep == std::string_view::npos)
            throw Error(errc::parse_error, "line " + std::to_string(line_no) +
                                               ": expected <id><TAB><digits>");
        const std::string_view id_part = detail::trim(line.substr(0, sep));
        const std::string_view digit_part = detail::trim(line.substr(sep));

        SymbolId id = 0;
        auto [p, ec] = std::from_chars(id_part.data(), id_part.data() + id_part.size(), id);
        if (ec != std::errc{} || p != id_part.data() + id_part.size())
            throw Error(errc::parse_error, "line " + std::to_string(line_no) +
                                               ": bad symbol id '" + std::string(id_part) + "'");
        if (digit_part.empty())
            throw Error(errc::parse_error,
                        "line " + std::to_string(line_no) + ": empty codeword");

        Codeword code;
        code.base = table.base;
        for (char c : digit_part) {
            const int d = c - '0';
            if (d < 0 || static_cast<unsigned>(d) >= table.base)
                throw Error(errc::parse_error, "line " + std::to_string(line_no) +
                                                   ": digit '" + std::string(1, c) +
                                                   "' out of range for base " +
                                                   std::to_string(table.base));
            code.digits.push_back(static_cast<std::uint8_t>(d));
        }
        table.entries.push_back({id, std::move(code)});
    }

    if (!saw_base)
        throw Error(errc::parse_error, "missing 'base <b>' header");

    std::sort(table.entries.begin(), table.entries.end(),
              [](const CodeTable::Entry& a, const CodeTable::Entry& b) {
                  return a.symbol < b.symbol;
              });
    for (std::size_t i = 1; i < table.entries.size(); ++i)
        if (table.entries[i].symbol == table.entries[i - 1].symbol)
            throw Error(errc::corrupt_table, "duplicate symbol id in table");
    if (!is_prefix_free(table))
        throw Error(errc::corrupt_table, "table is not prefix-free");
    return table;
}

} // namespace entropica
