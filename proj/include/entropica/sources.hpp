#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "entropica/distribution.hpp"
#include "entropica/error.hpp"

namespace entropica {

// Fixed 64-bit generator so sequences are reproducible bit-for-bit on every
// platform. State update, written out:
//
//   seeding (one splitmix64 step):
//     z = seed + 0x9E3779B97F4A7C15
//     z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//     z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//     state = z ^ (z >> 31)          (if 0, state = 0x9E3779B97F4A7C15)
//
//   per draw (xorshift64*):
//     state ^= state >> 12
//     state ^= state << 25
//     state ^= state >> 27
//     output = state * 0x2545F4914F6CDD1D
//
// All arithmetic is modulo 2^64.
class Xorshift64Star {
public:
    explicit Xorshift64Star(std::uint64_t seed) {
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        state_ = z ^ (z >> 31);
        if (state_ == 0)
            state_ = 0x9E3779B97F4A7C15ull;
    }

    std::uint64_t next() {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545F4914F6CDD1Dull;
    }

    // Uniform in [0,1) with 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// A named process generating symbols from a fixed distribution.
struct SourceModel {
    std::string name;
    SymbolDistribution dist;
    std::uint64_t seed = 0;
};

namespace detail {

inline Symbol sym(SymbolId id, std::string label) { return Symbol{id, std::move(label)}; }

} // namespace detail

// The built-in example sources. Count-built models sample by exact integer
// cumulative inversion; probability-built ones by float cumulative sums.
//
//   constant-coin     {H: 1.0}
//   fair-coin         {H: 0.5, T: 0.5}
//   fair-die          uniform over faces 1..6
//   biased-die-80     face 3 at 0.8, the other five at 0.04
//   abc-half-quarter  counts {a: 2, b: 1, c: 1}
//   tri27             counts {a: 9, b..s: 1 each} (total 27)
//
// Symbol ids are the ASCII codes of the labels, so `--bytes` output is text.
inline SourceModel builtin(const std::string& name, std::uint64_t seed = 0) {
    using detail::sym;
    if (name == "constant-coin") {
        return {name,
                SymbolDistribution::from_probabilities({{sym('H', "H"), 1.0}}), seed};
    }
    if (name == "fair-coin") {
        return {name,
                SymbolDistribution::from_probabilities(
                    {{sym('H', "H"), 0.5}, {sym('T', "T"), 0.5}}),
                seed};
    }
    if (name == "fair-die") {
        std::vector<std::pair<Symbol, std::uint64_t>> faces;
        for (char f = '1'; f <= '6'; ++f)
            faces.emplace_back(sym(static_cast<SymbolId>(f), std::string(1, f)), 1);
        return {name, SymbolDistribution::from_counts(std::move(faces)), seed};
    }
    if (name == "biased-die-80") {
        std::vector<std::pair<Symbol, double>> faces;
        for (char f = '1'; f <= '6'; ++f)
            faces.emplace_back(sym(static_cast<SymbolId>(f), std::string(1, f)),
                               f == '3' ? 0.8 : 0.04);
        return {name, SymbolDistribution::from_probabilities(std::move(faces)), seed};
    }
    if (name == "abc-half-quarter") {
        return {name,
                SymbolDistribution::from_counts(
                    {{sym('a', "a"), 2}, {sym('b', "b"), 1}, {sym('c', "c"), 1}}),
                seed};
    }
    if (name == "tri27") {
        std::vector<std::pair<Symbol, std::uint64_t>> values;
        values.emplace_back(sym('a', "a"), 9);
        for (char v = 'b'; v <= 's'; ++v)
            values.emplace_back(sym(static_cast<SymbolId>(v), std::string(1, v)), 1);
        return {name, SymbolDistribution::from_counts(std::move(values)), seed};
    }
    throw Error(errc::unknown_model, name);
}

inline const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names = {
        "constant-coin", "fair-coin",        "fair-die",
        "biased-die-80", "abc-half-quarter", "tri27",
    };
    return names;
}

// n independent draws, mapped by cumulative inversion over the entries in
// canonical (symbol id) order. Deterministic for a fixed (dist, seed).
inline std::vector<SymbolId> sample(const SourceModel& model, std::size_t n) {
    std::vector<SymbolId> out;
    out.reserve(n);
    Xorshift64Star rng(model.seed);
    const auto& entries = model.dist.entries();

    if (model.dist.has_counts()) {
        std::vector<std::uint64_t> cumulative;
        std::vector<SymbolId> ids;
        std::uint64_t running = 0;
        for (const auto& e : entries) {
            if (e.count == 0)
                continue;
            running += e.count;
            cumulative.push_back(running);
            ids.push_back(e.symbol.id);
        }
        const std::uint64_t total = running;
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint64_t r = rng.next() % total;
            const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
            out.push_back(ids[static_cast<std::size_t>(it - cumulative.begin())]);
        }
        return out;
    }

    std::vector<double> cumulative;
    std::vector<SymbolId> ids;
    double running = 0.0;
    for (const auto& e : entries) {
        if (e.weight == 0.0)
            continue;
        running += e.weight / model.dist.total();
        cumulative.push_back(running);
        ids.push_back(e.symbol.id);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double x = rng.next_unit();
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
        if (it == cumulative.end())
            --it; // x beyond the last cumulative sum (float shortfall): clamp
        out.push_back(ids[static_cast<std::size_t>(it - cumulative.begin())]);
    }
    return out;
}

} // namespace entropica
