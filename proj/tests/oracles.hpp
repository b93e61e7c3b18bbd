#pragma once

// Test-only oracles, independent of the library code paths they check.

#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "entropica/distribution.hpp"
#include "entropica/sources.hpp"

namespace oracles {

// Entropy by direct long-double evaluation of the sum, term by term.
inline double entropy_longdouble(const std::vector<long double>& probs, unsigned base) {
    long double h = 0.0L;
    for (long double p : probs)
        if (p > 0.0L)
            h -= p * (std::log(p) / std::log(static_cast<long double>(base)));
    return static_cast<double>(h);
}

// Minimum probability-weighted length over every binary prefix-free length
// assignment with lengths in 1..max_len. Kraft feasibility is checked in
// exact integer arithmetic: sum of 2^(max_len - l_i) <= 2^max_len.
inline double best_prefix_code_average(const std::vector<double>& probs, int max_len = 6) {
    const std::size_t k = probs.size();
    std::vector<int> lengths(k, 1);
    double best = std::numeric_limits<double>::infinity();

    const std::uint64_t budget = 1ull << max_len;
    while (true) {
        std::uint64_t kraft = 0;
        for (int l : lengths)
            kraft += 1ull << (max_len - l);
        if (kraft <= budget) {
            double avg = 0.0;
            for (std::size_t i = 0; i < k; ++i)
                avg += probs[i] * lengths[i];
            best = std::min(best, avg);
        }
        // odometer over length tuples
        std::size_t i = 0;
        while (i < k && lengths[i] == max_len)
            lengths[i++] = 1;
        if (i == k)
            break;
        ++lengths[i];
    }
    return best;
}

// Deterministic random distributions for the property suites.
struct DistGen {
    entropica::Xorshift64Star rng;

    explicit DistGen(std::uint64_t seed) : rng(seed) {}

    // Random count-built distribution: `alphabet` symbols with distinct ids,
    // counts in 1..max_count, and optionally a few zero-count symbols mixed in.
    entropica::SymbolDistribution counts(std::size_t alphabet, std::uint64_t max_count = 1000,
                                         bool with_zeros = false) {
        std::vector<std::pair<entropica::Symbol, std::uint64_t>> pairs;
        entropica::SymbolId id = 0;
        for (std::size_t i = 0; i < alphabet; ++i) {
            id += 1 + static_cast<entropica::SymbolId>(rng.next() % 5);
            std::uint64_t c = 1 + rng.next() % max_count;
            if (with_zeros && rng.next() % 4 == 0 && alphabet > 1)
                c = 0;
            pairs.emplace_back(entropica::Symbol{id, {}}, c);
        }
        bool any = false;
        for (auto& p : pairs)
            any = any || p.second > 0;
        if (!any)
            pairs.front().second = 1;
        return entropica::SymbolDistribution::from_counts(std::move(pairs));
    }

    // Random probability-built distribution (normalized random weights).
    entropica::SymbolDistribution probabilities(std::size_t alphabet) {
        std::vector<double> w(alphabet);
        double total = 0.0;
        for (auto& x : w) {
            x = rng.next_unit() + 1e-6;
            total += x;
        }
        std::vector<std::pair<entropica::Symbol, double>> pairs;
        entropica::SymbolId id = 0;
        for (std::size_t i = 0; i < alphabet; ++i) {
            id += 1 + static_cast<entropica::SymbolId>(rng.next() % 5);
            pairs.emplace_back(entropica::Symbol{id, {}}, w[i] / total);
        }
        return entropica::SymbolDistribution::from_probabilities(std::move(pairs), 1e-6);
    }
};

} // namespace oracles
