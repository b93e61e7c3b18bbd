#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "entropica/error.hpp"

namespace entropica {

using SymbolId = std::uint32_t;

// One value a variable can take on. Ids are unique within an alphabet and
// define the total order used for canonical form and all tie-breaking.
// The CLI binds id = byte value (0..255); the library does not care.
struct Symbol {
    SymbolId id = 0;
    std::string label; // optional display string; empty means "show the id"

    friend bool operator==(const Symbol&, const Symbol&) = default;
};

enum class Origin { Counts, Probabilities, Empirical };

// Finite discrete distribution over symbols. Immutable after construction;
// entries are kept sorted by symbol id (canonical form). Count-built
// distributions keep their integer counts so exact arithmetic stays exact.
class SymbolDistribution {
public:
    struct Entry {
        Symbol symbol;
        double weight = 0.0;        // count or probability, as given
        std::uint64_t count = 0;    // meaningful iff has_counts()

        friend bool operator==(const Entry&, const Entry&) = default;
    };

    static constexpr double kDefaultTolerance = 1e-9;

    // weight(i) = count(i), total = sum of counts. Zero-count symbols are
    // retained with probability 0.
    static SymbolDistribution from_counts(std::vector<std::pair<Symbol, std::uint64_t>> counts) {
        if (counts.empty())
            throw Error(errc::empty_alphabet, "no symbols given");
        std::sort(counts.begin(), counts.end(),
                  [](const auto& a, const auto& b) { return a.first.id < b.first.id; });
        std::uint64_t total = 0;
        std::vector<Entry> entries;
        entries.reserve(counts.size());
        for (std::size_t i = 0; i < counts.size(); ++i) {
            if (i > 0 && counts[i].first.id == counts[i - 1].first.id)
                throw Error(errc::duplicate_symbol,
                            "symbol id " + std::to_string(counts[i].first.id) + " appears twice");
            const std::uint64_t c = counts[i].second;
            if (total > std::numeric_limits<std::uint64_t>::max() - c)
                throw Error(errc::domain_error, "count total overflows 64 bits");
            total += c;
            entries.push_back({std::move(counts[i].first), static_cast<double>(c), c});
        }
        if (total == 0)
            throw Error(errc::empty_alphabet, "all counts are zero");
        return SymbolDistribution(std::move(entries), static_cast<double>(total), total,
                                  Origin::Counts);
    }

    // weight(i) = p(i), total = the exact floating sum of the given values,
    // which must land within `tolerance` of 1.
    static SymbolDistribution from_probabilities(std::vector<std::pair<Symbol, double>> probs,
                                                 double tolerance = kDefaultTolerance) {
        if (probs.empty())
            throw Error(errc::empty_alphabet, "no symbols given");
        std::sort(probs.begin(), probs.end(),
                  [](const auto& a, const auto& b) { return a.first.id < b.first.id; });
        double total = 0.0;
        std::vector<Entry> entries;
        entries.reserve(probs.size());
        for (std::size_t i = 0; i < probs.size(); ++i) {
            if (i > 0 && probs[i].first.id == probs[i - 1].first.id)
                throw Error(errc::duplicate_symbol,
                            "symbol id " + std::to_string(probs[i].first.id) + " appears twice");
            const double p = probs[i].second;
            if (p < 0.0)
                throw Error(errc::negative_probability,
                            "p(" + std::to_string(probs[i].first.id) + ") = " + std::to_string(p));
            total += p;
            entries.push_back({std::move(probs[i].first), p, 0});
        }
        if (!(std::fabs(total - 1.0) <= tolerance))
            throw Error(errc::not_normalized,
                        "probabilities sum to " + std::to_string(total) + ", not 1");
        return SymbolDistribution(std::move(entries), total, 0, Origin::Probabilities);
    }

    // Byte-frequency histogram of `data`: symbol ids are the byte values
    // present, weights their occurrence counts.
    static SymbolDistribution empirical_from_bytes(std::span<const std::uint8_t> data) {
        if (data.empty())
            throw Error(errc::empty_input, "no bytes to count");
        std::uint64_t histogram[256] = {};
        for (std::uint8_t b : data)
            ++histogram[b];
        std::vector<Entry> entries;
        for (unsigned v = 0; v < 256; ++v) {
            if (histogram[v] > 0)
                entries.push_back({Symbol{static_cast<SymbolId>(v), {}},
                                   static_cast<double>(histogram[v]), histogram[v]});
        }
        return SymbolDistribution(std::move(entries), static_cast<double>(data.size()),
                                  data.size(), Origin::Empirical);
    }

    // weight/total for a present symbol, 0 for an absent one.
    double probability(SymbolId id) const {
        const Entry* e = find(id);
        return e ? e->weight / total_ : 0.0;
    }

    const Entry* find(SymbolId id) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                                   [](const Entry& e, SymbolId v) { return e.symbol.id < v; });
        if (it == entries_.end() || it->symbol.id != id)
            return nullptr;
        return &*it;
    }

    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    double total() const { return total_; }
    std::uint64_t total_count() const { return total_count_; }
    Origin origin() const { return origin_; }

    // Counts and Empirical distributions carry exact integer weights.
    bool has_counts() const { return origin_ != Origin::Probabilities; }

    std::size_t nonzero_count() const {
        return static_cast<std::size_t>(
            std::count_if(entries_.begin(), entries_.end(),
                          [](const Entry& e) { return e.weight > 0.0; }));
    }

    friend bool operator==(const SymbolDistribution&, const SymbolDistribution&) = default;

private:
    SymbolDistribution(std::vector<Entry> entries, double total, std::uint64_t total_count,
                       Origin origin)
        : entries_(std::move(entries)), total_(total), total_count_(total_count),
          origin_(origin) {}

    std::vector<Entry> entries_; // sorted by symbol id
    double total_ = 0.0;
    std::uint64_t total_count_ = 0;
    Origin origin_ = Origin::Counts;
};

} // namespace entropica
