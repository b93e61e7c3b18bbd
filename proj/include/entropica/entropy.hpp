#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "entropica/coding.hpp"
#include "entropica/distribution.hpp"
#include "entropica/error.hpp"

namespace entropica {

namespace detail {

inline void require_log_base(unsigned base) {
    if (base < 2)
        throw Error(errc::bad_base, "base " + std::to_string(base) + " < 2");
}

// All logarithms are natural-log ratios; relative accuracy is ~1e-15,
// comfortably inside the 1e-12 targets.
inline double log_in_base(double x, unsigned base) {
    return std::log(x) / std::log(static_cast<double>(base));
}

} // namespace detail

// Self-information log_base(1/p) of an outcome with probability p:
// the number of base-D digits needed to single it out.
inline double surprisal(double p, unsigned base = 2) {
    detail::require_log_base(base);
    if (!(p > 0.0) || p > 1.0)
        throw Error(errc::domain_error, "surprisal needs 0 < p <= 1, got " + std::to_string(p));
    if (p == 1.0)
        return 0.0;
    return -detail::log_in_base(p, base);
}

// One term of the entropy sum: -p * log_base(p), with 0 log 0 = 0.
inline double entropy_term(double p, unsigned base = 2) {
    detail::require_log_base(base);
    if (p < 0.0 || p > 1.0)
        throw Error(errc::domain_error, "entropy_term needs 0 <= p <= 1, got " + std::to_string(p));
    if (p == 0.0 || p == 1.0)
        return 0.0;
    return -(p * std::log(p)) / std::log(static_cast<double>(base));
}

// Shannon entropy of the distribution in base-D digits per symbol.
inline double entropy(const SymbolDistribution& dist, unsigned base = 2) {
    detail::require_log_base(base);
    double h = 0.0;
    for (const auto& e : dist.entries())
        h += entropy_term(e.weight / dist.total(), base);
    return h;
}

// Fixed-width digits per symbol for the raw data of an alphabet:
// ceil(log_base(alphabet_size)), at least 1. Exact integer arithmetic.
inline unsigned raw_storage_digits(std::uint64_t alphabet_size, unsigned base = 2) {
    detail::require_log_base(base);
    if (alphabet_size == 0)
        throw Error(errc::domain_error, "alphabet size must be at least 1");
    unsigned digits = 1;
    std::uint64_t capacity = base;
    while (capacity < alphabet_size) {
        if (capacity > std::numeric_limits<std::uint64_t>::max() / base)
            return digits + 1; // next multiply would overflow, so it covers everything
        capacity *= base;
        ++digits;
    }
    return digits;
}

// "bits" / "trits" / "digits (base b)" for report rendering.
inline std::string entropy_unit(unsigned base) {
    if (base == 2)
        return "bits";
    if (base == 3)
        return "trits";
    return "digits (base " + std::to_string(base) + ")";
}

// Information content vs raw storage for one distribution, optionally
// contrasted with a concrete code table.
struct EntropyReport {
    double entropy = 0.0;        // base-D digits per symbol
    unsigned base = 2;
    std::size_t alphabet_size = 0;
    unsigned raw_digits = 1;     // fixed-width digits per symbol
    std::optional<double> avg_code_length; // present iff a table was supplied
    std::optional<double> redundancy;      // avg_code_length - entropy
};

inline EntropyReport report(const SymbolDistribution& dist, unsigned base = 2,
                            const CodeTable* table = nullptr) {
    detail::require_log_base(base);
    EntropyReport r;
    r.base = base;
    r.alphabet_size = dist.size();
    r.entropy = entropy(dist, base);
    r.raw_digits = raw_storage_digits(r.alphabet_size, base);
    if (table) {
        if (table->base != base)
            throw Error(errc::bad_base, "table base " + std::to_string(table->base) +
                                            " differs from report base " + std::to_string(base));
        r.avg_code_length = average_code_length(*table, dist); // checks coverage
        r.redundancy = *r.avg_code_length - r.entropy;
    }
    return r;
}

} // namespace entropica
