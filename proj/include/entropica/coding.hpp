#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "entropica/distribution.hpp"
#include "entropica/error.hpp"

namespace entropica {

// Digits are stored one per byte, so bases above 256 have no representation.
inline constexpr unsigned kMaxBase = 256;

// A base-D string of digits, most significant first. Never empty.
struct Codeword {
    std::vector<std::uint8_t> digits;
    unsigned base = 2;

    std::size_t length() const { return digits.size(); }

    friend bool operator==(const Codeword&, const Codeword&) = default;
};

// Prefix-free mapping symbol id -> codeword, entries sorted by id.
struct CodeTable {
    struct Entry {
        SymbolId symbol = 0;
        Codeword code;

        friend bool operator==(const Entry&, const Entry&) = default;
    };

    unsigned base = 2;
    std::vector<Entry> entries;

    const Codeword* find(SymbolId id) const {
        auto it = std::lower_bound(entries.begin(), entries.end(), id,
                                   [](const Entry& e, SymbolId v) { return e.symbol < v; });
        if (it == entries.end() || it->symbol != id)
            return nullptr;
        return &it->code;
    }

    friend bool operator==(const CodeTable&, const CodeTable&) = default;
};

namespace detail {

inline void require_code_base(unsigned base) {
    if (base < 2)
        throw Error(errc::bad_base, "base " + std::to_string(base) + " < 2");
    if (base > kMaxBase)
        throw Error(errc::bad_base,
                    "base " + std::to_string(base) + " exceeds digit range (max 256)");
}

// Huffman merge over an explicit node arena. WeightT is uint64_t when the
// distribution carries exact counts, double otherwise; ordering is exact
// either way (no epsilon).
template <typename WeightT>
struct HuffmanNode {
    WeightT weight{};
    SymbolId min_id = 0;    // smallest symbol id in the subtree; ties on weight
    std::uint32_t seq = 0;  // creation order; final tie-break
    std::int32_t symbol = -1;             // leaf: index into the leaf list
    std::vector<std::uint32_t> children;  // empty for leaves
    bool dummy = false;
};

template <typename WeightT>
CodeTable build_huffman_impl(const std::vector<std::pair<SymbolId, WeightT>>& leaves,
                             unsigned base) {
    CodeTable table;
    table.base = base;

    if (leaves.size() == 1) {
        // A decodable stream still needs one digit per symbol.
        table.entries.push_back({leaves[0].first, Codeword{{0}, base}});
        return table;
    }

    using Node = HuffmanNode<WeightT>;
    std::vector<Node> arena;
    std::uint32_t seq = 0;

    // Dummy zero-weight leaves pad the alphabet so the final tree is a full
    // base-ary tree: the merge count works out when (k-1) mod (base-1) = 0.
    // Dummies are created first, merge first (weight 0), and get no codeword.
    const std::size_t k = leaves.size();
    std::size_t pad = 0;
    if (base > 2) {
        const std::size_t rem = (k - 1) % (base - 1);
        if (rem != 0)
            pad = (base - 1) - rem;
    }
    for (std::size_t i = 0; i < pad; ++i) {
        Node n;
        n.weight = WeightT{};
        n.min_id = std::numeric_limits<SymbolId>::max();
        n.seq = seq++;
        n.dummy = true;
        arena.push_back(std::move(n));
    }
    for (std::size_t i = 0; i < k; ++i) {
        Node n;
        n.weight = leaves[i].second;
        n.min_id = leaves[i].first;
        n.seq = seq++;
        n.symbol = static_cast<std::int32_t>(i);
        arena.push_back(std::move(n));
    }

    auto later = [&arena](std::uint32_t a, std::uint32_t b) {
        const Node& x = arena[a];
        const Node& y = arena[b];
        if (x.weight != y.weight)
            return x.weight > y.weight;
        if (x.min_id != y.min_id)
            return x.min_id > y.min_id;
        return x.seq > y.seq;
    };
    std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, decltype(later)> queue(later);
    for (std::uint32_t i = 0; i < arena.size(); ++i)
        queue.push(i);

    while (queue.size() > 1) {
        Node parent;
        parent.min_id = std::numeric_limits<SymbolId>::max();
        parent.children.reserve(base);
        for (unsigned d = 0; d < base && !queue.empty(); ++d) {
            const std::uint32_t child = queue.top();
            queue.pop();
            parent.weight += arena[child].weight;
            parent.min_id = std::min(parent.min_id, arena[child].min_id);
            parent.children.push_back(child);
        }
        parent.seq = seq++;
        arena.push_back(std::move(parent));
        queue.push(static_cast<std::uint32_t>(arena.size() - 1));
    }

    // Walk down from the root assigning digits 0..base-1 in merge-priority
    // order. Iterative: depth can reach k-1.
    struct Frame {
        std::uint32_t node;
        std::vector<std::uint8_t> prefix;
    };
    std::vector<std::pair<SymbolId, Codeword>> codes(k);
    std::vector<Frame> stack;
    stack.push_back({queue.top(), {}});
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        const Node& n = arena[f.node];
        if (n.children.empty()) {
            if (!n.dummy)
                codes[static_cast<std::size_t>(n.symbol)] = {
                    leaves[static_cast<std::size_t>(n.symbol)].first,
                    Codeword{f.prefix, base}};
            continue;
        }
        for (std::size_t d = 0; d < n.children.size(); ++d) {
            Frame child{n.children[d], f.prefix};
            child.prefix.push_back(static_cast<std::uint8_t>(d));
            stack.push_back(std::move(child));
        }
    }

    table.entries.reserve(k);
    for (auto& c : codes)
        table.entries.push_back({c.first, std::move(c.second)});
    std::sort(table.entries.begin(), table.entries.end(),
              [](const CodeTable::Entry& a, const CodeTable::Entry& b) {
                  return a.symbol < b.symbol;
              });
    return table;
}

} // namespace detail

// Optimal base-ary prefix code for the nonzero-probability symbols of `dist`,
// minimizing the probability-weighted codeword length. Output is fully
// deterministic: heap order is (weight, min symbol id, creation sequence),
// and children take digits 0..base-1 in pop order.
inline CodeTable build_huffman(const SymbolDistribution& dist, unsigned base = 2) {
    detail::require_code_base(base);

    if (dist.has_counts()) {
        std::vector<std::pair<SymbolId, std::uint64_t>> leaves;
        for (const auto& e : dist.entries())
            if (e.count > 0)
                leaves.emplace_back(e.symbol.id, e.count);
        if (leaves.empty())
            throw Error(errc::empty_alphabet, "no symbol has nonzero probability");
        return detail::build_huffman_impl(leaves, base);
    }
    std::vector<std::pair<SymbolId, double>> leaves;
    for (const auto& e : dist.entries())
        if (e.weight > 0.0)
            leaves.emplace_back(e.symbol.id, e.weight);
    if (leaves.empty())
        throw Error(errc::empty_alphabet, "no symbol has nonzero probability");
    return detail::build_huffman_impl(leaves, base);
}

// Sum of p(i) * len(codeword(i)). The table must cover every
// nonzero-probability symbol of the distribution.
inline double average_code_length(const CodeTable& table, const SymbolDistribution& dist) {
    double avg = 0.0;
    for (const auto& e : dist.entries()) {
        const double p = e.weight / dist.total();
        if (p == 0.0)
            continue;
        const Codeword* code = table.find(e.symbol.id);
        if (!code)
            throw Error(errc::alphabet_mismatch,
                        "table has no codeword for symbol " + std::to_string(e.symbol.id));
        avg += p * static_cast<double>(code->length());
    }
    return avg;
}

// Kraft sum of the table: sum of base^(-len_i). At most 1 (+ float fuzz) for
// any prefix-free code; exactly 1 for a full code tree.
inline double kraft_sum(const CodeTable& table) {
    double sum = 0.0;
    for (const auto& e : table.entries)
        sum += std::pow(static_cast<double>(table.base),
                        -static_cast<double>(e.code.length()));
    return sum;
}

// True iff no codeword is a proper prefix of another (and no duplicates).
inline bool is_prefix_free(const CodeTable& table) {
    // Sort by digit string; a prefix lands immediately before an extension.
    std::vector<const Codeword*> codes;
    codes.reserve(table.entries.size());
    for (const auto& e : table.entries)
        codes.push_back(&e.code);
    std::sort(codes.begin(), codes.end(), [](const Codeword* a, const Codeword* b) {
        return a->digits < b->digits;
    });
    for (std::size_t i = 1; i < codes.size(); ++i) {
        const auto& prev = codes[i - 1]->digits;
        const auto& cur = codes[i]->digits;
        if (prev.size() <= cur.size() && std::equal(prev.begin(), prev.end(), cur.begin()))
            return false;
    }
    return true;
}

} // namespace entropica
