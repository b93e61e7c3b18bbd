#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "entropica/coding.hpp"
#include "entropica/error.hpp"

namespace entropica {

// Raw codeword digits for a whole message, before any byte packing.
// The textual carrier for bases above 2; base-2 streams pack into bytes.
struct DigitStream {
    std::vector<std::uint8_t> digits;
    unsigned base = 2;

    friend bool operator==(const DigitStream&, const DigitStream&) = default;
};

// Streaming prefix-code decoder: one trie walk, one digit in, at most one
// symbol out, no lookahead and no backtracking. Construction rejects tables
// that are not prefix-free.
class PrefixDecoder {
public:
    explicit PrefixDecoder(const CodeTable& table) : base_(table.base) {
        nodes_.push_back(Node(base_));
        for (const auto& e : table.entries) {
            if (e.code.digits.empty())
                throw Error(errc::corrupt_table, "empty codeword for symbol " +
                                                     std::to_string(e.symbol));
            std::uint32_t node = 0;
            for (std::size_t i = 0; i < e.code.digits.size(); ++i) {
                const std::uint8_t d = e.code.digits[i];
                if (d >= base_)
                    throw Error(errc::corrupt_table,
                                "digit " + std::to_string(d) + " out of range for base " +
                                    std::to_string(base_));
                if (nodes_[node].symbol >= 0)
                    throw Error(errc::corrupt_table, "codeword extends another codeword");
                std::int32_t next = nodes_[node].children[d];
                if (next < 0) {
                    next = static_cast<std::int32_t>(nodes_.size());
                    nodes_[node].children[d] = next;
                    nodes_.push_back(Node(base_));
                }
                node = static_cast<std::uint32_t>(next);
            }
            if (nodes_[node].symbol >= 0)
                throw Error(errc::corrupt_table, "duplicate codeword");
            if (!nodes_[node].is_leaf_candidate())
                throw Error(errc::corrupt_table, "codeword is a prefix of another codeword");
            nodes_[node].symbol = static_cast<std::int64_t>(e.symbol);
        }
    }

    // Consume one digit; returns true and sets `out` when a codeword completes.
    bool feed(std::uint8_t digit, SymbolId& out) {
        if (digit >= base_)
            throw Error(errc::unknown_prefix,
                        "digit " + std::to_string(digit) + " out of range for base " +
                            std::to_string(base_));
        const std::int32_t next = nodes_[cursor_].children[digit];
        if (next < 0)
            throw Error(errc::unknown_prefix, "digits match no codeword");
        cursor_ = static_cast<std::uint32_t>(next);
        if (nodes_[cursor_].symbol >= 0) {
            out = static_cast<SymbolId>(nodes_[cursor_].symbol);
            cursor_ = 0;
            return true;
        }
        return false;
    }

    bool mid_codeword() const { return cursor_ != 0; }
    void reset() { cursor_ = 0; }

private:
    struct Node {
        explicit Node(unsigned base) : children(base, -1) {}
        bool is_leaf_candidate() const {
            for (std::int32_t c : children)
                if (c >= 0)
                    return false;
            return true;
        }
        std::vector<std::int32_t> children;
        std::int64_t symbol = -1;
    };

    unsigned base_;
    std::uint32_t cursor_ = 0;
    std::vector<Node> nodes_;
};

// Concatenate the codewords of `symbols` in order.
inline DigitStream encode(const CodeTable& table, std::span<const SymbolId> symbols) {
    DigitStream out;
    out.base = table.base;
    for (SymbolId s : symbols) {
        const Codeword* code = table.find(s);
        if (!code)
            throw Error(errc::unknown_symbol, "symbol " + std::to_string(s) + " not in table");
        out.digits.insert(out.digits.end(), code->digits.begin(), code->digits.end());
    }
    return out;
}

// Read exactly `count` symbols off the front of the stream; everything after
// them must be zero padding.
inline std::vector<SymbolId> decode(const CodeTable& table, const DigitStream& stream,
                                    std::uint64_t count) {
    if (stream.base != table.base)
        throw Error(errc::bad_base, "stream base " + std::to_string(stream.base) +
                                        " differs from table base " + std::to_string(table.base));
    PrefixDecoder decoder(table);
    std::vector<SymbolId> symbols;
    symbols.reserve(static_cast<std::size_t>(
        std::min<std::uint64_t>(count, stream.digits.size())));
    std::size_t pos = 0;
    while (symbols.size() < count) {
        if (pos >= stream.digits.size())
            throw Error(errc::truncated, "stream ended after " +
                                             std::to_string(symbols.size()) + " of " +
                                             std::to_string(count) + " symbols");
        SymbolId s;
        if (decoder.feed(stream.digits[pos++], s))
            symbols.push_back(s);
    }
    for (; pos < stream.digits.size(); ++pos)
        if (stream.digits[pos] != 0)
            throw Error(errc::bad_padding, "nonzero digit after the last symbol");
    return symbols;
}

// MSB-first bit packing: digit i lands in byte i/8 at bit 7-(i%8); the final
// byte is zero-padded.
inline std::vector<std::uint8_t> pack_bits(std::span<const std::uint8_t> bits) {
    std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i])
            bytes[i >> 3] |= static_cast<std::uint8_t>(0x80u >> (i & 7));
    return bytes;
}

inline std::vector<std::uint8_t> unpack_bits(std::span<const std::uint8_t> bytes,
                                             std::size_t bit_count) {
    std::vector<std::uint8_t> bits(bit_count);
    for (std::size_t i = 0; i < bit_count; ++i)
        bits[i] = (bytes[i >> 3] >> (7 - (i & 7))) & 1u;
    return bits;
}

struct ContainerContents {
    CodeTable table;
    std::vector<SymbolId> symbols;
};

// On-disk container (".shen"), big-endian throughout:
//
//   magic   4 bytes  "SHEN"
//   version 1 byte   0x01
//   base    1 byte   must be 2 (packed payloads are binary only)
//   entries 2 bytes  table entry count
//   per entry:
//     symbol id        2 bytes
//     codeword length  1 byte, >= 1, in digits
//     codeword digits  packed MSB-first, zero-padded to a byte boundary
//   payload symbol count  8 bytes
//   payload bits          codewords concatenated, packed MSB-first,
//                         final byte zero-padded (< 8 pad bits, all zero)
//
// The payload length is carried as a symbol count rather than a bit count so
// the trailing pad bits are unambiguous.
namespace detail {

inline void put_u16_be(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
}

inline void put_u64_be(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8)
        out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xFF));
}

class ByteReader {
public:
    explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

    std::span<const std::uint8_t> take(std::size_t n, const char* what) {
        if (n > data_.size() - pos_)
            throw Error(errc::truncated, std::string("container ends inside ") + what);
        auto s = data_.subspan(pos_, n);
        pos_ += n;
        return s;
    }

    std::uint8_t u8(const char* what) { return take(1, what)[0]; }

    std::uint16_t u16_be(const char* what) {
        auto s = take(2, what);
        return static_cast<std::uint16_t>((s[0] << 8) | s[1]);
    }

    std::uint64_t u64_be(const char* what) {
        auto s = take(8, what);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v = (v << 8) | s[i];
        return v;
    }

    std::span<const std::uint8_t> rest() { return data_.subspan(pos_); }

private:
    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline constexpr char kContainerMagic[4] = {'S', 'H', 'E', 'N'};
inline constexpr std::uint8_t kContainerVersion = 0x01;

inline std::vector<std::uint8_t> write_container(const CodeTable& table,
                                                 std::span<const SymbolId> symbols) {
    if (table.base != 2)
        throw Error(errc::unsupported_base,
                    "container payloads are packed base-2 only, table base is " +
                        std::to_string(table.base));
    if (table.entries.size() > 0xFFFF)
        throw Error(errc::corrupt_table, "table exceeds 65535 entries");

    std::vector<std::uint8_t> out;
    out.insert(out.end(), std::begin(kContainerMagic), std::end(kContainerMagic));
    out.push_back(kContainerVersion);
    out.push_back(static_cast<std::uint8_t>(table.base));
    detail::put_u16_be(out, static_cast<std::uint16_t>(table.entries.size()));
    for (const auto& e : table.entries) {
        if (e.symbol > 0xFFFF)
            throw Error(errc::corrupt_table,
                        "symbol id " + std::to_string(e.symbol) + " exceeds the 2-byte id field");
        if (e.code.digits.empty() || e.code.digits.size() > 255)
            throw Error(errc::corrupt_table,
                        "codeword length " + std::to_string(e.code.digits.size()) +
                            " outside 1..255");
        detail::put_u16_be(out, static_cast<std::uint16_t>(e.symbol));
        out.push_back(static_cast<std::uint8_t>(e.code.digits.size()));
        const auto packed = pack_bits(e.code.digits);
        out.insert(out.end(), packed.begin(), packed.end());
    }

    const DigitStream payload = encode(table, symbols);
    detail::put_u64_be(out, static_cast<std::uint64_t>(symbols.size()));
    const auto packed = pack_bits(payload.digits);
    out.insert(out.end(), packed.begin(), packed.end());
    return out;
}

inline ContainerContents read_container(std::span<const std::uint8_t> bytes) {
    detail::ByteReader in(bytes);

    const auto magic = in.take(4, "magic");
    if (std::memcmp(magic.data(), kContainerMagic, 4) != 0)
        throw Error(errc::bad_magic, "not a SHEN container");
    const std::uint8_t version = in.u8("version");
    if (version != kContainerVersion)
        throw Error(errc::unsupported_version, "version " + std::to_string(version));
    const std::uint8_t base = in.u8("base");
    if (base != 2)
        throw Error(errc::unsupported_base,
                    "base " + std::to_string(base) + " payloads are not packed");

    CodeTable table;
    table.base = base;
    const std::uint16_t entry_count = in.u16_be("table entry count");
    table.entries.reserve(entry_count);
    for (std::uint16_t i = 0; i < entry_count; ++i) {
        const std::uint16_t id = in.u16_be("table entry id");
        const std::uint8_t len = in.u8("codeword length");
        if (len == 0)
            throw Error(errc::corrupt_table, "zero-length codeword");
        const auto packed = in.take((len + 7u) / 8u, "codeword digits");
        auto digits = unpack_bits(packed, len);
        // pad bits of the entry's last byte must be zero
        for (std::size_t b = len; b < packed.size() * 8; ++b)
            if ((packed[b >> 3] >> (7 - (b & 7))) & 1u)
                throw Error(errc::corrupt_table, "nonzero pad bits in table entry");
        table.entries.push_back({id, Codeword{std::move(digits), base}});
    }
    std::sort(table.entries.begin(), table.entries.end(),
              [](const CodeTable::Entry& a, const CodeTable::Entry& b) {
                  return a.symbol < b.symbol;
              });
    for (std::size_t i = 1; i < table.entries.size(); ++i)
        if (table.entries[i].symbol == table.entries[i - 1].symbol)
            throw Error(errc::corrupt_table, "duplicate symbol id in table");

    // PrefixDecoder construction validates prefix-freeness.
    PrefixDecoder decoder(table);
    if (kraft_sum(table) > 1.0 + 1e-12)
        throw Error(errc::corrupt_table, "declared table violates the Kraft inequality");

    const std::uint64_t count = in.u64_be("payload symbol count");
    const auto payload = in.rest();
    const std::size_t total_bits = payload.size() * 8;

    ContainerContents result;
    result.table = std::move(table);
    result.symbols.reserve(static_cast<std::size_t>(
        std::min<std::uint64_t>(count, total_bits)));
    std::size_t pos = 0;
    while (result.symbols.size() < count) {
        if (pos >= total_bits)
            throw Error(errc::truncated, "payload ends after " +
                                             std::to_string(result.symbols.size()) + " of " +
                                             std::to_string(count) + " symbols");
        const std::uint8_t bit = (payload[pos >> 3] >> (7 - (pos & 7))) & 1u;
        ++pos;
        SymbolId s;
        if (decoder.feed(bit, s))
            result.symbols.push_back(s);
    }
    const std::size_t pad = total_bits - pos;
    if (pad >= 8)
        throw Error(errc::bad_padding, std::to_string(pad) + " leftover bits after the payload");
    for (; pos < total_bits; ++pos)
        if ((payload[pos >> 3] >> (7 - (pos & 7))) & 1u)
            throw Error(errc::bad_padding, "nonzero pad bit after the last symbol");
    return result;
}

} // namespace entropica
