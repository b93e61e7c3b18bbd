#include <cstdint>
#include <vector>

#include "doctest.h"
#include "entropica/codec.hpp"
#include "entropica/entropy.hpp"
#include "entropica/sources.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace entropica;
using testsupport::expect_error;
using testsupport::sym;

namespace {

SymbolDistribution abc_dist() {
    return SymbolDistribution::from_counts({{sym('a'), 2}, {sym('b'), 1}, {sym('c'), 1}});
}

CodeTable abc_table() { return build_huffman(abc_dist(), 2); }

std::vector<std::uint8_t> digits(std::initializer_list<int> ds) {
    std::vector<std::uint8_t> v;
    for (int d : ds)
        v.push_back(static_cast<std::uint8_t>(d));
    return v;
}

} // namespace

TEST_CASE("encode: codewords concatenate in order") {
    auto table = abc_table();
    const std::vector<SymbolId> abac{'a', 'b', 'a', 'c'};
    auto stream = encode(table, abac);
    CHECK(stream.base == 2);
    CHECK(stream.digits == digits({0, 1, 0, 0, 1, 1}));

    CHECK(encode(table, {}).digits.empty());

    const std::vector<SymbolId> bb{'b', 'b'};
    CHECK(encode(table, bb).digits == digits({1, 0, 1, 0}));

    const std::vector<SymbolId> unknown{'z'};
    expect_error(errc::unknown_symbol, [&] { encode(table, unknown); });
}

TEST_CASE("decode: walks the prefix code without markers") {
    auto table = abc_table();

    DigitStream s{digits({0, 1, 0, 1, 1}), 2};
    CHECK(decode(table, s, 3) == std::vector<SymbolId>{'a', 'b', 'c'});

    DigitStream truncated{digits({1}), 2};
    expect_error(errc::truncated, [&] { decode(table, truncated, 1); });

    DigitStream empty{{}, 2};
    CHECK(decode(table, empty, 0).empty());

    DigitStream padded{digits({1, 0, 0, 0}), 2};
    CHECK(decode(table, padded, 1) == std::vector<SymbolId>{'b'});

    DigitStream bad_pad{digits({0, 1}), 2};
    expect_error(errc::bad_padding, [&] { decode(table, bad_pad, 1); });

    CodeTable sparse{2, {{'a', Codeword{{0}, 2}}}};
    DigitStream no_path{digits({1}), 2};
    expect_error(errc::unknown_prefix, [&] { decode(sparse, no_path, 1); });

    DigitStream wrong_base{digits({0}), 3};
    expect_error(errc::bad_base, [&] { decode(table, wrong_base, 1); });
}

TEST_CASE("prefix decoder: one digit in, no lookahead, no backtracking") {
    auto table = abc_table();
    PrefixDecoder walker(table);

    // feed bit by bit; a completed codeword resets the walk
    SymbolId out = 0;
    CHECK(walker.feed(0, out));
    CHECK(out == 'a');
    CHECK(!walker.mid_codeword());
    CHECK(!walker.feed(1, out));
    CHECK(walker.mid_codeword());
    CHECK(walker.feed(0, out));
    CHECK(out == 'b');
    CHECK(!walker.mid_codeword());

    // batch decode equals the digit-at-a-time walk, each digit seen once
    oracles::DistGen gen(41);
    for (int round = 0; round < 20; ++round) {
        auto d = gen.counts(2 + round % 32);
        auto t = build_huffman(d, 2);
        auto msg = sample(SourceModel{"m", d, static_cast<std::uint64_t>(round)}, 200);
        auto stream = encode(t, msg);

        PrefixDecoder step(t);
        std::vector<SymbolId> walked;
        for (std::uint8_t digit : stream.digits) {
            SymbolId s;
            if (step.feed(digit, s))
                walked.push_back(s);
        }
        CHECK(!step.mid_codeword());
        CHECK(walked == msg);
        CHECK(walked == decode(t, stream, msg.size()));
    }
}

TEST_CASE("pack_bits is MSB-first with zero padding") {
    CHECK(pack_bits(digits({0, 1, 0, 0, 1, 1})) == std::vector<std::uint8_t>{0x4C});
    CHECK(pack_bits(digits({1})) == std::vector<std::uint8_t>{0x80});
    CHECK(pack_bits(digits({1, 1, 1, 1, 1, 1, 1, 1, 1})) ==
          std::vector<std::uint8_t>{0xFF, 0x80});
    CHECK(pack_bits({}).empty());
    CHECK(unpack_bits(std::vector<std::uint8_t>{0x4C}, 6) == digits({0, 1, 0, 0, 1, 1}));
}

TEST_CASE("container: golden bytes for the abc message") {
    auto table = abc_table();
    const std::vector<SymbolId> abac{'a', 'b', 'a', 'c'};
    auto bytes = write_container(table, abac);

    const std::vector<std::uint8_t> expected{
        'S', 'H', 'E', 'N',             // magic
        0x01,                           // version
        0x02,                           // base
        0x00, 0x03,                     // 3 table entries
        0x00, 0x61, 0x01, 0x00,         // 'a' -> "0"
        0x00, 0x62, 0x02, 0x80,         // 'b' -> "10"
        0x00, 0x63, 0x02, 0xC0,         // 'c' -> "11"
        0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x04, // 4 payload symbols
        0x4C,                           // 0 10 0 11, zero-padded
    };
    CHECK(bytes == expected);

    auto rt = read_container(bytes);
    CHECK(rt.table == table);
    CHECK(rt.symbols == abac);
}

TEST_CASE("container: empty payload has zero payload bytes") {
    auto table = abc_table();
    auto bytes = write_container(table, {});
    auto rt = read_container(bytes);
    CHECK(rt.symbols.empty());
    CHECK(rt.table == table);
    // nothing after the 8-byte count
    CHECK(bytes.size() == 4 + 1 + 1 + 2 + 3 * 4 + 8);
}

TEST_CASE("container: malformed inputs") {
    auto table = abc_table();
    const std::vector<SymbolId> abac{'a', 'b', 'a', 'c'};
    auto good = write_container(table, abac);

    auto bad_magic = good;
    bad_magic[0] = 'X';
    expect_error(errc::bad_magic, [&] { read_container(bad_magic); });

    auto bad_version = good;
    bad_version[4] = 0x02;
    expect_error(errc::unsupported_version, [&] { read_container(bad_version); });

    auto bad_base = good;
    bad_base[5] = 0x03;
    expect_error(errc::unsupported_base, [&] { read_container(bad_base); });

    auto truncated = good;
    truncated.resize(10);
    expect_error(errc::truncated, [&] { read_container(truncated); });

    auto missing_payload = good;
    missing_payload.pop_back();
    expect_error(errc::truncated, [&] { read_container(missing_payload); });

    auto dirty_pad = good;
    dirty_pad.back() |= 0x01; // flip a pad bit after the 6 payload bits
    expect_error(errc::bad_padding, [&] { read_container(dirty_pad); });

    // a declared table that is not prefix-free: 'a' -> "0", 'b' -> "01"
    std::vector<std::uint8_t> corrupt{
        'S', 'H', 'E', 'N', 0x01, 0x02,
        0x00, 0x02,
        0x00, 0x61, 0x01, 0x00,
        0x00, 0x62, 0x02, 0x40,
        0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00,
    };
    expect_error(errc::corrupt_table, [&] { read_container(corrupt); });

    // nonzero pad bits inside a table entry
    auto dirty_entry = good;
    dirty_entry[11] |= 0x01; // 'a' entry digit byte, bits past len=1
    expect_error(errc::corrupt_table, [&] { read_container(dirty_entry); });

    expect_error(errc::truncated, [&] { read_container(std::vector<std::uint8_t>{'S', 'H'}); });

    expect_error(errc::unsupported_base, [&] {
        write_container(build_huffman(builtin("tri27").dist, 3), {});
    });
}

TEST_CASE("property: digit and container roundtrips") {
    oracles::DistGen gen(42);
    for (int round = 0; round < 60; ++round) {
        auto d = (round % 2) ? gen.counts(1 + round % 64, 100, true)
                             : gen.probabilities(1 + round % 64);
        auto t = build_huffman(d, 2);
        const std::size_t len = (round % 5 == 0) ? 0 : (round * 37) % 10000;
        auto msg = sample(SourceModel{"m", d, static_cast<std::uint64_t>(round)}, len);

        auto stream = encode(t, msg);
        CHECK(decode(t, stream, msg.size()) == msg);

        auto bytes = write_container(t, msg);
        auto rt = read_container(bytes);
        CHECK(rt.table == t);
        CHECK(rt.symbols == msg);

        // identical inputs give identical bytes
        CHECK(write_container(t, msg) == bytes);
    }
}

TEST_CASE("property: payload size matches the average exactly, entropy bounds it") {
    oracles::DistGen gen(43);
    for (int round = 0; round < 30; ++round) {
        const std::size_t len = 100 + (round * 911) % 5000;
        auto source = gen.counts(2 + round % 32);
        auto msg = sample(SourceModel{"m", source, static_cast<std::uint64_t>(round)}, len);

        std::vector<std::uint8_t> as_bytes;
        for (SymbolId s : msg)
            as_bytes.push_back(static_cast<std::uint8_t>(s & 0xFF));
        auto d = SymbolDistribution::empirical_from_bytes(as_bytes);
        auto t = build_huffman(d, 2);

        std::vector<SymbolId> symbols(as_bytes.begin(), as_bytes.end());
        auto stream = encode(t, symbols);

        // both sides are integer totals: sum over symbols of len(code)
        std::uint64_t bit_total = 0;
        for (const auto& e : d.entries())
            bit_total += e.count * t.find(e.symbol.id)->length();
        CHECK(stream.digits.size() == bit_total);
        CHECK(static_cast<double>(stream.digits.size()) ==
              doctest::Approx(static_cast<double>(len) * average_code_length(t, d))
                  .epsilon(1e-12));
        CHECK(static_cast<double>(stream.digits.size()) >=
              static_cast<double>(len) * entropy(d, 2) - 1e-6);
    }
}

TEST_CASE("near-uniform byte data does not compress") {
    oracles::DistGen gen(44);
    std::vector<std::uint8_t> data(1 << 17);
    for (auto& b : data)
        b = static_cast<std::uint8_t>(gen.rng.next() & 0xFF);
    auto d = SymbolDistribution::empirical_from_bytes(data);
    REQUIRE(d.size() == 256);
    auto t = build_huffman(d, 2);
    const double avg = average_code_length(t, d);
    CHECK(avg >= 7.95);
    CHECK(avg < 8.2);
}
