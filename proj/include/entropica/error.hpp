#pragma once

#include <stdexcept>
#include <string>

namespace entropica {

// Every failure the library reports, so callers (and tests) can match on the
// exact condition instead of parsing messages.
enum class errc {
    // distribution construction
    empty_alphabet,
    duplicate_symbol,
    not_normalized,
    negative_probability,
    empty_input,
    // numeric domains
    domain_error,
    bad_base,
    alphabet_mismatch,
    // coding / codec
    unknown_symbol,
    truncated,
    bad_padding,
    unknown_prefix,
    bad_magic,
    unsupported_version,
    unsupported_base,
    corrupt_table,
    // sources
    unknown_model,
    // text formats / files
    parse_error,
    io_error,
};

inline const char* errc_name(errc c) {
    switch (c) {
    case errc::empty_alphabet: return "empty_alphabet";
    case errc::duplicate_symbol: return "duplicate_symbol";
    case errc::not_normalized: return "not_normalized";
    case errc::negative_probability: return "negative_probability";
    case errc::empty_input: return "empty_input";
    case errc::domain_error: return "domain_error";
    case errc::bad_base: return "bad_base";
    case errc::alphabet_mismatch: return "alphabet_mismatch";
    case errc::unknown_symbol: return "unknown_symbol";
    case errc::truncated: return "truncated";
    case errc::bad_padding: return "bad_padding";
    case errc::unknown_prefix: return "unknown_prefix";
    case errc::bad_magic: return "bad_magic";
    case errc::unsupported_version: return "unsupported_version";
    case errc::unsupported_base: return "unsupported_base";
    case errc::corrupt_table: return "corrupt_table";
    case errc::unknown_model: return "unknown_model";
    case errc::parse_error: return "parse_error";
    case errc::io_error: return "io_error";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

} // namespace entropica
