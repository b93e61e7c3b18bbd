// entropica - entropy analysis, Huffman code construction, and a small
// bit-exact compression container, all on byte streams and symbol
// distributions.
//
// Subcommands: analyze, build-code, encode, decode, simulate, report.
// Exit codes: 0 success, 1 internal error, 2 bad input or format.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "entropica/entropica.hpp"

namespace {

using nlohmann::json;
using namespace entropica;

constexpr std::size_t kChunkSize = 64 * 1024;

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(errc::io_error, "cannot open " + path);
    std::vector<std::uint8_t> data;
    std::vector<char> chunk(kChunkSize);
    while (in) {
        in.read(chunk.data(), static_cast<std::streamsize>(chunk.size()));
        data.insert(data.end(), chunk.begin(), chunk.begin() + in.gcount());
    }
    if (in.bad())
        throw Error(errc::io_error, "read failed on " + path);
    return data;
}

std::string read_text_file(const std::string& path) {
    auto bytes = read_file(path);
    return std::string(bytes.begin(), bytes.end());
}

void write_file(const std::string& path, const void* data, std::size_t size) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(errc::io_error, "cannot create " + path);
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
    if (!out)
        throw Error(errc::io_error, "write failed on " + path);
}

// 6 significant digits for human output; json gets full doubles.
std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string display_label(const Symbol& s) {
    return s.label.empty() ? std::to_string(s.id) : s.label;
}

struct CommonOptions {
    unsigned base = 2;
    std::string format = "text";

    bool json() const { return format == "json-lines"; }
};

void emit(const CommonOptions& opts, const json& object, const std::string& text) {
    if (opts.json())
        std::cout << object.dump() << "\n";
    else
        std::cout << text;
}

// ---- analyze ---------------------------------------------------------------

int cmd_analyze(const std::string& input, const CommonOptions& opts) {
    const auto data = read_file(input);
    const auto dist = SymbolDistribution::empirical_from_bytes(data);
    const auto table = build_huffman(dist, opts.base);
    const auto r = report(dist, opts.base, &table);
    const std::string unit = entropy_unit(opts.base);

    json j{{"command", "analyze"},
           {"path", input},
           {"base", r.base},
           {"unit", unit},
           {"symbol_count", data.size()},
           {"alphabet_size", r.alphabet_size},
           {"raw_digits", r.raw_digits},
           {"entropy", r.entropy},
           {"avg_code_length", *r.avg_code_length},
           {"redundancy", *r.redundancy}};

    std::string text;
    text += "file: " + input + " (" + std::to_string(data.size()) + " bytes)\n";
    text += "alphabet size: " + std::to_string(r.alphabet_size) + "\n";
    text += "raw storage: " + std::to_string(r.raw_digits) + " " + unit + "/symbol\n";
    text += "entropy: " + fmt6(r.entropy) + " " + unit + "/symbol\n";
    text += "huffman average: " + fmt6(*r.avg_code_length) + " " + unit + "/symbol\n";
    text += "redundancy: " + fmt6(*r.redundancy) + " " + unit + "/symbol\n";
    emit(opts, j, text);
    return 0;
}

// ---- build-code ------------------------------------------------------------

int cmd_build_code(const std::string& input, const std::string& dist_path,
                   const std::string& model_name, const std::string& out_path,
                   const CommonOptions& opts) {
    const int sources = int(!input.empty()) + int(!dist_path.empty()) + int(!model_name.empty());
    if (sources != 1)
        throw Error(errc::io_error,
                    "need exactly one of <input>, --dist, --model to build a code from");

    SymbolDistribution dist = [&] {
        if (!dist_path.empty())
            return parse_distribution(read_text_file(dist_path));
        if (!model_name.empty())
            return builtin(model_name).dist;
        return SymbolDistribution::empirical_from_bytes(read_file(input));
    }();

    const auto table = build_huffman(dist, opts.base);
    const std::string text = write_code_table(table);
    write_file(out_path, text.data(), text.size());

    const double h = entropy(dist, opts.base);
    const double avg = average_code_length(table, dist);
    json j{{"command", "build-code"}, {"base", opts.base},
           {"entries", table.entries.size()}, {"entropy", h},
           {"avg_code_length", avg}, {"redundancy", avg - h},
           {"kraft_sum", kraft_sum(table)}, {"output", out_path}};

    std::string out;
    out += "code table: " + std::to_string(table.entries.size()) + " entries (base " +
           std::to_string(opts.base) + ") -> " + out_path + "\n";
    out += "entropy: " + fmt6(h) + " " + entropy_unit(opts.base) + "/symbol\n";
    out += "average length: " + fmt6(avg) + "\n";
    out += "kraft sum: " + fmt6(kraft_sum(table)) + "\n";
    emit(opts, j, out);
    return 0;
}

// ---- encode / decode -------------------------------------------------------

int cmd_encode(const std::string& input, const std::string& out_path,
               const CommonOptions& opts) {
    if (opts.base != 2)
        throw Error(errc::unsupported_base, "packed .shen output is base 2 only");
    const auto data = read_file(input);
    const auto dist = SymbolDistribution::empirical_from_bytes(data);
    const auto table = build_huffman(dist, 2);

    std::vector<SymbolId> symbols(data.begin(), data.end());
    const auto container = write_container(table, symbols);
    write_file(out_path, container.data(), container.size());

    std::uint64_t payload_bits = 0;
    for (const auto& e : dist.entries())
        payload_bits += e.count * table.find(e.symbol.id)->length();
    const double bits_per_symbol =
        data.empty() ? 0.0 : static_cast<double>(payload_bits) / static_cast<double>(data.size());
    const double h = entropy(dist, 2);

    json j{{"command", "encode"},       {"input", input},
           {"output", out_path},        {"symbol_count", data.size()},
           {"alphabet_size", dist.size()}, {"entropy", h},
           {"payload_bits", payload_bits}, {"bits_per_symbol", bits_per_symbol},
           {"container_bytes", container.size()}};

    std::string text;
    text += "input: " + std::to_string(data.size()) + " bytes, alphabet " +
            std::to_string(dist.size()) + "\n";
    text += "entropy: " + fmt6(h) + " bits/symbol\n";
    text += "achieved: " + fmt6(bits_per_symbol) + " bits/symbol (" +
            std::to_string(payload_bits) + " payload bits)\n";
    text += "container: " + std::to_string(container.size()) + " bytes -> " + out_path + "\n";
    emit(opts, j, text);
    return 0;
}

int cmd_decode(const std::string& input, const std::string& out_path,
               const CommonOptions& opts) {
    const auto container = read_file(input);
    const auto contents = read_container(container);

    std::vector<std::uint8_t> data;
    data.reserve(contents.symbols.size());
    for (SymbolId s : contents.symbols) {
        if (s > 0xFF)
            throw Error(errc::domain_error,
                        "symbol id " + std::to_string(s) + " does not fit a byte");
        data.push_back(static_cast<std::uint8_t>(s));
    }
    write_file(out_path, data.data(), data.size());

    json j{{"command", "decode"},
           {"input", input},
           {"output", out_path},
           {"symbol_count", contents.symbols.size()},
           {"table_entries", contents.table.entries.size()}};
    emit(opts, j,
         "decoded " + std::to_string(contents.symbols.size()) + " symbols -> " + out_path + "\n");
    return 0;
}

// ---- simulate ----------------------------------------------------------------

int cmd_simulate(const std::string& model_name, std::uint64_t n, std::uint64_t seed,
                 bool as_bytes, const std::string& out_path) {
    auto model = builtin(model_name, seed);
    const auto draws = sample(model, n);

    if (as_bytes) {
        std::vector<std::uint8_t> bytes;
        bytes.reserve(draws.size());
        for (SymbolId s : draws) {
            if (s > 0xFF)
                throw Error(errc::domain_error,
                            "symbol id " + std::to_string(s) + " does not fit a byte");
            bytes.push_back(static_cast<std::uint8_t>(s));
        }
        if (out_path.empty())
            std::fwrite(bytes.data(), 1, bytes.size(), stdout);
        else
            write_file(out_path, bytes.data(), bytes.size());
        return 0;
    }

    std::string text;
    for (SymbolId s : draws) {
        const auto* entry = model.dist.find(s);
        text += display_label(entry->symbol);
        text += '\n';
    }
    if (out_path.empty())
        std::fwrite(text.data(), 1, text.size(), stdout);
    else
        write_file(out_path, text.data(), text.size());
    return 0;
}

// ---- report ------------------------------------------------------------------

int cmd_report(const std::string& dist_path, const std::string& table_path,
               const CommonOptions& opts) {
    const auto dist = parse_distribution(read_text_file(dist_path));

    std::optional<CodeTable> table;
    if (!table_path.empty())
        table = parse_code_table(read_text_file(table_path));

    const auto r = report(dist, opts.base, table ? &*table : nullptr);
    const double h2 = entropy(dist, 2);
    const double h3 = entropy(dist, 3);

    if (opts.json()) {
        for (const auto& e : dist.entries()) {
            const double p = e.weight / dist.total();
            json line{{"command", "report"}, {"type", "symbol"},
                      {"id", e.symbol.id},   {"label", display_label(e.symbol)},
                      {"probability", p},    {"base", opts.base}};
            line["entropy_term"] = entropy_term(p, opts.base);
            if (p > 0.0)
                line["surprisal"] = surprisal(p, opts.base);
            std::cout << line.dump() << "\n";
        }
        json summary{{"command", "report"},  {"type", "summary"},
                     {"base", opts.base},    {"alphabet_size", r.alphabet_size},
                     {"entropy", r.entropy}, {"entropy_base2", h2},
                     {"entropy_base3", h3},  {"raw_digits", r.raw_digits}};
        if (table) {
            summary["avg_code_length"] = *r.avg_code_length;
            summary["redundancy"] = *r.redundancy;
            summary["kraft_sum"] = kraft_sum(*table);
        }
        std::cout << summary.dump() << "\n";
        return 0;
    }

    std::string text;
    text += "distribution: " + dist_path + " (" + std::to_string(dist.size()) + " symbols)\n";
    text += "  id      label  probability  surprisal  term\n";
    for (const auto& e : dist.entries()) {
        const double p = e.weight / dist.total();
        char row[128];
        std::snprintf(row, sizeof row, "  %-7u %-6s %-12s %-10s %s\n", e.symbol.id,
                      display_label(e.symbol).c_str(), fmt6(p).c_str(),
                      p > 0.0 ? fmt6(surprisal(p, opts.base)).c_str() : "-",
                      fmt6(entropy_term(p, opts.base)).c_str());
        text += row;
    }
    text += "entropy (base " + std::to_string(opts.base) + "): " + fmt6(r.entropy) + " " +
            entropy_unit(opts.base) + "/symbol\n";
    text += "entropy (base 2): " + fmt6(h2) + " bits/symbol\n";
    text += "entropy (base 3): " + fmt6(h3) + " trits/symbol\n";
    text += "raw storage (base " + std::to_string(opts.base) + "): " +
            std::to_string(r.raw_digits) + " digits/symbol\n";
    if (table) {
        text += "table: " + table_path + "\n";
        text += "  average length: " + fmt6(*r.avg_code_length) + "\n";
        text += "  redundancy: " + fmt6(*r.redundancy) + "\n";
        text += "  kraft sum: " + fmt6(kraft_sum(*table)) + "\n";
    }
    std::cout << text;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"entropy analysis and Huffman compression toolkit"};
    app.require_subcommand(1);

    std::string input, out_path, dist_path, table_path, model_name;
    std::uint64_t n = 0, seed = 0;
    bool as_bytes = false;
    CommonOptions opts;

    const auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", opts.format, "output format")
            ->check(CLI::IsMember({"text", "json-lines"}))
            ->default_val("text");
    };
    const auto add_base = [&](CLI::App* cmd) {
        cmd->add_option("--base", opts.base, "storage base (digits per symbol)")
            ->check(CLI::Range(2u, 256u))
            ->default_val(2);
    };

    auto* analyze = app.add_subcommand("analyze", "entropy report for a file's bytes");
    analyze->add_option("input", input, "input file")->required();
    add_base(analyze);
    add_format(analyze);

    auto* build = app.add_subcommand("build-code", "build a Huffman code table");
    build->add_option("input", input, "file whose bytes define the distribution");
    build->add_option("--dist", dist_path, "distribution file");
    build->add_option("--model", model_name, "built-in source model");
    build->add_option("--out", out_path, "output table path")->required();
    add_base(build);
    add_format(build);

    auto* encode_cmd = app.add_subcommand("encode", "compress a file into a .shen container");
    encode_cmd->add_option("input", input, "input file")->required();
    encode_cmd->add_option("--out", out_path, "output container path")->required();
    add_base(encode_cmd);
    add_format(encode_cmd);

    auto* decode_cmd = app.add_subcommand("decode", "expand a .shen container");
    decode_cmd->add_option("input", input, "container file")->required();
    decode_cmd->add_option("--out", out_path, "output file path")->required();
    add_format(decode_cmd);

    auto* simulate = app.add_subcommand("simulate", "draw symbols from a built-in model");
    simulate->add_option("--model", model_name, "built-in source model")->required();
    simulate->add_option("--n", n, "number of draws")->required();
    simulate->add_option("--seed", seed, "PRNG seed")->default_val(0);
    simulate->add_flag("--bytes", as_bytes, "emit raw symbol-id bytes instead of labels");
    simulate->add_option("--out", out_path, "output path (default stdout)");

    auto* report_cmd = app.add_subcommand("report", "entropy report for a distribution file");
    report_cmd->add_option("--dist", dist_path, "distribution file")->required();
    report_cmd->add_option("--table", table_path, "code table file");
    add_base(report_cmd);
    add_format(report_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*analyze)
            return cmd_analyze(input, opts);
        if (*build)
            return cmd_build_code(input, dist_path, model_name, out_path, opts);
        if (*encode_cmd)
            return cmd_encode(input, out_path, opts);
        if (*decode_cmd)
            return cmd_decode(input, out_path, opts);
        if (*simulate)
            return cmd_simulate(model_name, n, seed, as_bytes, out_path);
        if (*report_cmd)
            return cmd_report(dist_path, table_path, opts);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
