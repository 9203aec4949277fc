#include "seqm/sequence_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "seqm/error.hpp"

namespace seqm {

namespace {

constexpr std::size_t kDigitsPerLine = 64;

bool needs_escape(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '%' || c == '=' || c == '#';
}

std::string percent_encode(std::string_view raw) {
    static constexpr char hex[] = "0123456789ABCDEF";
    std::string out;
    for (char c : raw) {
        if (needs_escape(c)) {
            const auto byte = static_cast<unsigned char>(c);
            out.push_back('%');
            out.push_back(hex[byte >> 4]);
            out.push_back(hex[byte & 0xF]);
        } else {
            out.push_back(c);
        }
    }
    return out;
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
}

std::string percent_decode(std::string_view encoded) {
    std::string out;
    for (std::size_t i = 0; i < encoded.size(); ++i) {
        if (encoded[i] != '%') {
            out.push_back(encoded[i]);
            continue;
        }
        if (i + 2 >= encoded.size()) {
            fail(ErrorCode::parse_error, "truncated percent escape in header");
        }
        const int hi = hex_value(encoded[i + 1]);
        const int lo = hex_value(encoded[i + 2]);
        if (hi < 0 || lo < 0) fail(ErrorCode::parse_error, "bad percent escape in header");
        out.push_back(static_cast<char>(hi * 16 + lo));
        i += 2;
    }
    return out;
}

void parse_header_line(std::string_view line, Provenance& pairs) {
    std::istringstream tokens{std::string(line.substr(1))};
    std::string token;
    while (tokens >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos || eq == 0) {
            fail(ErrorCode::parse_error, "header token '" + token + "' is not key=value");
        }
        pairs[percent_decode(token.substr(0, eq))] = percent_decode(token.substr(eq + 1));
    }
}

unsigned parse_alphabet(const std::string& text) {
    unsigned value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        fail(ErrorCode::parse_error, "header alphabet '" + text + "' is not an integer");
    }
    return value;
}

}  // namespace

Sequence parse_sequence_text(std::string_view text, std::optional<unsigned> alphabet) {
    Provenance header;
    std::vector<Symbol> symbols;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;

        if (!line.empty() && line.front() == '#') {
            parse_header_line(line, header);
            continue;
        }
        for (char c : line) {
            if (std::isspace(static_cast<unsigned char>(c))) continue;
            if (c < '0' || c > '9') {
                fail(ErrorCode::parse_error, std::string("non-digit character '") + c + "' in sequence body");
            }
            symbols.push_back(static_cast<Symbol>(c - '0'));
        }
    }
    if (symbols.empty()) fail(ErrorCode::empty_input, "sequence text contains no symbols");

    unsigned m = 2;
    if (auto it = header.find("alphabet"); it != header.end()) {
        m = parse_alphabet(it->second);
        header.erase(it);
    }
    if (alphabet) m = *alphabet;
    if (m < 2 || m > 10) fail(ErrorCode::unsupported, "digit file format supports 2 <= m <= 10");
    return Sequence(std::move(symbols), m, std::move(header));
}

std::string format_sequence_text(const Sequence& seq) {
    if (seq.alphabet() > 10) fail(ErrorCode::unsupported, "digit file format supports m <= 10");
    std::string out = "# alphabet=" + std::to_string(seq.alphabet());
    for (const auto& [key, value] : seq.provenance()) {
        if (key.empty()) fail(ErrorCode::invalid_argument, "provenance keys must be non-empty");
        out += ' ' + percent_encode(key) + '=' + percent_encode(value);
    }
    out += '\n';
    const std::string digits = seq.to_string();
    for (std::size_t i = 0; i < digits.size(); i += kDigitsPerLine) {
        out += digits.substr(i, kDigitsPerLine);
        out += '\n';
    }
    return out;
}

Sequence read_sequence(const std::filesystem::path& path, std::optional<unsigned> alphabet) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::io_error, "cannot open '" + path.string() + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_sequence_text(buffer.str(), alphabet);
}

void write_sequence(const Sequence& seq, const std::filesystem::path& path) {
    const std::string text = format_sequence_text(seq);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::io_error, "cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out) fail(ErrorCode::io_error, "write to '" + path.string() + "' failed");
}

}  // namespace seqm
