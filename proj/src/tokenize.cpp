#include <cstdint>

#include "corrsim/embeddings.hpp"

namespace corrsim {
namespace {

// Decodes one UTF-8 codepoint at i; on malformed input consumes one byte and
// returns it as-is (lenient but deterministic).
std::uint32_t next_codepoint(std::string_view s, std::size_t& i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    std::uint32_t cp = b0;
    if (b0 >= 0xF0)
        len = 4, cp = b0 & 0x07u;
    else if (b0 >= 0xE0)
        len = 3, cp = b0 & 0x0Fu;
    else if (b0 >= 0xC0)
        len = 2, cp = b0 & 0x1Fu;
    if (len > 1) {
        if (i + len > s.size()) {
            ++i;
            return b0;
        }
        for (std::size_t k = 1; k < len; ++k) {
            const auto bk = static_cast<unsigned char>(s[i + k]);
            if ((bk & 0xC0u) != 0x80u) {
                ++i;
                return b0;
            }
            cp = (cp << 6) | (bk & 0x3Fu);
        }
    }
    i += len;
    return cp;
}

bool is_space_cp(std::uint32_t cp) {
    switch (cp) {
        case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
        case 0x85: case 0xA0: case 0x1680:
        case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

bool is_ascii_punct(char c) {
    const auto u = static_cast<unsigned char>(c);
    return (u >= 0x21 && u <= 0x2F) || (u >= 0x3A && u <= 0x40) ||
           (u >= 0x5B && u <= 0x60) || (u >= 0x7B && u <= 0x7E);
}

void push_token(std::vector<std::string>& out, std::string& tok) {
    std::size_t b = 0, e = tok.size();
    while (b < e && is_ascii_punct(tok[b])) ++b;
    while (e > b && is_ascii_punct(tok[e - 1])) --e;
    if (e > b) out.emplace_back(tok.substr(b, e - b));
    tok.clear();
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    std::string tok;
    std::size_t i = 0;
    while (i < text.size()) {
        const std::size_t start = i;
        const std::uint32_t cp = next_codepoint(text, i);
        if (is_space_cp(cp)) {
            push_token(out, tok);
            continue;
        }
        for (std::size_t k = start; k < i; ++k) {
            char c = text[k];
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
            tok.push_back(c);
        }
    }
    push_token(out, tok);
    return out;
}

}  // namespace corrsim
