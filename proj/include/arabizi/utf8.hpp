// utf8.hpp -- minimal UTF-8 codec plus the character classes the pipeline
// needs (Arabic block, whitespace, punctuation). Invalid byte sequences
// decode to U+FFFD rather than throwing; social-media input is never clean.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace arabizi::utf8 {

std::u32string decode(std::string_view s);
void append(std::string& out, char32_t cp);
std::string encode(std::u32string_view cps);

// Number of codepoints in a UTF-8 string.
std::size_t length(std::string_view s);

inline bool is_arabic_block(char32_t cp) {
    return cp >= 0x0600 && cp <= 0x06FF;
}

inline bool is_ascii_digit(char32_t cp) {
    return cp >= U'0' && cp <= U'9';
}

inline bool is_ascii_alpha(char32_t cp) {
    return (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z');
}

inline char32_t fold_ascii(char32_t cp) {
    return (cp >= U'A' && cp <= U'Z') ? cp + 0x20 : cp;
}

bool is_whitespace(char32_t cp);

// Punctuation for token peeling and classification: ASCII punctuation,
// Latin-1 and general punctuation ranges, and the Arabic punctuation marks
// that live inside the U+0600-06FF block.
bool is_punctuation(char32_t cp);

}  // namespace arabizi::utf8
