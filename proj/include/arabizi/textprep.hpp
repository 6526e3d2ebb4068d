// textprep.hpp -- social-media text normalization: elongation reduction,
// script classification, tokenization with punctuation peeling, and the
// Arabic-only corpus filter that feeds model training.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace arabizi {

struct RawMessage {
    std::string text;
    std::string source_id;
};

enum class TokenKind { ArabiziWord, ArabicWord, Number, Punctuation, Other };

std::string_view to_string(TokenKind kind);

struct Token {
    std::string surface;
    TokenKind kind;
};

// Collapses every run of 3+ identical characters to a single character;
// runs of one or two are kept. Idempotent, codepoint-aware.
std::string reduce_elongation(std::string_view word);

// Deterministic classification of a whitespace-free token.
TokenKind classify(std::string_view surface);
Token classify_token(std::string surface);

// Tokens plus the separators around them: separators[i] precedes tokens[i]
// and separators.back() trails the message, so interleaving reconstructs
// the input exactly.
struct TokenizedMessage {
    std::vector<Token> tokens;
    std::vector<std::string> separators;  // size == tokens.size() + 1

    std::string reassemble() const;
    // Reassemble with tokens[i] replaced by surfaces[i].
    std::string reassemble(const std::vector<std::string>& surfaces) const;
};

TokenizedMessage tokenize(const std::string& text);
inline TokenizedMessage tokenize(const RawMessage& message) { return tokenize(message.text); }

// Composes the decomposed hamza sequences of the Arabic block onto their
// canonical single codepoints (alef madda/hamza, waw/yeh hamza).
std::string normalize_arabic(std::string_view text);

// One message through the corpus filter: normalized and elongation-reduced
// if every token is Arabic, a number, or punctuation; nullopt otherwise.
std::optional<std::string> prepare_message(std::string_view text);

struct FilterStats {
    std::size_t kept = 0;
    std::size_t dropped = 0;
};

std::vector<RawMessage> filter_arabic_corpus(const std::vector<RawMessage>& messages,
                                             FilterStats* stats = nullptr);
// Line-oriented streaming variant used by the CLI.
FilterStats filter_arabic_corpus(std::istream& in, std::ostream& out);

}  // namespace arabizi
