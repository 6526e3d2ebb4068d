#include "arabizi/textprep.hpp"

#include <istream>
#include <ostream>

#include "arabizi/utf8.hpp"

namespace arabizi {

namespace u = utf8;

std::string_view to_string(TokenKind kind) {
    switch (kind) {
        case TokenKind::ArabiziWord: return "arabizi";
        case TokenKind::ArabicWord: return "arabic";
        case TokenKind::Number: return "number";
        case TokenKind::Punctuation: return "punctuation";
        case TokenKind::Other: return "other";
    }
    return "?";
}

std::string reduce_elongation(std::string_view word) {
    const std::u32string cps = u::decode(word);
    std::u32string out;
    out.reserve(cps.size());
    std::size_t i = 0;
    while (i < cps.size()) {
        std::size_t j = i;
        while (j < cps.size() && cps[j] == cps[i]) ++j;
        const std::size_t run = j - i;
        if (run >= 3) {
            out.push_back(cps[i]);
        } else {
            out.append(run, cps[i]);
        }
        i = j;
    }
    return u::encode(out);
}

TokenKind classify(std::string_view surface) {
    const std::u32string cps = u::decode(surface);
    if (cps.empty()) return TokenKind::Other;

    bool all_punct = true;
    bool all_arabic = true;
    bool all_latin_alnum = true;
    bool all_digits = true;
    bool has_arabizi_letter = false;
    for (char32_t cp : cps) {
        if (!u::is_punctuation(cp)) all_punct = false;
        if (!u::is_arabic_block(cp)) all_arabic = false;
        const char32_t f = u::fold_ascii(cp);
        const bool alpha = f >= U'a' && f <= U'z';
        const bool digit = u::is_ascii_digit(f);
        if (!alpha && !digit) all_latin_alnum = false;
        if (!digit) all_digits = false;
        if (alpha || f == U'3' || f == U'5' || f == U'7' || f == U'9') has_arabizi_letter = true;
    }
    if (all_punct) return TokenKind::Punctuation;
    if (all_arabic) return TokenKind::ArabicWord;
    if (all_latin_alnum && has_arabizi_letter) return TokenKind::ArabiziWord;
    if (all_digits) return TokenKind::Number;
    return TokenKind::Other;
}

Token classify_token(std::string surface) {
    const TokenKind kind = classify(surface);
    return Token{std::move(surface), kind};
}

std::string TokenizedMessage::reassemble() const {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        out += separators[i];
        out += tokens[i].surface;
    }
    out += separators.back();
    return out;
}

std::string TokenizedMessage::reassemble(const std::vector<std::string>& surfaces) const {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        out += separators[i];
        out += surfaces[i];
    }
    out += separators.back();
    return out;
}

TokenizedMessage tokenize(const std::string& text) {
    const std::u32string cps = u::decode(text);
    TokenizedMessage result;
    std::u32string pending_sep;
    std::size_t i = 0;
    auto emit = [&result, &pending_sep](std::u32string_view surface) {
        result.separators.push_back(u::encode(pending_sep));
        pending_sep.clear();
        result.tokens.push_back(classify_token(u::encode(surface)));
    };
    while (i < cps.size()) {
        if (u::is_whitespace(cps[i])) {
            pending_sep.push_back(cps[i]);
            ++i;
            continue;
        }
        std::size_t end = i;
        while (end < cps.size() && !u::is_whitespace(cps[end])) ++end;
        const std::u32string_view chunk(cps.data() + i, end - i);
        // Peel leading and trailing punctuation runs off the core word.
        std::size_t a = 0;
        std::size_t b = chunk.size();
        while (a < b && u::is_punctuation(chunk[a])) ++a;
        while (b > a && u::is_punctuation(chunk[b - 1])) --b;
        if (a == b) {
            emit(chunk);  // nothing but punctuation
        } else {
            if (a > 0) emit(chunk.substr(0, a));
            emit(chunk.substr(a, b - a));
            if (b < chunk.size()) emit(chunk.substr(b));
        }
        i = end;
    }
    result.separators.push_back(u::encode(pending_sep));
    return result;
}

std::string normalize_arabic(std::string_view text) {
    const std::u32string cps = u::decode(text);
    std::u32string out;
    out.reserve(cps.size());
    for (char32_t cp : cps) {
        if (!out.empty() && (cp == 0x0653 || cp == 0x0654 || cp == 0x0655)) {
            const char32_t base = out.back();
            char32_t composed = 0;
            if (base == 0x0627) {  // alef
                if (cp == 0x0653) composed = 0x0622;       // madda
                else if (cp == 0x0654) composed = 0x0623;  // hamza above
                else composed = 0x0625;                    // hamza below
            } else if (base == 0x0648 && cp == 0x0654) {   // waw
                composed = 0x0624;
            } else if (base == 0x064A && cp == 0x0654) {   // yeh
                composed = 0x0626;
            }
            if (composed != 0) {
                out.back() = composed;
                continue;
            }
        }
        out.push_back(cp);
    }
    return u::encode(out);
}

std::optional<std::string> prepare_message(std::string_view text) {
    const TokenizedMessage toks = tokenize(normalize_arabic(text));
    std::vector<std::string> reduced;
    reduced.reserve(toks.tokens.size());
    for (const Token& t : toks.tokens) {
        if (t.kind == TokenKind::ArabiziWord || t.kind == TokenKind::Other) {
            return std::nullopt;
        }
        reduced.push_back(reduce_elongation(t.surface));
    }
    return toks.reassemble(reduced);
}

std::vector<RawMessage> filter_arabic_corpus(const std::vector<RawMessage>& messages,
                                             FilterStats* stats) {
    std::vector<RawMessage> kept;
    FilterStats local;
    for (const RawMessage& msg : messages) {
        if (auto prepared = prepare_message(msg.text)) {
            kept.push_back(RawMessage{std::move(*prepared), msg.source_id});
            ++local.kept;
        } else {
            ++local.dropped;
        }
    }
    if (stats) *stats = local;
    return kept;
}

FilterStats filter_arabic_corpus(std::istream& in, std::ostream& out) {
    FilterStats stats;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (auto prepared = prepare_message(line)) {
            out << *prepared << '\n';
            ++stats.kept;
        } else {
            ++stats.dropped;
        }
    }
    return stats;
}

}  // namespace arabizi
