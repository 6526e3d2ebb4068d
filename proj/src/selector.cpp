#include "arabizi/selector.hpp"

#include <stdexcept>

namespace arabizi {

std::string_view to_string(Backend backend) {
    return backend == Backend::SimpleSearch ? "simple" : "ngram";
}

Backend backend_from_string(std::string_view name) {
    if (name == "simple") return Backend::SimpleSearch;
    if (name == "ngram") return Backend::NGram;
    throw std::invalid_argument("unknown backend '" + std::string(name) + "'");
}

TransliterationResult select(const CandidateSet& candidates, const SelectionPolicy& policy,
                             const ModelHandle& model) {
    if (candidates.candidates.empty()) {
        throw EmptyCandidates("no candidates for '" + candidates.source + "'");
    }

    TransliterationResult result;
    result.source = candidates.source;
    result.candidate_count = candidates.candidates.size();

    const std::size_t n = candidates.candidates.size();
    std::size_t best = n;  // index of best in-vocabulary candidate
    double best_score = 0.0;

    if (policy.backend == Backend::SimpleSearch) {
        if (!model.frequency) throw std::invalid_argument("policy expects a frequency model");
        for (std::size_t i = 0; i < n; ++i) {
            const auto c = model.frequency->count(candidates.candidates[i]);
            if (c > 0 && (best == n || static_cast<double>(c) > best_score)) {
                best = i;
                best_score = static_cast<double>(c);
            }
        }
    } else {
        if (!model.ngram) throw std::invalid_argument("policy expects an n-gram model");
        for (std::size_t i = 0; i < n; ++i) {
            const std::string& cand = candidates.candidates[i];
            if (!model.ngram->contains(cand)) continue;
            const double lp = model.ngram->unigram_logprob(cand);
            if (best == n || lp > best_score) {
                best = i;
                best_score = lp;
            }
        }
    }

    if (best == n) {
        // Nothing in vocabulary: preference-order fallback.
        result.chosen = candidates.candidates.front();
        result.matched = false;
        result.score = policy.backend == Backend::SimpleSearch
                           ? 0.0
                           : model.ngram->unigram_logprob(result.chosen);
    } else {
        result.chosen = candidates.candidates[best];
        result.matched = true;
        result.score = best_score;
    }
    return result;
}

TransliterationResult transliterate_word(std::string_view word, const MappingTable& table,
                                         const SelectionPolicy& policy, const ModelHandle& model,
                                         std::size_t cap) {
    const std::string reduced = reduce_elongation(word);
    return select(generate(reduced, table, cap), policy, model);
}

MessageResult transliterate_message(const std::string& text, const MappingTable& table,
                                    const SelectionPolicy& policy, const ModelHandle& model,
                                    std::size_t cap) {
    const TokenizedMessage toks = tokenize(text);
    MessageResult result;
    std::vector<std::string> surfaces;
    surfaces.reserve(toks.tokens.size());
    for (const Token& token : toks.tokens) {
        if (token.kind != TokenKind::ArabiziWord) {
            surfaces.push_back(token.surface);
            continue;
        }
        try {
            TransliterationResult word = transliterate_word(token.surface, table, policy, model, cap);
            surfaces.push_back(word.chosen);
            result.words.push_back(std::move(word));
        } catch (const UnknownSymbol& e) {
            surfaces.push_back(token.surface);  // copy through untouched
            result.diagnostics.push_back("token '" + token.surface + "': " + e.what());
        } catch (const EmptyResult& e) {
            surfaces.push_back(token.surface);
            result.diagnostics.push_back("token '" + token.surface + "': " + e.what());
        }
    }
    result.output = toks.reassemble(surfaces);
    return result;
}

}  // namespace arabizi
