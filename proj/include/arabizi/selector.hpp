// selector.hpp -- best-candidate selection against a scoring backend, and
// whole-message transliteration. Words whose candidates are all unknown to
// the model fall back to the rank-1 preference-order candidate.

#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "arabizi/candgen.hpp"
#include "arabizi/charmap.hpp"
#include "arabizi/langmodel.hpp"
#include "arabizi/textprep.hpp"

namespace arabizi {

enum class Backend { SimpleSearch, NGram };
enum class Fallback { PreferenceOrder };

std::string_view to_string(Backend backend);
Backend backend_from_string(std::string_view name);  // throws std::invalid_argument

struct SelectionPolicy {
    Backend backend = Backend::SimpleSearch;
    Fallback fallback = Fallback::PreferenceOrder;
};

// Non-owning handle over whichever backend the policy names.
struct ModelHandle {
    const FrequencyModel* frequency = nullptr;
    const NGramModel* ngram = nullptr;

    ModelHandle(const FrequencyModel& m) : frequency(&m) {}
    ModelHandle(const NGramModel& m) : ngram(&m) {}
};

struct TransliterationResult {
    std::string source;
    std::string chosen;
    double score = 0.0;  // occurrence count or log-probability
    bool matched = false;
    std::size_t candidate_count = 0;
};

// Argmax over the candidate list; ties break toward the lower preference
// rank. matched=false means no candidate was in vocabulary and the rank-1
// candidate was returned. Throws EmptyCandidates.
TransliterationResult select(const CandidateSet& candidates, const SelectionPolicy& policy,
                             const ModelHandle& model);

struct MessageResult {
    std::string output;
    std::vector<TransliterationResult> words;   // one per Arabizi token
    std::vector<std::string> diagnostics;       // unknown-symbol notes
};

// Tokenizes, routes Arabizi words through elongation reduction, candidate
// generation and selection, copies everything else verbatim, and restores
// separators. Unknown symbols downgrade the token to a verbatim copy.
MessageResult transliterate_message(const std::string& text, const MappingTable& table,
                                    const SelectionPolicy& policy, const ModelHandle& model,
                                    std::size_t cap = kDefaultCandidateCap);

// The per-word pipeline used for single gold words and message tokens.
TransliterationResult transliterate_word(std::string_view word, const MappingTable& table,
                                         const SelectionPolicy& policy, const ModelHandle& model,
                                         std::size_t cap = kDefaultCandidateCap);

}  // namespace arabizi
