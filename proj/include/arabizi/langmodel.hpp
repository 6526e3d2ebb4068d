// langmodel.hpp -- the two candidate-scoring backends: a plain word
// frequency table and an interpolated n-gram model with absolute
// discounting. Both persist to versioned, checksummed text files, and both
// rank unigrams identically, which is the property selection relies on.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "arabizi/errors.hpp"

namespace arabizi {

class FrequencyModel {
public:
    static FrequencyModel build(const std::vector<std::string>& messages);
    static FrequencyModel build(std::istream& corpus);

    std::uint64_t count(std::string_view word) const;
    std::uint64_t total_tokens() const { return total_tokens_; }
    std::size_t vocab_size() const { return counts_.size(); }
    bool contains(std::string_view word) const { return counts_.count(std::string(word)) > 0; }

    // Counts add; disjoint vocabularies concatenate.
    void merge(const FrequencyModel& other);

    void save(std::ostream& out) const;
    void save_file(const std::string& path) const;
    static FrequencyModel load(std::istream& in);
    static FrequencyModel load_file(const std::string& path);

    const std::unordered_map<std::string, std::uint64_t>& counts() const { return counts_; }

private:
    std::unordered_map<std::string, std::uint64_t> counts_;
    std::uint64_t total_tokens_ = 0;
};

// Interpolated absolute discounting with a fixed discount. The unigram
// level floors unknown words with a single UNK mass equal to the unigram
// discount mass, so every conditional distribution sums to one over the
// vocabulary plus UNK.
class NGramModel {
public:
    static constexpr double kDiscount = 0.75;
    static constexpr int kMaxOrder = 5;

    static NGramModel build(const std::vector<std::string>& messages, int order);
    static NGramModel build(std::istream& corpus, int order);

    int order() const { return order_; }
    const std::unordered_set<std::string>& vocab() const { return vocab_; }
    bool contains(std::string_view word) const { return vocab_.count(std::string(word)) > 0; }
    std::uint64_t total_tokens() const { return total_tokens_; }

    // Natural-log probability of `word`; the UNK mass for out-of-vocabulary.
    double unigram_logprob(std::string_view word) const;
    // p(word | context), backing off through shorter histories.
    double conditional_logprob(std::span<const std::string> context, std::string_view word) const;
    double unk_logprob() const { return unk_logprob_; }

    void save(std::ostream& out) const;
    void save_file(const std::string& path) const;
    static NGramModel load(std::istream& in);
    static NGramModel load_file(const std::string& path);

private:
    int order_ = 0;
    std::uint64_t total_tokens_ = 0;
    // logprobs_[k-1]: joined k-gram -> interpolated conditional log-prob.
    std::vector<std::unordered_map<std::string, double>> logprobs_;
    // backoffs_[k-1]: joined k-gram history -> log backoff weight.
    std::vector<std::unordered_map<std::string, double>> backoffs_;
    std::unordered_set<std::string> vocab_;
    double unk_logprob_ = 0.0;
};

enum class ModelKind { Frequency, NGram };

// Reads just enough of the header to tell the two formats apart.
ModelKind peek_model_kind(const std::string& path);

// Splits a prepared corpus line into countable words: whitespace tokens,
// edge punctuation stripped, Arabic-block tokens only.
std::vector<std::string> corpus_words(std::string_view message);

// --- deterministic nested corpus slicing ---

inline constexpr int kAllowedFractions[] = {1, 5, 10, 25, 50, 75, 100};

bool is_allowed_fraction(int fraction);

struct CorpusSlice {
    int fraction = 100;
    std::uint64_t seed = 0;
    std::size_t message_count = 0;
};

// Stable content hash; the same message and seed always land on the same
// side of the threshold, and thresholds nest across fractions.
bool slice_keeps(std::string_view message, int fraction, std::uint64_t seed);

std::vector<std::string> slice_corpus(const std::vector<std::string>& messages, int fraction,
                                      std::uint64_t seed, CorpusSlice* info = nullptr);

}  // namespace arabizi
