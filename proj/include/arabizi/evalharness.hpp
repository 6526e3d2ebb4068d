// evalharness.hpp -- word-level accuracy against gold transliterations,
// mismatch classification, and the corpus-fraction evaluation grid.

#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "arabizi/selector.hpp"

namespace arabizi {

struct GoldPair {
    std::string arabizi;
    std::vector<std::string> golds;  // any alternative counts as correct
};

// TSV `arabizi<TAB>gold[|gold2...]`, `#` comments. Throws MalformedGold.
std::vector<GoldPair> parse_gold_file(std::istream& in);
std::vector<GoldPair> load_gold_file(const std::string& path);

enum class ErrorClass { VowelOmitted, VowelInserted, ContextAmbiguous, ForeignWord, Other };

std::string_view to_string(ErrorClass cls);

// Classifies a mismatch. Context ambiguity (both forms generated and both
// known to the model) is checked first; the vowel classes compare the two
// strings; the foreign-word heuristic looks for French character trigrams
// in the source. Diagnostic only, never feeds accuracy.
ErrorClass classify_error(std::string_view source, std::string_view chosen,
                          std::string_view gold, const CandidateSet& candidates,
                          const ModelHandle& model);

struct GridKey {
    int fraction;
    Backend backend;

    auto operator<=>(const GridKey&) const = default;
};

struct EvalReport {
    std::size_t total_words = 0;
    std::size_t correct = 0;
    double accuracy = 0.0;
    std::map<ErrorClass, std::size_t> breakdown;
    std::map<GridKey, double> grid;
    std::map<int, std::size_t> slice_messages;  // fraction -> training slice size
};

// Transliterates every pair and scores exact-match accuracy. Throws
// EmptyTestSet.
EvalReport evaluate(const std::vector<GoldPair>& pairs, const MappingTable& table,
                    const SelectionPolicy& policy, const ModelHandle& model,
                    std::size_t cap = kDefaultCandidateCap);

// Builds both backends over nested corpus slices and fills the grid cell
// for every (fraction, backend). The returned report's scalar fields are
// those of the largest fraction with the first backend.
EvalReport run_grid(const std::vector<std::string>& train_corpus,
                    const std::vector<GoldPair>& pairs, const MappingTable& table,
                    const std::vector<int>& fractions, const std::vector<Backend>& backends,
                    std::uint64_t seed, int ngram_order = 2,
                    std::size_t cap = kDefaultCandidateCap);

// Machine-readable report (JSON) and the human grid table.
std::string report_to_json(const EvalReport& report);
std::string render_grid_table(const EvalReport& report);

}  // namespace arabizi
