#include "arabizi/evalharness.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "arabizi/utf8.hpp"

namespace arabizi {

namespace {

bool in_vocab(const ModelHandle& model, std::string_view word) {
    if (model.frequency) return model.frequency->count(word) > 0;
    return model.ngram->contains(word);
}

bool is_long_vowel(char32_t cp) {
    return cp == 0x0627 || cp == 0x064A || cp == 0x0648 || cp == 0x0629;  // ا ي و ة
}

// True iff `large` equals `small` with one or more long-vowel letters
// inserted. Small DP rather than a greedy scan; words are a handful of
// characters.
bool differs_by_inserted_vowels(std::string_view small_s, std::string_view large_s) {
    const std::u32string small = utf8::decode(small_s);
    const std::u32string large = utf8::decode(large_s);
    if (large.size() <= small.size()) return false;
    std::vector<std::vector<char>> dp(small.size() + 1,
                                      std::vector<char>(large.size() + 1, 0));
    dp[0][0] = 1;
    for (std::size_t j = 1; j <= large.size(); ++j) {
        dp[0][j] = dp[0][j - 1] && is_long_vowel(large[j - 1]);
    }
    for (std::size_t i = 1; i <= small.size(); ++i) {
        for (std::size_t j = i; j <= large.size(); ++j) {
            dp[i][j] = (small[i - 1] == large[j - 1] && dp[i - 1][j - 1]) ||
                       (is_long_vowel(large[j - 1]) && dp[i][j - 1]);
        }
    }
    return dp[small.size()][large.size()];
}

// Character trigrams of a small French function-word inventory,
// ASCII-folded. Purely diagnostic.
const std::unordered_set<std::string>& french_trigrams() {
    static const std::unordered_set<std::string> trigrams = [] {
        static constexpr const char* kWords[] = {
            "les",   "des",    "une",    "est",   "que",    "qui",    "pour",
            "pas",   "par",    "sur",    "sous",  "dans",   "avec",   "mais",
            "donc",  "car",    "cette",  "ces",   "son",    "ses",    "mon",
            "mes",   "ton",    "tes",    "nous",  "vous",   "ils",    "elles",
            "elle",  "aux",    "plus",   "moins", "tres",   "bien",   "tout",
            "toute", "tous",   "comme",  "quand", "alors",  "aussi",  "autre",
            "meme",  "apres",  "avant",  "chez",  "entre",  "vers",   "depuis",
            "pendant", "contre", "sans", "chaque", "quelque", "leur", "leurs",
            "notre", "votre",  "nos",    "vos",   "fichage", "affichage",
        };
        std::unordered_set<std::string> t;
        for (const char* w : kWords) {
            const std::string word(w);
            for (std::size_t i = 0; i + 3 <= word.size(); ++i) {
                t.insert(word.substr(i, 3));
            }
        }
        return t;
    }();
    return trigrams;
}

bool looks_french(std::string_view source) {
    std::string folded(source);
    for (char& c : folded) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 0x20);
    }
    for (std::size_t i = 0; i + 3 <= folded.size(); ++i) {
        if (french_trigrams().count(folded.substr(i, 3))) return true;
    }
    return false;
}

}  // namespace

std::vector<GoldPair> parse_gold_file(std::istream& in) {
    std::vector<GoldPair> pairs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw MalformedGold("line " + std::to_string(lineno) + ": expected arabizi<TAB>gold");
        }
        GoldPair pair;
        pair.arabizi = line.substr(0, tab);
        if (pair.arabizi.empty() || classify(pair.arabizi) != TokenKind::ArabiziWord) {
            throw MalformedGold("line " + std::to_string(lineno) + ": '" + pair.arabizi +
                                "' is not an Arabizi word");
        }
        const std::string goldfield = line.substr(tab + 1);
        std::size_t start = 0;
        for (std::size_t i = 0; i <= goldfield.size(); ++i) {
            if (i == goldfield.size() || goldfield[i] == '|') {
                std::string gold = goldfield.substr(start, i - start);
                start = i + 1;
                if (gold.empty() || classify(gold) != TokenKind::ArabicWord) {
                    throw MalformedGold("line " + std::to_string(lineno) + ": '" + gold +
                                        "' is not an Arabic-script word");
                }
                pair.golds.push_back(std::move(gold));
            }
        }
        pairs.push_back(std::move(pair));
    }
    return pairs;
}

std::vector<GoldPair> load_gold_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open gold file '" + path + "'");
    return parse_gold_file(in);
}

std::string_view to_string(ErrorClass cls) {
    switch (cls) {
        case ErrorClass::VowelOmitted: return "vowel_omitted";
        case ErrorClass::VowelInserted: return "vowel_inserted";
        case ErrorClass::ContextAmbiguous: return "context_ambiguous";
        case ErrorClass::ForeignWord: return "foreign_word";
        case ErrorClass::Other: return "other";
    }
    return "?";
}

ErrorClass classify_error(std::string_view source, std::string_view chosen,
                          std::string_view gold, const CandidateSet& candidates,
                          const ModelHandle& model) {
    // Both forms generated and both attested: a context call, not a rule
    // defect, so it outranks the vowel classes.
    if (candidates.contains(chosen) && candidates.contains(gold) && in_vocab(model, chosen) &&
        in_vocab(model, gold)) {
        return ErrorClass::ContextAmbiguous;
    }
    if (differs_by_inserted_vowels(chosen, gold)) return ErrorClass::VowelOmitted;
    if (differs_by_inserted_vowels(gold, chosen)) return ErrorClass::VowelInserted;
    if (looks_french(source)) return ErrorClass::ForeignWord;
    return ErrorClass::Other;
}

EvalReport evaluate(const std::vector<GoldPair>& pairs, const MappingTable& table,
                    const SelectionPolicy& policy, const ModelHandle& model, std::size_t cap) {
    if (pairs.empty()) throw EmptyTestSet("no gold pairs to evaluate");

    EvalReport report;
    report.total_words = pairs.size();
    for (const GoldPair& pair : pairs) {
        CandidateSet candidates;
        std::string chosen;
        try {
            candidates = generate(reduce_elongation(pair.arabizi), table, cap);
            chosen = select(candidates, policy, model).chosen;
        } catch (const UnknownSymbol&) {
            chosen = pair.arabizi;  // verbatim, counts as a miss
        } catch (const EmptyResult&) {
            chosen = pair.arabizi;
        }
        if (std::find(pair.golds.begin(), pair.golds.end(), chosen) != pair.golds.end()) {
            ++report.correct;
        } else {
            ++report.breakdown[classify_error(pair.arabizi, chosen, pair.golds.front(),
                                              candidates, model)];
        }
    }
    report.accuracy =
        static_cast<double>(report.correct) / static_cast<double>(report.total_words);
    return report;
}

EvalReport run_grid(const std::vector<std::string>& train_corpus,
                    const std::vector<GoldPair>& pairs, const MappingTable& table,
                    const std::vector<int>& fractions, const std::vector<Backend>& backends,
                    std::uint64_t seed, int ngram_order, std::size_t cap) {
    EvalReport report;
    int max_fraction = 0;
    for (int fraction : fractions) {
        const std::vector<std::string> slice = slice_corpus(train_corpus, fraction, seed);
        report.slice_messages[fraction] = slice.size();

        std::optional<FrequencyModel> freq;
        std::optional<NGramModel> ngram;
        for (Backend backend : backends) {
            SelectionPolicy policy{backend, Fallback::PreferenceOrder};
            std::optional<EvalReport> cell;
            if (backend == Backend::SimpleSearch) {
                if (!freq) freq = FrequencyModel::build(slice);
                cell = evaluate(pairs, table, policy, ModelHandle(*freq), cap);
            } else {
                if (!ngram) ngram = NGramModel::build(slice, ngram_order);
                cell = evaluate(pairs, table, policy, ModelHandle(*ngram), cap);
            }
            report.grid[{fraction, backend}] = cell->accuracy;
            if (fraction >= max_fraction && backend == backends.front()) {
                max_fraction = fraction;
                report.total_words = cell->total_words;
                report.correct = cell->correct;
                report.accuracy = cell->accuracy;
                report.breakdown = cell->breakdown;
            }
        }
    }
    return report;
}

std::string report_to_json(const EvalReport& report) {
    nlohmann::ordered_json doc;
    doc["total"] = report.total_words;
    doc["correct"] = report.correct;
    doc["accuracy"] = report.accuracy;
    nlohmann::ordered_json breakdown = nlohmann::ordered_json::object();
    for (const auto& [cls, n] : report.breakdown) {
        breakdown[std::string(to_string(cls))] = n;
    }
    doc["breakdown"] = std::move(breakdown);
    nlohmann::ordered_json grid = nlohmann::ordered_json::array();
    for (const auto& [key, accuracy] : report.grid) {
        grid.push_back({{"fraction", key.fraction},
                        {"backend", std::string(to_string(key.backend))},
                        {"accuracy", accuracy}});
    }
    doc["grid"] = std::move(grid);
    if (!report.slice_messages.empty()) {
        nlohmann::ordered_json slices = nlohmann::ordered_json::object();
        for (const auto& [fraction, n] : report.slice_messages) {
            slices[std::to_string(fraction)] = n;
        }
        doc["slices"] = std::move(slices);
    }
    return doc.dump(2);
}

std::string render_grid_table(const EvalReport& report) {
    std::vector<int> fractions;
    std::vector<Backend> backends;
    for (const auto& [key, accuracy] : report.grid) {
        if (std::find(fractions.begin(), fractions.end(), key.fraction) == fractions.end()) {
            fractions.push_back(key.fraction);
        }
        if (std::find(backends.begin(), backends.end(), key.backend) == backends.end()) {
            backends.push_back(key.backend);
        }
    }
    std::sort(fractions.begin(), fractions.end());

    std::ostringstream out;
    out << "backend";
    for (int f : fractions) out << '\t' << f << '%';
    out << '\n';
    for (Backend b : backends) {
        out << to_string(b);
        bool nondecreasing = true;
        double prev = -1.0;
        for (int f : fractions) {
            const auto it = report.grid.find({f, b});
            if (it == report.grid.end()) {
                out << "\t-";
                continue;
            }
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.2f", it->second * 100.0);
            out << '\t' << buf;
            if (it->second < prev) nondecreasing = false;
            prev = it->second;
        }
        out << '\n';
        if (fractions.size() > 1) {
            out << "# " << to_string(b) << ": accuracy "
                << (nondecreasing ? "grows with" : "does not grow monotonically with")
                << " the corpus fraction\n";
        }
    }
    return std::move(out).str();
}

}  // namespace arabizi
