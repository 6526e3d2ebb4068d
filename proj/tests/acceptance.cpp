// acceptance.cpp -- end-to-end checks for the toolkit's headline
// guarantees. Prints one PASS/FAIL line per criterion and exits nonzero if
// any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "arabizi/candgen.hpp"
#include "arabizi/charmap.hpp"
#include "arabizi/evalharness.hpp"
#include "arabizi/langmodel.hpp"
#include "arabizi/selector.hpp"
#include "arabizi/textprep.hpp"

using namespace arabizi;

namespace {

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail = "") {
    std::printf("%s: %s%s%s\n", ok ? "PASS" : "FAIL", name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

double elapsed_ms(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

std::string random_word(std::mt19937& rng, int max_len) {
    static const std::string alphabet = "abcdefghijklmnopqrstuvwxyz3579";
    std::uniform_int_distribution<int> len(1, max_len);
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::string w;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) w.push_back(alphabet[pick(rng)]);
    return w;
}

// Brute-force cartesian expansion, independent of generate().
void brute_expand(const std::vector<std::pair<std::string, Position>>& units, std::size_t i,
                  const std::string& acc, const MappingTable& table, std::set<std::string>& out) {
    if (i == units.size()) {
        if (!acc.empty()) out.insert(acc);
        return;
    }
    for (const std::string& rep : *table.find(units[i].first, units[i].second)) {
        brute_expand(units, i + 1, acc + rep, table, out);
    }
}

std::set<std::string> brute_force_candidates(const std::string& word, const MappingTable& table) {
    std::vector<std::string> symbols;
    for (std::size_t i = 0; i < word.size();) {
        if (i + 2 <= word.size() && table.is_digraph(word.substr(i, 2))) {
            symbols.push_back(word.substr(i, 2));
            i += 2;
        } else {
            symbols.push_back(word.substr(i, 1));
            i += 1;
        }
    }
    std::vector<std::pair<std::string, Position>> units;
    for (std::size_t k = 0; k < symbols.size(); ++k) {
        Position pos = symbols.size() == 1 ? Position::Sole
                       : k == 0            ? Position::Initial
                       : k + 1 == symbols.size() ? Position::Final
                                                 : Position::Medial;
        units.emplace_back(symbols[k], pos);
    }
    std::set<std::string> out;
    brute_expand(units, 0, "", table, out);
    return out;
}

// Builds a synthetic test bed: arabizi words whose designated gold form is
// the unique most-frequent in-vocabulary candidate, with golds chosen so no
// gold is a candidate of any other word.
struct SyntheticBed {
    std::vector<GoldPair> pairs;
    std::vector<std::string> corpus;  // one message per token
};

SyntheticBed build_synthetic_bed(const MappingTable& table, std::size_t want_pairs,
                                 int copies_per_gold) {
    static const std::vector<std::string> base_words = [] {
        std::vector<std::string> w;
        const std::string consonants = "bdfjklmnrstz";
        for (char c1 : consonants) {
            for (char c2 : consonants) {
                w.push_back(std::string(1, c1) + "a" + std::string(1, c2) + "i");
            }
        }
        return w;
    }();

    SyntheticBed bed;
    std::vector<CandidateSet> seen_sets;
    std::set<std::string> used_golds;
    for (const std::string& word : base_words) {
        if (bed.pairs.size() >= want_pairs) break;
        const CandidateSet cands = generate(word, table);
        // Pick a non-rank-1 candidate that no other selected word generates.
        std::string gold;
        for (std::size_t i = 1; i < cands.candidates.size(); ++i) {
            const std::string& c = cands.candidates[i];
            if (used_golds.count(c)) continue;
            bool clash = false;
            for (const CandidateSet& other : seen_sets) {
                if (other.contains(c)) {
                    clash = true;
                    break;
                }
            }
            if (!clash) {
                gold = c;
                break;
            }
        }
        if (gold.empty()) continue;
        bool pollutes = false;
        for (const std::string& g : used_golds) {
            if (cands.contains(g)) {
                pollutes = true;  // this word would see an earlier gold in-vocab
                break;
            }
        }
        if (pollutes) continue;
        used_golds.insert(gold);
        seen_sets.push_back(cands);
        bed.pairs.push_back(GoldPair{word, {gold}});
        for (int i = 0; i < copies_per_gold; ++i) bed.corpus.push_back(gold);
    }
    return bed;
}

void criterion_candidate_counts(const MappingTable& table) {
    generate("kraht", table);  // warm up
    auto start = std::chrono::steady_clock::now();
    const CandidateSet kraht = generate("kraht", table);
    const double ms_kraht = elapsed_ms(start);
    start = std::chrono::steady_clock::now();
    const CandidateSet hiati = generate("hiati", table);
    const double ms_hiati = elapsed_ms(start);

    std::ostringstream detail;
    detail << "kraht=" << kraht.candidates.size() << " (" << ms_kraht << " ms), hiati="
           << hiati.candidates.size() << " (" << ms_hiati << " ms)";
    report("candidate-count reproduction (kraht=32, hiati=16, <1 ms each)",
           kraht.candidates.size() == 32 && hiati.candidates.size() == 16 && ms_kraht < 1.0 &&
               ms_hiati < 1.0,
           detail.str());
}

void criterion_gold_membership(const MappingTable& table) {
    const std::vector<std::pair<std::string, std::string>> expected = {
        {"kraht", "كرهت"}, {"hiati", "حياتي"}, {"3afsa", "عفسة"}, {"djabat", "جابت"},
        {"raht", "رحت"},   {"raht", "راحت"},   {"matar", "مطر"},  {"matar", "مطار"},
        {"bik", "بيك"},    {"bark", "برك"},
    };
    bool ok = true;
    std::string missing;
    for (const auto& [word, gold] : expected) {
        if (!generate(word, table).contains(gold)) {
            ok = false;
            missing += word + "->" + gold + " ";
        }
    }
    report("gold-membership suite (10 attested forms generated)", ok, missing);
}

void criterion_oracle_equivalence(const MappingTable& table) {
    std::mt19937 rng(20240601);
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string first_mismatch;
    for (int i = 0; i < 1000; ++i) {
        const std::string w = random_word(rng, 6);
        const CandidateSet set = generate(w, table);
        const std::set<std::string> actual(set.candidates.begin(), set.candidates.end());
        if (actual != brute_force_candidates(w, table) ||
            actual.size() != set.candidates.size()) {
            ok = false;
            if (first_mismatch.empty()) first_mismatch = w;
        }
    }
    const double ms = elapsed_ms(start);
    std::ostringstream detail;
    detail << "1000 words in " << ms / 1000.0 << " s";
    if (!first_mismatch.empty()) detail << ", first mismatch '" << first_mismatch << "'";
    report("oracle equivalence (1000 random words, <10 s)", ok && ms < 10000.0, detail.str());
}

void criterion_selection_correctness(const MappingTable& table) {
    const SyntheticBed bed = build_synthetic_bed(table, 40, 5);
    const bool sized = bed.pairs.size() == 40 && bed.corpus.size() == 200;

    const FrequencyModel freq = FrequencyModel::build(bed.corpus);
    const NGramModel ngram = NGramModel::build(bed.corpus, 2);
    const EvalReport simple =
        evaluate(bed.pairs, table, SelectionPolicy{Backend::SimpleSearch, Fallback::PreferenceOrder},
                 ModelHandle(freq));
    const EvalReport ng = evaluate(
        bed.pairs, table, SelectionPolicy{Backend::NGram, Fallback::PreferenceOrder},
        ModelHandle(ngram));

    std::ostringstream detail;
    detail << bed.corpus.size() << "-word corpus, simple=" << simple.accuracy * 100.0
           << "%, ngram=" << ng.accuracy * 100.0 << "%";
    report("selection correctness (synthetic 200-word corpus, 100% both backends)",
           sized && simple.accuracy == 1.0 && ng.accuracy == 1.0, detail.str());
}

void criterion_backend_agreement(const MappingTable& table) {
    const SyntheticBed bed = build_synthetic_bed(table, 50, 3);
    const FrequencyModel freq = FrequencyModel::build(bed.corpus);
    const NGramModel ngram = NGramModel::build(bed.corpus, 2);
    bool ok = bed.pairs.size() == 50;
    std::string mismatch;
    for (const GoldPair& pair : bed.pairs) {
        const CandidateSet cands = generate(pair.arabizi, table);
        const auto simple =
            select(cands, SelectionPolicy{Backend::SimpleSearch, Fallback::PreferenceOrder},
                   ModelHandle(freq));
        const auto ng = select(cands, SelectionPolicy{Backend::NGram, Fallback::PreferenceOrder},
                               ModelHandle(ngram));
        if (simple.chosen != ng.chosen) {
            ok = false;
            if (mismatch.empty()) mismatch = pair.arabizi;
        }
    }
    report("backend agreement (50 words, unique argmax)", ok, mismatch);
}

void criterion_monotonic_grid(const MappingTable& table) {
    // Vocabulary coverage grows with the slice: each gold form rides a
    // different number of distinct messages.
    const SyntheticBed bed = build_synthetic_bed(table, 20, 1);
    std::vector<std::string> corpus;
    for (std::size_t i = 0; i < bed.pairs.size(); ++i) {
        const int copies = 1 + static_cast<int>(i) * 7;
        for (int c = 0; c < copies; ++c) {
            corpus.push_back(bed.pairs[i].golds.front() + " " + std::to_string(c));
        }
    }
    const std::vector<int> fractions = {1, 5, 10, 25, 50, 75, 100};
    const EvalReport r =
        run_grid(corpus, bed.pairs, table, fractions, {Backend::SimpleSearch}, 42);
    bool nondecreasing = true;
    double prev = -1.0;
    std::ostringstream detail;
    for (int f : fractions) {
        const double acc = r.grid.at({f, Backend::SimpleSearch});
        detail << f << "%:" << acc * 100.0 << " ";
        if (acc < prev) nondecreasing = false;
        prev = acc;
    }
    const double full = r.grid.at({100, Backend::SimpleSearch});
    const double one = r.grid.at({1, Backend::SimpleSearch});
    report("monotonic corpus-fraction grid", nondecreasing && full == 1.0 && one < 1.0,
           detail.str());
}

void criterion_ngram_normalization() {
    const std::vector<std::string> vocab_words = {"مطر", "مطار", "جميل", "حياتي", "كرهت",
                                                  "عفسة", "رحت",  "راحت", "بيك",  "برك"};
    std::mt19937 rng(97);
    std::uniform_int_distribution<std::size_t> pick(0, vocab_words.size() - 1);
    std::uniform_int_distribution<int> len(1, 6);
    std::vector<std::string> corpus;
    for (int i = 0; i < 80; ++i) {
        std::string msg;
        const int n = len(rng);
        for (int j = 0; j < n; ++j) {
            if (j) msg += ' ';
            msg += vocab_words[pick(rng)];
        }
        corpus.push_back(msg);
    }
    const NGramModel m = NGramModel::build(corpus, 2);
    const FrequencyModel f = FrequencyModel::build(corpus);

    bool sums_ok = true;
    double worst = 0.0;
    for (int h = 0; h < 10; ++h) {
        const std::vector<std::string> context = {vocab_words[pick(rng)]};
        double sum = std::exp(m.conditional_logprob(context, "<unseen>"));
        for (const std::string& w : m.vocab()) {
            sum += std::exp(m.conditional_logprob(context, w));
        }
        worst = std::max(worst, std::abs(sum - 1.0));
        if (std::abs(sum - 1.0) > 1e-6) sums_ok = false;
    }

    // unigram ranking must equal frequency ranking, ties included
    bool rank_ok = true;
    for (const auto& [w1, c1] : f.counts()) {
        for (const auto& [w2, c2] : f.counts()) {
            const double l1 = m.unigram_logprob(w1);
            const double l2 = m.unigram_logprob(w2);
            if ((c1 < c2 && l1 >= l2) || (c1 == c2 && l1 != l2)) rank_ok = false;
        }
    }
    std::ostringstream detail;
    detail << "max |sum-1| = " << worst;
    report("n-gram normalization and frequency-consistent ranking", sums_ok && rank_ok,
           detail.str());
}

void criterion_round_trip(const MappingTable& table) {
    bool ok = true;
    std::string what;

    std::ostringstream map1;
    table.save(map1);
    std::istringstream mapin(map1.str());
    std::ostringstream map2;
    MappingTable::parse(mapin).save(map2);
    if (map1.str() != map2.str()) {
        ok = false;
        what += "mapping ";
    }

    const std::vector<std::string> corpus = {"مطر مطر جميل", "حياتي رحت", "برك بيك برك"};
    const FrequencyModel freq = FrequencyModel::build(corpus);
    std::ostringstream f1;
    freq.save(f1);
    std::istringstream fin(f1.str());
    std::ostringstream f2;
    FrequencyModel::load(fin).save(f2);
    if (f1.str() != f2.str()) {
        ok = false;
        what += "frequency ";
    }

    const NGramModel ngram = NGramModel::build(corpus, 2);
    std::ostringstream n1;
    ngram.save(n1);
    std::istringstream nin(n1.str());
    std::ostringstream n2;
    NGramModel::load(nin).save(n2);
    if (n1.str() != n2.str()) {
        ok = false;
        what += "ngram";
    }
    report("round-trip persistence (mapping, frequency, n-gram)", ok, what);
}

void criterion_elongation() {
    bool ok = reduce_elongation("hiaaaaaati") == "hiati";
    std::mt19937 rng(53);
    std::uniform_int_distribution<int> len(1, 24);
    std::uniform_int_distribution<int> pick(0, 3);
    const char letters[] = {'a', 'l', 'h', 'i'};
    for (int i = 0; i < 2000; ++i) {
        std::string w;
        const int n = len(rng);
        for (int j = 0; j < n; ++j) w.push_back(letters[pick(rng)]);
        const std::string once = reduce_elongation(w);
        if (reduce_elongation(once) != once) ok = false;
    }
    report("elongation reduction (hiaaaaaati -> hiati, idempotent)", ok);
}

}  // namespace

int main() {
    const MappingTable table = MappingTable::defaults();
    criterion_candidate_counts(table);
    criterion_gold_membership(table);
    criterion_oracle_equivalence(table);
    criterion_selection_correctness(table);
    criterion_backend_agreement(table);
    criterion_monotonic_grid(table);
    criterion_ngram_normalization();
    criterion_round_trip(table);
    criterion_elongation();

    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
