#include "arabizi/candgen.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "arabizi/utf8.hpp"

namespace arabizi {

namespace {

std::string fold_word(std::string_view word) {
    std::string folded(word);
    for (char& c : folded) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 0x20);
    }
    return folded;
}

}  // namespace

Segmentation segment(std::string_view word, const MappingTable& table) {
    Segmentation seg;
    seg.source = fold_word(word);
    const std::string& w = seg.source;

    std::vector<ArabiziSymbol> symbols;
    std::size_t i = 0;
    while (i < w.size()) {
        if (i + 2 <= w.size() && table.is_digraph(std::string_view(w).substr(i, 2))) {
            symbols.push_back(ArabiziSymbol{w.substr(i, 2)});
            i += 2;
            continue;
        }
        const std::string single = w.substr(i, 1);
        if (!table.has_symbol(single)) throw UnknownSymbol(single, i);
        symbols.push_back(ArabiziSymbol{single});
        i += 1;
    }

    seg.units.reserve(symbols.size());
    for (std::size_t k = 0; k < symbols.size(); ++k) {
        Position pos;
        if (symbols.size() == 1) pos = Position::Sole;
        else if (k == 0) pos = Position::Initial;
        else if (k + 1 == symbols.size()) pos = Position::Final;
        else pos = Position::Medial;
        seg.units.push_back(SegmentUnit{std::move(symbols[k]), pos});
    }
    return seg;
}

bool CandidateSet::contains(std::string_view candidate) const {
    return std::find(candidates.begin(), candidates.end(), candidate) != candidates.end();
}

CandidateSet generate(std::string_view word, const MappingTable& table, std::size_t cap) {
    const Segmentation seg = segment(word, table);

    CandidateSet result;
    result.source = seg.source;

    // Saturating raw product of the per-unit list sizes.
    std::size_t raw_product = 1;
    constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
    for (const SegmentUnit& unit : seg.units) {
        const std::size_t n = table.lookup(unit.symbol, unit.position).size();
        raw_product = (raw_product > kMax / n) ? kMax : raw_product * n;
    }
    result.truncated = raw_product > cap;

    // Level-wise expansion with per-level dedup. Keeping at most `cap`
    // distinct prefixes per level is lossless for the first `cap` final
    // candidates: appending one shared suffix to distinct prefixes keeps
    // them distinct, so a prefix ranked past the cap cannot feed a final
    // candidate ranked inside it.
    std::vector<std::string> prefixes{""};
    for (const SegmentUnit& unit : seg.units) {
        const auto& reps = table.lookup(unit.symbol, unit.position);
        std::vector<std::string> next;
        std::unordered_set<std::string> seen;
        next.reserve(std::min(prefixes.size() * reps.size(), cap));
        for (const std::string& prefix : prefixes) {
            for (const std::string& rep : reps) {
                if (next.size() >= cap) break;
                std::string cand = prefix + rep;
                if (seen.insert(cand).second) next.push_back(std::move(cand));
            }
            if (next.size() >= cap) break;
        }
        prefixes = std::move(next);
    }

    std::erase(prefixes, "");
    if (prefixes.empty()) {
        throw EmptyResult("all candidates for '" + seg.source + "' are empty");
    }
    result.candidates = std::move(prefixes);
    return result;
}

}  // namespace arabizi
