// candgen.hpp -- splits an Arabizi word into mapping units (digraphs first,
// greedy left to right) and expands the per-unit replacement lists into the
// full set of Arabic-script candidates, preference-ordered and deduplicated.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "arabizi/charmap.hpp"

namespace arabizi {

struct SegmentUnit {
    ArabiziSymbol symbol;
    Position position;

    bool operator==(const SegmentUnit&) const = default;
};

struct Segmentation {
    std::string source;  // case-folded word
    std::vector<SegmentUnit> units;
};

// Greedy maximal-munch segmentation over the table's registered digraphs.
// Throws UnknownSymbol (with the offending index) on characters the table
// does not know.
Segmentation segment(std::string_view word, const MappingTable& table);

struct CandidateSet {
    std::string source;
    std::vector<std::string> candidates;  // preference order, duplicate-free
    bool truncated = false;

    bool contains(std::string_view candidate) const;
};

inline constexpr std::size_t kDefaultCandidateCap = 4096;

// Cartesian expansion of the per-unit replacement lists. Candidates keep the
// lexicographic order induced by the per-unit preference lists; duplicates
// (empty replacements can collide) keep their first, highest-preference
// rank. When the raw product exceeds `cap`, only the first `cap` candidates
// are kept and `truncated` is set.
CandidateSet generate(std::string_view word, const MappingTable& table,
                      std::size_t cap = kDefaultCandidateCap);

}  // namespace arabizi
