// charmap.hpp -- the Arabizi-to-Arabic symbol mapping table with
// position-aware lookup. A symbol is one or two Latin letters/digits; each
// (symbol, position) pair maps to an ordered preference list of Arabic
// replacement strings. The empty replacement encodes an unwritten short
// vowel and is only legal for vowel symbols in medial position.

#pragma once

#include <compare>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "arabizi/errors.hpp"

namespace arabizi {

enum class Position { Initial, Medial, Final, Sole };

std::string_view to_string(Position pos);
Position position_from_string(std::string_view name);  // throws MalformedEntry

struct ArabiziSymbol {
    std::string text;  // 1-2 characters, [a-z0-9], lowercase

    bool is_digraph() const { return text.size() == 2; }
    auto operator<=>(const ArabiziSymbol&) const = default;
};

class MappingTable {
public:
    using Key = std::pair<std::string, Position>;
    using Entries = std::map<Key, std::vector<std::string>>;

    // The built-in table: the full consonant inventory, the positional vowel
    // rules, and the standard Maghrebi digraphs (dj, kh, gh, ch, sh, th, ou).
    static MappingTable defaults();

    // Validated construction; throws MalformedEntry / DuplicateEntry /
    // MissingPosition when the entries break a table invariant.
    static MappingTable from_entries(Entries entries, std::string version);

    // Mapping-file format: `symbol<TAB>position<TAB>repl1|repl2|...` per
    // line, the literal token NULL for the empty replacement, `#` comments.
    static MappingTable parse(std::istream& in);
    static MappingTable load_file(const std::string& path);  // throws IoFailure

    void save(std::ostream& out) const;
    void save_file(const std::string& path) const;

    // Preference-ordered replacement list; never empty. UnknownSymbol when
    // the symbol has no entry.
    const std::vector<std::string>& lookup(const ArabiziSymbol& sym, Position pos) const;
    const std::vector<std::string>* find(std::string_view symbol, Position pos) const;

    bool has_symbol(std::string_view symbol) const;
    bool is_digraph(std::string_view pair) const { return digraphs_.count(std::string(pair)) > 0; }

    const Entries& entries() const { return entries_; }
    const std::string& version() const { return version_; }

private:
    MappingTable() = default;

    Entries entries_;
    std::set<std::string, std::less<>> digraphs_;
    std::string version_;
};

}  // namespace arabizi
