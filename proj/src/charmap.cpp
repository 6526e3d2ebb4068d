#include "arabizi/charmap.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "arabizi/utf8.hpp"

namespace arabizi {

namespace {

constexpr std::array<Position, 4> kPositions = {Position::Initial, Position::Medial,
                                                Position::Final, Position::Sole};

// Symbols allowed to map to the empty replacement (medial position only).
// "ou" is the vowel digraph; it follows the same rule as "u".
bool is_vowel_symbol(std::string_view sym) {
    return sym == "a" || sym == "e" || sym == "i" || sym == "o" || sym == "u" ||
           sym == "y" || sym == "ou";
}

bool valid_symbol_text(std::string_view text) {
    if (text.empty() || text.size() > 2) return false;
    for (char c : text) {
        if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'))) return false;
    }
    return true;
}

bool valid_replacement(std::string_view rep) {
    const std::u32string cps = utf8::decode(rep);
    if (cps.size() > 2) return false;
    for (char32_t cp : cps) {
        if (!utf8::is_arabic_block(cp)) return false;
    }
    return true;
}

std::string fold(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 0x20);
    }
    return out;
}

}  // namespace

std::string_view to_string(Position pos) {
    switch (pos) {
        case Position::Initial: return "initial";
        case Position::Medial: return "medial";
        case Position::Final: return "final";
        case Position::Sole: return "sole";
    }
    return "?";
}

Position position_from_string(std::string_view name) {
    const std::string n = fold(name);
    if (n == "initial") return Position::Initial;
    if (n == "medial") return Position::Medial;
    if (n == "final") return Position::Final;
    if (n == "sole") return Position::Sole;
    throw MalformedEntry("bad position token '" + std::string(name) + "'");
}

MappingTable MappingTable::defaults() {
    Entries e;
    // Same replacement list at every position.
    auto uniform = [&e](std::string_view sym, std::vector<std::string> reps) {
        for (Position p : kPositions) e[{std::string(sym), p}] = reps;
    };
    // Positional vowel rule; the sole entry mirrors the initial one.
    auto vowel = [&e](std::string_view sym, std::vector<std::string> initial,
                      std::vector<std::string> medial, std::vector<std::string> final_) {
        e[{std::string(sym), Position::Initial}] = initial;
        e[{std::string(sym), Position::Sole}] = std::move(initial);
        e[{std::string(sym), Position::Medial}] = std::move(medial);
        e[{std::string(sym), Position::Final}] = std::move(final_);
    };

    uniform("b", {"ب"});
    uniform("c", {"س", "ك"});
    uniform("d", {"د", "ض", "ظ"});
    uniform("f", {"ف"});
    uniform("v", {"ف"});
    uniform("g", {"ق"});
    uniform("h", {"ه", "ح"});
    uniform("j", {"ج"});
    uniform("k", {"ك", "ق"});
    uniform("l", {"ل"});
    uniform("m", {"م"});
    uniform("n", {"ن"});
    uniform("p", {"ب"});
    uniform("q", {"ك"});
    uniform("r", {"ر", "غ"});
    uniform("s", {"س", "ص"});
    uniform("t", {"ت", "ط"});
    uniform("w", {"و"});
    uniform("x", {"كس"});
    uniform("z", {"ز"});
    uniform("7", {"ح"});
    uniform("5", {"خ"});
    uniform("3", {"ع"});
    uniform("9", {"ق"});

    vowel("a", {"أ"}, {"ا", ""}, {"ة", "ا"});
    vowel("e", {"ا"}, {"ا", ""}, {"ا"});
    vowel("i", {"اي"}, {"ي", ""}, {"ي"});
    vowel("y", {"اي"}, {"ي", ""}, {"ي"});
    vowel("o", {"أو"}, {"و", ""}, {"و"});
    vowel("u", {"أو"}, {"و", ""}, {"و"});
    vowel("ou", {"أو"}, {"و", ""}, {"و"});

    uniform("dj", {"ج"});
    uniform("kh", {"خ"});
    uniform("gh", {"غ"});
    uniform("ch", {"ش"});
    uniform("sh", {"ش"});
    uniform("th", {"ث"});

    return from_entries(std::move(e), "builtin-1");
}

MappingTable MappingTable::from_entries(Entries entries, std::string version) {
    std::set<std::string> symbols;
    for (const auto& [key, reps] : entries) {
        const auto& [sym, pos] = key;
        if (!valid_symbol_text(sym)) {
            throw MalformedEntry("bad symbol '" + sym + "'");
        }
        symbols.insert(sym);
        if (reps.empty()) {
            throw MalformedEntry("empty replacement list for '" + sym + "'");
        }
        std::unordered_set<std::string> uniq;
        for (const auto& rep : reps) {
            if (!valid_replacement(rep)) {
                throw MalformedEntry("bad replacement '" + rep + "' for '" + sym + "'");
            }
            if (!uniq.insert(rep).second) {
                throw DuplicateEntry("duplicate replacement for '" + sym + "' at " +
                                     std::string(to_string(pos)));
            }
            if (rep.empty() && !(is_vowel_symbol(sym) && pos == Position::Medial)) {
                throw MalformedEntry("NULL replacement is only allowed for medial vowels, got '" +
                                     sym + "' at " + std::string(to_string(pos)));
            }
        }
    }
    for (const auto& sym : symbols) {
        for (Position p : kPositions) {
            if (!entries.count({sym, p})) {
                throw MissingPosition("symbol '" + sym + "' lacks the " +
                                      std::string(to_string(p)) + " position");
            }
        }
    }

    MappingTable table;
    table.entries_ = std::move(entries);
    table.version_ = std::move(version);
    for (const auto& sym : symbols) {
        if (sym.size() == 2) table.digraphs_.insert(sym);
    }
    return table;
}

MappingTable MappingTable::parse(std::istream& in) {
    Entries entries;
    std::string version = "custom";
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            static const std::string kVersionTag = "# arabizi-mapping ";
            if (line.rfind(kVersionTag, 0) == 0) version = line.substr(kVersionTag.size());
            continue;
        }
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == '\t') {
                fields.push_back(line.substr(start, i - start));
                start = i + 1;
            }
        }
        if (fields.size() != 3) {
            throw MalformedEntry("line " + std::to_string(lineno) +
                                 ": expected symbol<TAB>position<TAB>replacements");
        }
        const std::string sym = fold(fields[0]);
        const Position pos = position_from_string(fields[1]);
        std::vector<std::string> reps;
        start = 0;
        const std::string& repfield = fields[2];
        for (std::size_t i = 0; i <= repfield.size(); ++i) {
            if (i == repfield.size() || repfield[i] == '|') {
                std::string rep = repfield.substr(start, i - start);
                start = i + 1;
                if (rep == "NULL") rep.clear();
                else if (rep.empty()) {
                    throw MalformedEntry("line " + std::to_string(lineno) +
                                         ": empty replacement (use NULL)");
                }
                reps.push_back(std::move(rep));
            }
        }
        auto [it, inserted] = entries.emplace(Key{sym, pos}, std::move(reps));
        (void)it;
        if (!inserted) {
            throw DuplicateEntry("line " + std::to_string(lineno) + ": duplicate entry for '" +
                                 sym + "' at " + fields[1]);
        }
    }
    return from_entries(std::move(entries), std::move(version));
}

MappingTable MappingTable::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open mapping file '" + path + "'");
    return parse(in);
}

void MappingTable::save(std::ostream& out) const {
    out << "# arabizi-mapping " << version_ << "\n";
    for (Position p : kPositions) {
        for (const auto& [key, reps] : entries_) {
            if (key.second != p) continue;
            out << key.first << '\t' << to_string(p) << '\t';
            for (std::size_t i = 0; i < reps.size(); ++i) {
                if (i) out << '|';
                out << (reps[i].empty() ? "NULL" : reps[i]);
            }
            out << '\n';
        }
    }
}

void MappingTable::save_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot write mapping file '" + path + "'");
    save(out);
    if (!out) throw IoFailure("error writing mapping file '" + path + "'");
}

const std::vector<std::string>& MappingTable::lookup(const ArabiziSymbol& sym,
                                                     Position pos) const {
    const auto it = entries_.find({sym.text, pos});
    if (it == entries_.end()) throw UnknownSymbol(sym.text, 0);
    return it->second;
}

const std::vector<std::string>* MappingTable::find(std::string_view symbol, Position pos) const {
    const auto it = entries_.find({std::string(symbol), pos});
    return it == entries_.end() ? nullptr : &it->second;
}

bool MappingTable::has_symbol(std::string_view symbol) const {
    for (Position p : kPositions) {
        if (entries_.count({std::string(symbol), p})) return true;
    }
    return false;
}

}  // namespace arabizi
