#ifndef SENTILEX_LEXICON_HPP
#define SENTILEX_LEXICON_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sentilex/errors.hpp"
#include "sentilex/format.hpp"
#include "sentilex/text.hpp"
#include "sentilex/unicode.hpp"

namespace sentilex {

inline constexpr double kMaxWeight = 5.0;

// A sentiment lexicon entry: a lemma key (a phrase when longer than one
// lemma) with a signed weight on the [-5, +5] scale. The optional POS
// restricts single-lemma matches in the SO-CAL engine.
struct LexiconEntry {
    std::vector<std::string> key; // folded lemmas, size >= 1
    double weight = 0.0;
    std::optional<PosTag> pos;
    std::set<std::string> sources;

    bool positive() const { return weight > 0.0; }
};

inline std::string key_string(const std::vector<std::string>& key) {
    std::string s;
    for (std::size_t i = 0; i < key.size(); ++i) {
        if (i) s += ' ';
        s += key[i];
    }
    return s;
}

struct Lexicon {
    std::string name;
    std::unordered_map<std::string, LexiconEntry> entries; // key_string -> entry

    std::size_t size() const { return entries.size(); }
    bool contains(const std::string& key) const { return entries.count(key) != 0; }
    const LexiconEntry* find(const std::string& key) const {
        const auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    }
};

// A lexicon entry as read from a file, before cleaning.
struct RawLexiconEntry {
    std::string key_text; // space-separated lemmas
    double weight = 0.0;
    std::optional<PosTag> pos;
};

struct CleaningReport {
    std::string lexicon;
    std::size_t input = 0;
    std::size_t kept = 0;
    std::size_t removed_out_of_range = 0;
    std::size_t removed_neutral = 0;
    std::size_t removed_latin = 0;
    std::size_t removed_conflict_keys = 0; // keys dropped for carrying both polarities
    std::size_t removed_duplicates = 0;

    std::string to_text() const {
        std::ostringstream out;
        out << "lexicon\t" << lexicon << '\n'
            << "input\t" << input << '\n'
            << "kept\t" << kept << '\n'
            << "removed_out_of_range\t" << removed_out_of_range << '\n'
            << "removed_neutral\t" << removed_neutral << '\n'
            << "removed_latin\t" << removed_latin << '\n'
            << "removed_conflict_keys\t" << removed_conflict_keys << '\n'
            << "removed_duplicates\t" << removed_duplicates << '\n';
        return out.str();
    }
};

namespace detail {

inline std::vector<std::string> split_key(std::string_view text) {
    std::vector<std::string> lemmas;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && text[i] == ' ') ++i;
        std::size_t j = i;
        while (j < text.size() && text[j] != ' ') ++j;
        if (j > i) lemmas.emplace_back(text.substr(i, j - i));
        i = j;
    }
    return lemmas;
}

} // namespace detail

// Applies the cleaning pipeline, in order: out-of-range weights rejected,
// neutral (zero-weight) entries dropped, entries with Latin letters dropped,
// keys lowercased and ё-folded, keys carrying both polarities dropped
// entirely, remaining duplicates collapsed to the first occurrence. The
// report counts each category; cleaning a cleaned lexicon is a no-op.
inline std::pair<Lexicon, CleaningReport> clean_lexicon(
    const std::vector<RawLexiconEntry>& raw, const std::string& name) {
    CleaningReport report;
    report.lexicon = name;
    report.input = raw.size();

    struct Candidate {
        std::string key;
        std::vector<std::string> lemmas;
        double weight;
        std::optional<PosTag> pos;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(raw.size());

    for (const auto& entry : raw) {
        if (!(std::abs(entry.weight) <= kMaxWeight) || std::isnan(entry.weight)) {
            ++report.removed_out_of_range;
            continue;
        }
        if (entry.weight == 0.0) {
            ++report.removed_neutral;
            continue;
        }
        std::vector<std::string> lemmas = detail::split_key(entry.key_text);
        if (lemmas.empty()) {
            ++report.removed_out_of_range; // blank key, nothing to look up
            continue;
        }
        bool latin = false;
        for (auto& lemma : lemmas) {
            if (contains_latin(lemma)) {
                latin = true;
                break;
            }
            lemma = fold_text(lemma);
        }
        if (latin) {
            ++report.removed_latin;
            continue;
        }
        Candidate c;
        c.key = key_string(lemmas);
        c.lemmas = std::move(lemmas);
        c.weight = entry.weight;
        c.pos = entry.pos;
        candidates.push_back(std::move(c));
    }

    std::unordered_map<std::string, int> polarity; // +1, -1, 0 = conflict
    for (const auto& c : candidates) {
        const int sign = c.weight > 0 ? 1 : -1;
        auto [it, inserted] = polarity.emplace(c.key, sign);
        if (!inserted && it->second != 0 && it->second != sign) it->second = 0;
    }

    Lexicon lexicon;
    lexicon.name = name;
    std::unordered_set<std::string> counted_conflicts;
    for (auto& c : candidates) {
        if (polarity[c.key] == 0) {
            if (counted_conflicts.insert(c.key).second)
                ++report.removed_conflict_keys;
            continue;
        }
        auto it = lexicon.entries.find(c.key);
        if (it != lexicon.entries.end()) {
            ++report.removed_duplicates;
            continue;
        }
        LexiconEntry entry;
        entry.key = std::move(c.lemmas);
        entry.weight = c.weight;
        entry.pos = c.pos;
        entry.sources = {name};
        lexicon.entries.emplace(std::move(c.key), std::move(entry));
    }
    report.kept = lexicon.entries.size();
    return {std::move(lexicon), std::move(report)};
}

// Voting combination: LexN keeps exactly the keys present with a consistent
// polarity in at least n of the input lexicons. Keys whose polarity differs
// across lexicons are excluded from every LexN. The combined weight is the
// mean of the source weights (summed in sorted order, so the result does not
// depend on input ordering); sources records the contributing lexicons.
inline Lexicon vote_combine(const std::vector<Lexicon>& lexicons, std::size_t n) {
    if (n < 1) throw InputError("vote threshold n must be >= 1");
    Lexicon out;
    out.name = "Lex" + std::to_string(n);
    if (lexicons.empty() || n > lexicons.size()) return out;

    struct Gathered {
        const LexiconEntry* first = nullptr;
        std::vector<double> weights;
        std::vector<const LexiconEntry*> members;
        std::set<std::string> sources;
        bool conflict = false;
    };
    std::unordered_map<std::string, Gathered> gathered;
    for (const auto& lexicon : lexicons) {
        for (const auto& [key, entry] : lexicon.entries) {
            Gathered& g = gathered[key];
            if (!g.first) {
                g.first = &entry;
            } else if (g.first->positive() != entry.positive()) {
                g.conflict = true;
            }
            g.weights.push_back(entry.weight);
            g.members.push_back(&entry);
            g.sources.insert(lexicon.name);
        }
    }
    for (auto& [key, g] : gathered) {
        if (g.conflict || g.weights.size() < n) continue;
        std::sort(g.weights.begin(), g.weights.end());
        double sum = 0.0;
        for (double w : g.weights) sum += w;
        LexiconEntry entry;
        entry.key = g.first->key;
        entry.weight = sum / static_cast<double>(g.weights.size());
        std::optional<PosTag> pos;
        bool pos_consistent = true;
        for (const LexiconEntry* member : g.members) {
            if (!member->pos) continue;
            if (!pos) pos = member->pos;
            else if (*pos != *member->pos) pos_consistent = false;
        }
        entry.pos = pos_consistent ? pos : std::nullopt;
        entry.sources = std::move(g.sources);
        out.entries.emplace(key, std::move(entry));
    }
    return out;
}

struct LexiconStats {
    std::string name;
    std::size_t total = 0;
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::optional<double> positive_pct;
    std::optional<double> negative_pct;
};

inline LexiconStats lexicon_stats(const Lexicon& lexicon) {
    LexiconStats stats;
    stats.name = lexicon.name;
    for (const auto& [key, entry] : lexicon.entries)
        entry.positive() ? ++stats.positive : ++stats.negative;
    stats.total = stats.positive + stats.negative;
    if (stats.total > 0) {
        const auto pct = percent_split({stats.positive, stats.negative});
        stats.positive_pct = pct[0];
        stats.negative_pct = pct[1];
    }
    return stats;
}

// Renders rows of lexicon characteristics (one lexicon per row).
inline std::string stats_table_tsv(const std::vector<LexiconStats>& rows) {
    std::string out = tsv_row(
        {"lexicon", "total", "positive", "positive_pct", "negative", "negative_pct"});
    for (const auto& s : rows) {
        out += tsv_row({s.name, std::to_string(s.total), std::to_string(s.positive),
                        s.positive_pct ? format_fixed(*s.positive_pct, 1) : "",
                        std::to_string(s.negative),
                        s.negative_pct ? format_fixed(*s.negative_pct, 1) : ""});
    }
    return out;
}

// --- Lexicon file I/O ------------------------------------------------------
//
// UTF-8 TSV: KEY (space-separated lemmas), WEIGHT, optional POS (N|ADJ|V|ADV).
// An optional "#scale <real>" header multiplies all weights onto the
// canonical [-5, +5] scale. Lines starting with '#' are otherwise comments.

inline std::optional<PosTag> parse_lexicon_pos(std::string_view tag) {
    if (tag == "N") return PosTag::Noun;
    if (tag == "ADJ") return PosTag::Adj;
    if (tag == "V") return PosTag::Verb;
    if (tag == "ADV") return PosTag::Adv;
    return std::nullopt;
}

inline const char* lexicon_pos_token(PosTag pos) {
    switch (pos) {
        case PosTag::Noun: return "N";
        case PosTag::Adj: return "ADJ";
        case PosTag::Verb: return "V";
        case PosTag::Adv: return "ADV";
        default: return "";
    }
}

inline std::vector<RawLexiconEntry> read_lexicon_entries(std::istream& in,
                                                         const std::string& source) {
    std::vector<RawLexiconEntry> entries;
    std::string line;
    std::size_t line_no = 0;
    double scale = 1.0;
    bool scale_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.rfind("#scale", 0) == 0) {
                if (scale_seen)
                    throw ParseError(source, line_no, "duplicate #scale header");
                if (!entries.empty())
                    throw ParseError(source, line_no, "#scale must precede entries");
                const std::string value = line.substr(6);
                try {
                    scale = std::stod(value);
                } catch (const std::exception&) {
                    throw ParseError(source, line_no, "bad #scale value '" + value + "'");
                }
                if (!(scale > 0.0))
                    throw ParseError(source, line_no, "#scale must be positive");
                scale_seen = true;
            }
            continue;
        }
        std::vector<std::string> cols;
        std::size_t start = 0;
        while (true) {
            const std::size_t tab = line.find('\t', start);
            if (tab == std::string::npos) {
                cols.push_back(line.substr(start));
                break;
            }
            cols.push_back(line.substr(start, tab - start));
            start = tab + 1;
        }
        if (cols.size() != 2 && cols.size() != 3)
            throw ParseError(source, line_no,
                             "expected KEY<TAB>WEIGHT[<TAB>POS], got " +
                                 std::to_string(cols.size()) + " columns");
        RawLexiconEntry entry;
        entry.key_text = cols[0];
        if (detail::split_key(entry.key_text).empty())
            throw ParseError(source, line_no, "empty KEY column");
        try {
            std::size_t used = 0;
            entry.weight = std::stod(cols[1], &used);
            if (used != cols[1].size()) throw std::invalid_argument(cols[1]);
        } catch (const std::exception&) {
            throw ParseError(source, line_no, "bad weight '" + cols[1] + "'");
        }
        entry.weight *= scale;
        if (cols.size() == 3 && !cols[2].empty()) {
            entry.pos = parse_lexicon_pos(cols[2]);
            if (!entry.pos)
                throw ParseError(source, line_no,
                                 "unknown POS tag '" + cols[2] + "' (expected N|ADJ|V|ADV)");
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

inline std::pair<Lexicon, CleaningReport> load_lexicon_file(const std::string& path,
                                                            const std::string& name) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open lexicon file: " + path);
    return clean_lexicon(read_lexicon_entries(in, path), name);
}

// Writes entries sorted by key; weights use shortest round-trip rendering so
// a write/read cycle reproduces them exactly.
inline void write_lexicon(std::ostream& out, const Lexicon& lexicon) {
    std::vector<const LexiconEntry*> sorted;
    sorted.reserve(lexicon.entries.size());
    for (const auto& [key, entry] : lexicon.entries) sorted.push_back(&entry);
    std::sort(sorted.begin(), sorted.end(),
              [](const LexiconEntry* a, const LexiconEntry* b) { return a->key < b->key; });
    for (const LexiconEntry* entry : sorted) {
        out << key_string(entry->key) << '\t' << format_double(entry->weight);
        if (entry->pos) out << '\t' << lexicon_pos_token(*entry->pos);
        out << '\n';
    }
}

// --- Marker lists -----------------------------------------------------------

// Modifier, negation and irrealis lemma lists. The three key sets are
// pairwise disjoint; load_markers enforces this.
struct MarkerLists {
    std::unordered_map<std::string, double> modifiers; // lemma -> percentage delta
    std::unordered_set<std::string> negations;
    std::unordered_set<std::string> irrealis;

    bool is_modifier(const std::string& lemma) const { return modifiers.count(lemma) != 0; }
    bool is_negation(const std::string& lemma) const { return negations.count(lemma) != 0; }
    bool is_irrealis(const std::string& lemma) const { return irrealis.count(lemma) != 0; }
};

namespace detail {

inline std::unordered_set<std::string> read_lemma_list(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open marker file: " + path);
    std::unordered_set<std::string> lemmas;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        lemmas.insert(fold_text(line));
    }
    return lemmas;
}

inline std::unordered_map<std::string, double> read_modifier_list(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open modifier file: " + path);
    std::unordered_map<std::string, double> modifiers;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw ParseError(path, line_no, "expected LEMMA<TAB>DELTA");
        const std::string lemma = fold_text(line.substr(0, tab));
        const std::string value = line.substr(tab + 1);
        double delta = 0.0;
        try {
            std::size_t used = 0;
            delta = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
        } catch (const std::exception&) {
            throw ParseError(path, line_no, "bad modifier delta '" + value + "'");
        }
        if (delta <= -1.0)
            throw InputError("modifier '" + lemma + "' has delta " + format_double(delta) +
                             "; deltas must be greater than -1.0");
        modifiers.emplace(lemma, delta); // first occurrence wins
    }
    return modifiers;
}

} // namespace detail

// Loads the three marker lists; empty paths give empty lists. A lemma present
// in more than one list is a fatal configuration error.
inline MarkerLists load_markers(const std::string& modifier_path,
                                const std::string& negation_path,
                                const std::string& irrealis_path) {
    MarkerLists markers;
    if (!modifier_path.empty()) markers.modifiers = detail::read_modifier_list(modifier_path);
    if (!negation_path.empty()) markers.negations = detail::read_lemma_list(negation_path);
    if (!irrealis_path.empty()) markers.irrealis = detail::read_lemma_list(irrealis_path);

    auto check_disjoint = [](const auto& a, const auto& b, const char* what) {
        for (const auto& item : b) {
            const std::string& lemma = [&]() -> const std::string& {
                if constexpr (requires { item.first; }) return item.first;
                else return item;
            }();
            if (a.count(lemma) != 0)
                throw InputError(std::string("marker lemma '") + lemma +
                                 "' appears in both " + what);
        }
    };
    check_disjoint(markers.modifiers, markers.negations, "modifiers and negations");
    check_disjoint(markers.modifiers, markers.irrealis, "modifiers and irrealis");
    check_disjoint(markers.negations, markers.irrealis, "negations and irrealis");
    return markers;
}

} // namespace sentilex

#endif
