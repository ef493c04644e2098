#ifndef SENTILEX_MATCH_HPP
#define SENTILEX_MATCH_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sentilex/lexicon.hpp"
#include "sentilex/text.hpp"

namespace sentilex {

struct PhraseMatch {
    const LexiconEntry* entry = nullptr;
    std::size_t begin = 0;
    std::size_t length = 0;
};

// Longest-match lookup over lemma sequences. Entries are indexed by their
// first lemma; candidates at a position are tried longest first, so phrases
// win over single lemmas. The index holds pointers into the lexicon, which
// must outlive it.
class PhraseIndex {
public:
    explicit PhraseIndex(const Lexicon& lexicon) {
        for (const auto& [key, entry] : lexicon.entries)
            index_[entry.key.front()].push_back(&entry);
        for (auto& [lemma, candidates] : index_) {
            std::sort(candidates.begin(), candidates.end(),
                      [](const LexiconEntry* a, const LexiconEntry* b) {
                          if (a->key.size() != b->key.size())
                              return a->key.size() > b->key.size();
                          return a->key < b->key;
                      });
        }
    }

    std::optional<PhraseMatch> match_at(const std::vector<const Token*>& tokens,
                                        std::size_t pos) const {
        const auto it = index_.find(tokens[pos]->lemma);
        if (it == index_.end()) return std::nullopt;
        for (const LexiconEntry* entry : it->second) {
            const std::size_t len = entry->key.size();
            if (pos + len > tokens.size()) continue;
            bool ok = true;
            for (std::size_t k = 1; k < len; ++k) {
                if (tokens[pos + k]->lemma != entry->key[k]) {
                    ok = false;
                    break;
                }
            }
            if (ok) return PhraseMatch{entry, pos, len};
        }
        return std::nullopt;
    }

private:
    std::unordered_map<std::string, std::vector<const LexiconEntry*>> index_;
};

inline std::vector<const Token*> sentence_tokens(const Sentence& sentence) {
    std::vector<const Token*> out;
    out.reserve(sentence.tokens.size());
    for (const Token& token : sentence.tokens) out.push_back(&token);
    return out;
}

// Collects the modifier chain immediately preceding match_begin (deltas in
// surface order) and scans the negation lookback window: up to `lookback`
// non-modifier tokens before the match, modifiers not counting toward the
// window.
struct MarkerScan {
    std::vector<std::pair<std::string, double>> modifiers;
    std::optional<std::string> negation;
};

inline MarkerScan scan_markers(const std::vector<const Token*>& tokens,
                               std::size_t match_begin, const MarkerLists& markers,
                               int lookback) {
    MarkerScan scan;
    std::size_t i = match_begin;
    while (i > 0) {
        const auto it = markers.modifiers.find(tokens[i - 1]->lemma);
        if (it == markers.modifiers.end()) break;
        scan.modifiers.emplace_back(it->first, it->second);
        --i;
    }
    std::reverse(scan.modifiers.begin(), scan.modifiers.end());

    int examined = 0;
    std::size_t j = match_begin;
    while (j > 0 && examined < lookback) {
        const std::string& lemma = tokens[j - 1]->lemma;
        if (markers.is_modifier(lemma)) {
            --j;
            continue; // modifiers do not consume the window
        }
        if (markers.is_negation(lemma)) {
            scan.negation = lemma;
            break;
        }
        ++examined;
        --j;
    }
    return scan;
}

} // namespace sentilex

#endif
