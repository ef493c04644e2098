#ifndef SENTILEX_SOCAL_HPP
#define SENTILEX_SOCAL_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "sentilex/format.hpp"
#include "sentilex/labels.hpp"
#include "sentilex/lexicon.hpp"
#include "sentilex/match.hpp"
#include "sentilex/text.hpp"

namespace sentilex {

struct SocalOptions {
    double negation_shift = 4.0; // amount a negated weight moves toward the opposite polarity
    int lookback = 3;            // negation window, in non-modifier tokens
};

struct SocalThresholds {
    double t_pos = 0.0;
    double t_neg = 0.0;

    bool valid() const { return t_neg <= t_pos; }
};

struct SocalContribution {
    std::size_t sentence = 0;
    std::size_t token = 0;
    std::string key;
    double base_weight = 0.0;
    double adjusted_weight = 0.0;
    std::vector<std::string> rules;
};

// The semantic-orientation score: the mean of the adjusted weights of all
// contributing matches, with the full trace needed to recompute it.
struct SocalScore {
    double value = 0.0;
    std::vector<SocalContribution> contributions;
};

// Scores documents against one lexicon and one set of marker lists. Per
// sentence, longest-match lexicon lookup over lemmas with matched tokens
// consumed. A sentence containing an irrealis marker or a question mark
// contributes nothing, as do quoted tokens. Single-lemma matches must carry
// a content POS (and the entry POS, when set) unless the document has no POS
// information; phrase matches skip the POS filter. Modifier chains multiply
// the weight by prod(1 + delta); a negation in the lookback window shifts it
// toward the opposite polarity by the shift amount, clamped to [-5, 5].
// Scoring is pure; one engine may score documents concurrently.
class SocalEngine {
public:
    SocalEngine(const Lexicon& lexicon, const MarkerLists& markers,
                SocalOptions options = {})
        : markers_(markers), options_(options), index_(lexicon) {}

    SocalScore score(const Document& doc) const {
        SocalScore score;
        double total = 0.0;

        for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
            const std::vector<const Token*> tokens = sentence_tokens(doc.sentences[s]);

            bool blocked = false;
            for (const Token* token : tokens) {
                if (token->is_question_mark || markers_.is_irrealis(token->lemma)) {
                    blocked = true;
                    break;
                }
            }
            if (blocked) continue;

            std::size_t i = 0;
            while (i < tokens.size()) {
                const auto match = index_.match_at(tokens, i);
                if (!match) {
                    ++i;
                    continue;
                }
                const std::size_t next = i + match->length;
                const LexiconEntry& entry = *match->entry;

                bool quoted = false;
                for (std::size_t k = i; k < next; ++k)
                    if (tokens[k]->in_quotes) quoted = true;
                if (quoted) {
                    i = next;
                    continue;
                }
                if (doc.has_pos && entry.key.size() == 1) {
                    const PosTag pos = tokens[i]->pos;
                    if (pos == PosTag::Other || (entry.pos && pos != *entry.pos)) {
                        i = next;
                        continue;
                    }
                }

                const MarkerScan scan =
                    scan_markers(tokens, i, markers_, options_.lookback);
                SocalContribution contribution;
                contribution.sentence = s;
                contribution.token = i;
                contribution.key = key_string(entry.key);
                contribution.base_weight = entry.weight;

                double adjusted = entry.weight;
                for (const auto& [lemma, delta] : scan.modifiers) {
                    adjusted *= 1.0 + delta;
                    contribution.rules.push_back(
                        "modifier:" + lemma + "(" + (delta >= 0 ? "+" : "") +
                        format_double(delta) + ")");
                }
                if (scan.negation) {
                    adjusted += adjusted > 0 ? -options_.negation_shift
                                             : options_.negation_shift;
                    adjusted = std::clamp(adjusted, -kMaxWeight, kMaxWeight);
                    contribution.rules.push_back("negation:" + *scan.negation);
                }
                contribution.adjusted_weight = adjusted;
                total += adjusted;
                score.contributions.push_back(std::move(contribution));
                i = next;
            }
        }

        if (!score.contributions.empty())
            score.value = total / static_cast<double>(score.contributions.size());
        return score;
    }

private:
    const MarkerLists& markers_;
    SocalOptions options_;
    PhraseIndex index_;
};

inline SocalScore score_document(const Document& doc, const Lexicon& lexicon,
                                 const MarkerLists& markers,
                                 const SocalOptions& options = {}) {
    return SocalEngine(lexicon, markers, options).score(doc);
}

// The three-way decision rule: positive when s >= t_pos, negative when
// s <= t_neg, neutral strictly between. Exactly one label for every s.
inline SentimentLabel classify_socal(double s, const SocalThresholds& thresholds) {
    if (s >= thresholds.t_pos) return SentimentLabel::Positive;
    if (s <= thresholds.t_neg) return SentimentLabel::Negative;
    return SentimentLabel::Neutral;
}

inline SentimentLabel classify_socal(const SocalScore& score,
                                     const SocalThresholds& thresholds) {
    return classify_socal(score.value, thresholds);
}

} // namespace sentilex

#endif
