#ifndef SENTILEX_SENTISTRENGTH_HPP
#define SENTILEX_SENTISTRENGTH_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "sentilex/labels.hpp"
#include "sentilex/lexicon.hpp"
#include "sentilex/match.hpp"
#include "sentilex/text.hpp"

namespace sentilex {

// Dual sentiment strengths: positive and negative magnitudes, both in [1, 5].
struct DualScore {
    int s_pos = 1;
    int s_neg = 1;

    bool operator==(const DualScore&) const = default;
};

struct SentiStrengthThresholds {
    double k_neut = 0.0;
    double k = 1.0;

    bool valid() const { return k_neut >= 0.0 && k > 0.0; }
};

struct SentiStrengthOptions {
    int lookback = 3; // negation window shared with the SO-CAL engine
};

// Dual-strength scorer. Each lexicon match maps to an integer strength
// (|weight| rounded half away from zero, clamped to [1, 5]); a preceding
// modifier steps the strength by +1 or -1 per its delta's sign; a negation
// in the lookback window moves the match to the opposite polarity. Sentence
// strengths are per-polarity maxima (1 when a polarity has no matches) and
// the document takes the maximum over sentences.
class SentiStrengthEngine {
public:
    SentiStrengthEngine(const Lexicon& lexicon, const MarkerLists& markers,
                        SentiStrengthOptions options = {})
        : markers_(markers), options_(options), index_(lexicon) {}

    DualScore score(const Document& doc) const {
        DualScore result;
        for (const Sentence& sentence : doc.sentences) {
            const std::vector<const Token*> tokens = sentence_tokens(sentence);
            int sent_pos = 1, sent_neg = 1;

            std::size_t i = 0;
            while (i < tokens.size()) {
                const auto match = index_.match_at(tokens, i);
                if (!match) {
                    ++i;
                    continue;
                }
                const LexiconEntry& entry = *match->entry;
                const MarkerScan scan =
                    scan_markers(tokens, i, markers_, options_.lookback);

                int strength = static_cast<int>(std::lround(std::abs(entry.weight)));
                for (const auto& [lemma, delta] : scan.modifiers) {
                    if (delta > 0) ++strength;
                    else if (delta < 0) --strength;
                }
                strength = std::clamp(strength, 1, 5);

                bool positive = entry.positive();
                if (scan.negation) positive = !positive;

                if (positive) sent_pos = std::max(sent_pos, strength);
                else sent_neg = std::max(sent_neg, strength);
                i += match->length;
            }
            result.s_pos = std::max(result.s_pos, sent_pos);
            result.s_neg = std::max(result.s_neg, sent_neg);
        }
        return result;
    }

private:
    const MarkerLists& markers_;
    SentiStrengthOptions options_;
    PhraseIndex index_;
};

inline DualScore dual_score(const Document& doc, const Lexicon& lexicon,
                            const MarkerLists& markers,
                            const SentiStrengthOptions& options = {}) {
    return SentiStrengthEngine(lexicon, markers, options).score(doc);
}

// Decision rule over offset strengths (s - 1, so a text with no sentiment
// words sits at the origin): neutral when both offsets are at most k_neut,
// otherwise positive when the positive offset exceeds k times the negative
// one, otherwise negative. raw_scale compares the unshifted [1, 5] strengths
// instead.
inline SentimentLabel classify_sentistrength(DualScore score,
                                             const SentiStrengthThresholds& thresholds,
                                             bool raw_scale = false) {
    const double sp = raw_scale ? score.s_pos : score.s_pos - 1;
    const double sn = raw_scale ? score.s_neg : score.s_neg - 1;
    if (sp <= thresholds.k_neut && sn <= thresholds.k_neut)
        return SentimentLabel::Neutral;
    if (sp > thresholds.k * sn) return SentimentLabel::Positive;
    return SentimentLabel::Negative;
}

} // namespace sentilex

#endif
