#ifndef SENTILEX_TUNING_HPP
#define SENTILEX_TUNING_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sentilex/errors.hpp"
#include "sentilex/eval.hpp"
#include "sentilex/labels.hpp"
#include "sentilex/sentistrength.hpp"
#include "sentilex/socal.hpp"
#include "sentilex/text.hpp"

namespace sentilex {

// One grid dimension: lo, lo+step, ..., hi. Values are snapped to 1e-6 so
// enumerated points compare equal to their decimal literals.
struct GridAxis {
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.1;

    std::vector<double> values() const {
        if (!(step > 0.0)) throw InputError("grid step must be positive");
        if (hi < lo) throw InputError("grid range is empty (hi < lo)");
        std::vector<double> out;
        const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            const double v = lo + static_cast<double>(i) * step;
            out.push_back(std::round(v * 1e6) / 1e6);
        }
        return out;
    }
};

// Default grids; the fitted values reported for these methods lie strictly
// inside the ranges and the step matches their precision.
struct SocalGrid {
    GridAxis t_pos{0.0, 3.0, 0.1};
    GridAxis t_neg{-3.0, 0.0, 0.1};
};

struct SentiStrengthGrid {
    GridAxis k_neut{0.0, 3.0, 0.1};
    GridAxis k{0.1, 3.0, 0.1};
};

template <typename Thresholds>
struct TuningResult {
    Thresholds best{};
    double best_macro_f1 = 0.0;
    std::vector<std::pair<Thresholds, double>> trace; // grid evaluation order
};

namespace detail {

inline void check_training_inputs(std::size_t docs, std::size_t gold) {
    if (docs == 0) throw InputError("tuning requires a non-empty corpus");
    if (docs != gold)
        throw InputError("tuning: corpus and gold label counts differ (" +
                         std::to_string(docs) + " vs " + std::to_string(gold) + ")");
}

} // namespace detail

// Grid search for the SO-CAL thresholds. Documents are scored exactly once
// through `scorer`; every (t_pos, t_neg) pair with t_neg <= t_pos is then
// evaluated against the cached scores. Ties break toward the smallest t_pos,
// then the largest t_neg, so results are reproducible.
inline TuningResult<SocalThresholds> tune_socal(
    const std::vector<Document>& docs, const std::vector<SentimentLabel>& gold,
    const std::function<double(const Document&)>& scorer, const SocalGrid& grid = {}) {
    detail::check_training_inputs(docs.size(), gold.size());

    std::vector<double> scores;
    scores.reserve(docs.size());
    for (const Document& doc : docs) scores.push_back(scorer(doc));

    const std::vector<double> pos_values = grid.t_pos.values();
    const std::vector<double> neg_values = grid.t_neg.values();

    TuningResult<SocalThresholds> result;
    bool seen_valid = false; // set once the first valid pair is seen
    std::vector<SentimentLabel> pred(docs.size());
    for (const double t_pos : pos_values) {
        for (auto it = neg_values.rbegin(); it != neg_values.rend(); ++it) {
            const double t_neg = *it;
            if (t_neg > t_pos) continue;
            const SocalThresholds thresholds{t_pos, t_neg};
            for (std::size_t i = 0; i < scores.size(); ++i)
                pred[i] = classify_socal(scores[i], thresholds);
            const double f1 = macro_f1(gold, pred).macro_f1;
            result.trace.emplace_back(thresholds, f1);
            if (!seen_valid || f1 > result.best_macro_f1) {
                result.best = thresholds;
                result.best_macro_f1 = f1;
                seen_valid = true;
            }
        }
    }
    if (!seen_valid) throw InputError("tuning grid contains no valid (t_pos, t_neg) pair");
    return result;
}

inline TuningResult<SocalThresholds> tune_socal(const std::vector<Document>& docs,
                                                const std::vector<SentimentLabel>& gold,
                                                const Lexicon& lexicon,
                                                const MarkerLists& markers,
                                                const SocalGrid& grid = {},
                                                const SocalOptions& options = {}) {
    const SocalEngine engine(lexicon, markers, options);
    return tune_socal(docs, gold,
                      [&engine](const Document& doc) { return engine.score(doc).value; },
                      grid);
}

// Grid search for the SentiStrength coefficients; every (k_neut, k) pair is
// valid. Ties break toward the smallest k_neut, then the smallest k.
inline TuningResult<SentiStrengthThresholds> tune_sentistrength(
    const std::vector<Document>& docs, const std::vector<SentimentLabel>& gold,
    const std::function<DualScore(const Document&)>& scorer,
    const SentiStrengthGrid& grid = {}, bool raw_scale = false) {
    detail::check_training_inputs(docs.size(), gold.size());

    std::vector<DualScore> scores;
    scores.reserve(docs.size());
    for (const Document& doc : docs) scores.push_back(scorer(doc));

    const std::vector<double> neut_values = grid.k_neut.values();
    const std::vector<double> k_values = grid.k.values();
    if (neut_values.empty() || k_values.empty())
        throw InputError("tuning grid contains no valid (k_neut, k) pair");

    TuningResult<SentiStrengthThresholds> result;
    bool first = true;
    std::vector<SentimentLabel> pred(docs.size());
    for (const double k_neut : neut_values) {
        for (const double k : k_values) {
            const SentiStrengthThresholds thresholds{k_neut, k};
            for (std::size_t i = 0; i < scores.size(); ++i)
                pred[i] = classify_sentistrength(scores[i], thresholds, raw_scale);
            const double f1 = macro_f1(gold, pred).macro_f1;
            result.trace.emplace_back(thresholds, f1);
            if (first || f1 > result.best_macro_f1) {
                result.best = thresholds;
                result.best_macro_f1 = f1;
                first = false;
            }
        }
    }
    return result;
}

inline TuningResult<SentiStrengthThresholds> tune_sentistrength(
    const std::vector<Document>& docs, const std::vector<SentimentLabel>& gold,
    const Lexicon& lexicon, const MarkerLists& markers,
    const SentiStrengthGrid& grid = {}, const SentiStrengthOptions& options = {},
    bool raw_scale = false) {
    const SentiStrengthEngine engine(lexicon, markers, options);
    return tune_sentistrength(
        docs, gold, [&engine](const Document& doc) { return engine.score(doc); }, grid,
        raw_scale);
}

inline nlohmann::json tuning_result_json(const TuningResult<SocalThresholds>& result) {
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& [thresholds, f1] : result.trace)
        trace.push_back(
            {{"t_pos", thresholds.t_pos}, {"t_neg", thresholds.t_neg}, {"macro_f1", f1}});
    return {{"thresholds",
             {{"t_pos", result.best.t_pos}, {"t_neg", result.best.t_neg}}},
            {"macro_f1", result.best_macro_f1},
            {"grid", trace}};
}

inline nlohmann::json tuning_result_json(
    const TuningResult<SentiStrengthThresholds>& result) {
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& [thresholds, f1] : result.trace)
        trace.push_back(
            {{"k_neut", thresholds.k_neut}, {"k", thresholds.k}, {"macro_f1", f1}});
    return {{"thresholds", {{"k_neut", result.best.k_neut}, {"k", result.best.k}}},
            {"macro_f1", result.best_macro_f1},
            {"grid", trace}};
}

} // namespace sentilex

#endif
