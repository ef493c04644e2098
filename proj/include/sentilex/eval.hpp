#ifndef SENTILEX_EVAL_HPP
#define SENTILEX_EVAL_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "sentilex/errors.hpp"
#include "sentilex/format.hpp"
#include "sentilex/labels.hpp"
#include "sentilex/text.hpp"

namespace sentilex {

struct ClassMetrics {
    SentimentLabel label = SentimentLabel::Positive;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Per-class precision/recall/F1 over the three sentiment classes plus their
// unweighted mean. macro_f1 always equals the mean of the three class F1s.
struct EvaluationReport {
    std::array<ClassMetrics, 3> classes{}; // positive, negative, neutral
    double macro_f1 = 0.0;
    std::size_t corpus_size = 0;
};

// Computes per-class precision, recall and F1 from aligned gold/predicted
// label sequences. Ratios with an empty denominator take the zero_division
// value (0 by default). Macro F1 is the unweighted mean over the three
// classes.
inline EvaluationReport macro_f1(std::span<const SentimentLabel> gold,
                                 std::span<const SentimentLabel> pred,
                                 double zero_division = 0.0) {
    if (gold.size() != pred.size())
        throw InputError("macro_f1: gold and prediction sequences differ in length (" +
                         std::to_string(gold.size()) + " vs " +
                         std::to_string(pred.size()) + ")");
    if (gold.empty()) throw InputError("macro_f1: empty label sequences");

    std::array<std::array<std::size_t, 3>, 3> confusion{}; // [gold][pred]
    for (std::size_t i = 0; i < gold.size(); ++i)
        ++confusion[label_index(gold[i])][label_index(pred[i])];

    EvaluationReport report;
    report.corpus_size = gold.size();
    double sum_f1 = 0.0;
    for (std::size_t c = 0; c < 3; ++c) {
        std::size_t tp = confusion[c][c], fp = 0, fn = 0;
        for (std::size_t other = 0; other < 3; ++other) {
            if (other == c) continue;
            fp += confusion[other][c];
            fn += confusion[c][other];
        }
        ClassMetrics m;
        m.label = kAllLabels[c];
        m.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp)
                                  : zero_division;
        m.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn)
                               : zero_division;
        m.f1 = m.precision + m.recall > 0.0
                   ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
                   : zero_division;
        sum_f1 += m.f1;
        report.classes[c] = m;
    }
    report.macro_f1 = sum_f1 / 3.0;
    return report;
}

inline nlohmann::json evaluation_report_json(const EvaluationReport& report,
                                             const std::string& system) {
    nlohmann::json classes = nlohmann::json::array();
    for (const auto& m : report.classes)
        classes.push_back({{"class", to_string(m.label)},
                           {"precision", m.precision},
                           {"recall", m.recall},
                           {"f1", m.f1}});
    return {{"system", system},
            {"corpus_size", report.corpus_size},
            {"classes", classes},
            {"macro_f1", report.macro_f1}};
}

inline std::string evaluation_report_tsv(const EvaluationReport& report,
                                         const std::string& system) {
    std::string out = tsv_row({"system", "class", "precision", "recall", "f1"});
    for (const auto& m : report.classes)
        out += tsv_row({system, to_string(m.label), format_fixed(m.precision, 4),
                        format_fixed(m.recall, 4), format_fixed(m.f1, 4)});
    out += tsv_row({system, "macro_f1", "", "", format_fixed(report.macro_f1, 4)});
    return out;
}

// --- Prediction agreement analysis ------------------------------------------

// The five-way partition of a corpus by which systems agreed. Systems are
// positional: A and B are the two lexicon-based engines, C the external one.
enum class AgreementPattern { AllMatch, ABNotC, CANotB, CBNotA, NoneMatch };

inline constexpr std::array<AgreementPattern, 5> kAllPatterns = {
    AgreementPattern::AllMatch, AgreementPattern::ABNotC, AgreementPattern::CANotB,
    AgreementPattern::CBNotA, AgreementPattern::NoneMatch};

inline AgreementPattern agreement_pattern(SentimentLabel a, SentimentLabel b,
                                          SentimentLabel c) {
    if (a == b && b == c) return AgreementPattern::AllMatch;
    if (a == b) return AgreementPattern::ABNotC;
    if (c == a) return AgreementPattern::CANotB;
    if (c == b) return AgreementPattern::CBNotA;
    return AgreementPattern::NoneMatch;
}

inline std::string pattern_name(AgreementPattern pattern,
                                const std::array<std::string, 3>& systems) {
    switch (pattern) {
        case AgreementPattern::AllMatch: return "all matched";
        case AgreementPattern::ABNotC: return systems[0] + " & " + systems[1] + " matched";
        case AgreementPattern::CANotB: return systems[2] + " & " + systems[0] + " matched";
        case AgreementPattern::CBNotA: return systems[2] + " & " + systems[1] + " matched";
        case AgreementPattern::NoneMatch: return "none matched";
    }
    return "";
}

struct AgreementSubset {
    AgreementPattern pattern = AgreementPattern::AllMatch;
    std::string name;
    std::vector<std::size_t> doc_indices;
    std::size_t size = 0;
    double percentage = 0.0;                     // exact share of the corpus
    std::optional<double> avg_text_length;       // mean char_length; absent when empty
    std::array<std::optional<double>, 3> f1;     // per system; absent without gold
};

struct AgreementReport {
    std::array<std::string, 3> systems;
    std::size_t corpus_size = 0;
    std::array<AgreementSubset, 5> subsets;
};

// Partitions the corpus into the five agreement subsets and scores each
// system on each subset against gold. Documents, gold labels and the three
// prediction vectors are aligned by index. Gold may be empty, in which case
// the F1 columns stay absent but sizes and lengths are still reported.
inline AgreementReport agreement_partition(
    const std::vector<std::size_t>& text_lengths,
    const std::vector<SentimentLabel>& gold,
    const std::array<std::vector<SentimentLabel>, 3>& predictions,
    const std::array<std::string, 3>& systems) {
    const std::size_t n = text_lengths.size();
    for (const auto& preds : predictions)
        if (preds.size() != n)
            throw InputError("agreement_partition: prediction coverage mismatch");
    if (!gold.empty() && gold.size() != n)
        throw InputError("agreement_partition: gold label coverage mismatch");
    if (n == 0) throw InputError("agreement_partition: empty corpus");

    AgreementReport report;
    report.systems = systems;
    report.corpus_size = n;

    for (std::size_t p = 0; p < 5; ++p) {
        report.subsets[p].pattern = kAllPatterns[p];
        report.subsets[p].name = pattern_name(kAllPatterns[p], systems);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const AgreementPattern pattern =
            agreement_pattern(predictions[0][i], predictions[1][i], predictions[2][i]);
        report.subsets[static_cast<std::size_t>(pattern)].doc_indices.push_back(i);
    }

    for (auto& subset : report.subsets) {
        subset.size = subset.doc_indices.size();
        subset.percentage = 100.0 * static_cast<double>(subset.size) / static_cast<double>(n);
        if (subset.size > 0) {
            double sum = 0.0;
            for (std::size_t i : subset.doc_indices)
                sum += static_cast<double>(text_lengths[i]);
            subset.avg_text_length = sum / static_cast<double>(subset.size);
            if (!gold.empty()) {
                std::vector<SentimentLabel> sub_gold;
                sub_gold.reserve(subset.size);
                for (std::size_t i : subset.doc_indices) sub_gold.push_back(gold[i]);
                for (std::size_t sys = 0; sys < 3; ++sys) {
                    std::vector<SentimentLabel> sub_pred;
                    sub_pred.reserve(subset.size);
                    for (std::size_t i : subset.doc_indices)
                        sub_pred.push_back(predictions[sys][i]);
                    subset.f1[sys] = macro_f1(sub_gold, sub_pred).macro_f1;
                }
            }
        }
    }
    return report;
}

// Percentages rendered with the largest-remainder rule so the five subset
// shares sum to exactly 100.0.
inline std::vector<double> agreement_percentages(const AgreementReport& report) {
    std::vector<std::size_t> sizes;
    sizes.reserve(report.subsets.size());
    for (const auto& subset : report.subsets) sizes.push_back(subset.size);
    return percent_split(sizes);
}

inline nlohmann::json agreement_report_json(const AgreementReport& report) {
    const std::vector<double> pct = agreement_percentages(report);
    nlohmann::json subsets = nlohmann::json::array();
    for (std::size_t p = 0; p < report.subsets.size(); ++p) {
        const AgreementSubset& subset = report.subsets[p];
        nlohmann::json f1 = nlohmann::json::object();
        for (std::size_t sys = 0; sys < 3; ++sys)
            f1[report.systems[sys]] =
                subset.f1[sys] ? nlohmann::json(*subset.f1[sys]) : nlohmann::json();
        subsets.push_back(
            {{"set", subset.name},
             {"size", subset.size},
             {"percentage", pct[p]},
             {"avg_text_length",
              subset.avg_text_length ? nlohmann::json(*subset.avg_text_length)
                                     : nlohmann::json()},
             {"f1", f1}});
    }
    return {{"systems", {report.systems[0], report.systems[1], report.systems[2]}},
            {"corpus_size", report.corpus_size},
            {"subsets", subsets}};
}

inline std::string agreement_report_tsv(const AgreementReport& report) {
    const std::vector<double> pct = agreement_percentages(report);
    std::string out =
        tsv_row({"set", "f1_" + report.systems[0], "f1_" + report.systems[1],
                 "f1_" + report.systems[2], "set_size", "avg_text_length"});
    for (std::size_t p = 0; p < report.subsets.size(); ++p) {
        const AgreementSubset& subset = report.subsets[p];
        std::vector<std::string> cells{subset.name};
        for (std::size_t sys = 0; sys < 3; ++sys)
            cells.push_back(subset.f1[sys] ? format_fixed(*subset.f1[sys], 4) : "");
        cells.push_back(std::to_string(subset.size) + " (" + format_fixed(pct[p], 1) + "%)");
        cells.push_back(subset.avg_text_length ? format_fixed(*subset.avg_text_length, 1)
                                               : "");
        out += tsv_row(cells);
    }
    return out;
}

} // namespace sentilex

#endif
