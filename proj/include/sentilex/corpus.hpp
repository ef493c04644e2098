#ifndef SENTILEX_CORPUS_HPP
#define SENTILEX_CORPUS_HPP

#include <cstddef>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "sentilex/errors.hpp"
#include "sentilex/labels.hpp"

namespace sentilex {

// One corpus record: a document id and raw text, optionally a gold label and
// a path to an annotated-token file carrying the corpus' morphological
// analysis.
struct CorpusRecord {
    std::string id;
    std::string text;
    std::optional<SentimentLabel> label;
    std::optional<std::string> annotated;
};

struct PredictionRecord {
    std::string id;
    SentimentLabel label = SentimentLabel::Neutral;
};

// A classification result ready for serialization.
struct Prediction {
    std::string id;
    SentimentLabel label = SentimentLabel::Neutral;
    std::string system;
    nlohmann::json detail; // engine score detail, emitted under --verbose
};

namespace detail {

inline std::string json_string_field(const nlohmann::json& object, const char* field,
                                     const std::string& source, std::size_t line_no,
                                     bool required) {
    const auto it = object.find(field);
    if (it == object.end()) {
        if (required)
            throw ParseError(source, line_no, std::string("missing field '") + field + "'");
        return {};
    }
    if (it->is_string()) return it->get<std::string>();
    if (it->is_number_integer()) return std::to_string(it->get<long long>());
    throw ParseError(source, line_no, std::string("field '") + field + "' must be a string");
}

} // namespace detail

// Loads a JSON-lines corpus: fields id, text, optional label (case-
// insensitive), optional annotated. Duplicate ids and unknown label tokens
// are fatal.
inline std::vector<CorpusRecord> load_corpus(std::istream& in, const std::string& source) {
    std::vector<CorpusRecord> records;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        nlohmann::json object;
        try {
            object = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(source, line_no, std::string("invalid JSON: ") + e.what());
        }
        if (!object.is_object())
            throw ParseError(source, line_no, "expected a JSON object");
        CorpusRecord record;
        record.id = detail::json_string_field(object, "id", source, line_no, true);
        if (record.id.empty()) throw ParseError(source, line_no, "empty id");
        if (!seen.insert(record.id).second)
            throw InputError(source + ": duplicate document id '" + record.id + "'");
        const auto text_it = object.find("text");
        if (text_it == object.end() || !text_it->is_string())
            throw ParseError(source, line_no, "missing or non-string field 'text'");
        record.text = text_it->get<std::string>();
        if (const auto it = object.find("label"); it != object.end() && !it->is_null()) {
            if (!it->is_string())
                throw ParseError(source, line_no, "field 'label' must be a string");
            const auto label = parse_label(it->get<std::string>());
            if (!label)
                throw ParseError(source, line_no,
                                 "unknown label '" + it->get<std::string>() + "'");
            record.label = *label;
        }
        if (const auto it = object.find("annotated"); it != object.end() && !it->is_null()) {
            if (!it->is_string())
                throw ParseError(source, line_no, "field 'annotated' must be a string");
            record.annotated = it->get<std::string>();
        }
        records.push_back(std::move(record));
    }
    return records;
}

inline std::vector<CorpusRecord> load_corpus_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open corpus file: " + path);
    return load_corpus(in, path);
}

// Loads a JSON-lines prediction file (fields id, label). Duplicate ids are
// fatal; join validation against a corpus happens in align_predictions.
inline std::vector<PredictionRecord> load_predictions(std::istream& in,
                                                      const std::string& source) {
    std::vector<PredictionRecord> records;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        nlohmann::json object;
        try {
            object = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(source, line_no, std::string("invalid JSON: ") + e.what());
        }
        if (!object.is_object())
            throw ParseError(source, line_no, "expected a JSON object");
        PredictionRecord record;
        record.id = detail::json_string_field(object, "id", source, line_no, true);
        if (!seen.insert(record.id).second)
            throw InputError(source + ": duplicate prediction id '" + record.id + "'");
        const auto it = object.find("label");
        if (it == object.end() || !it->is_string())
            throw ParseError(source, line_no, "missing or non-string field 'label'");
        const auto label = parse_label(it->get<std::string>());
        if (!label)
            throw ParseError(source, line_no, "unknown label '" + it->get<std::string>() + "'");
        record.label = *label;
        records.push_back(std::move(record));
    }
    return records;
}

inline std::vector<PredictionRecord> load_predictions_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open predictions file: " + path);
    return load_predictions(in, path);
}

// Joins predictions to the corpus by id, in corpus order. Predictions for
// unknown ids and incomplete coverage are fatal; the error lists the missing
// ids (up to ten).
inline std::vector<SentimentLabel> align_predictions(
    const std::vector<CorpusRecord>& corpus,
    const std::vector<PredictionRecord>& predictions, const std::string& system) {
    std::unordered_map<std::string, SentimentLabel> by_id;
    by_id.reserve(predictions.size());
    std::unordered_set<std::string> corpus_ids;
    corpus_ids.reserve(corpus.size());
    for (const auto& record : corpus) corpus_ids.insert(record.id);
    for (const auto& prediction : predictions) {
        if (corpus_ids.count(prediction.id) == 0)
            throw InputError(system + ": prediction for unknown document id '" +
                             prediction.id + "'");
        by_id.emplace(prediction.id, prediction.label);
    }
    std::vector<std::string> missing;
    std::vector<SentimentLabel> aligned;
    aligned.reserve(corpus.size());
    for (const auto& record : corpus) {
        const auto it = by_id.find(record.id);
        if (it == by_id.end()) {
            missing.push_back(record.id);
            continue;
        }
        aligned.push_back(it->second);
    }
    if (!missing.empty()) {
        std::string message = system + ": predictions missing for " +
                              std::to_string(missing.size()) + " document(s):";
        for (std::size_t i = 0; i < missing.size() && i < 10; ++i)
            message += " '" + missing[i] + "'";
        if (missing.size() > 10) message += " ...";
        throw InputError(message);
    }
    return aligned;
}

inline void write_predictions(std::ostream& out, const std::vector<Prediction>& predictions,
                              bool verbose) {
    for (const auto& prediction : predictions) {
        nlohmann::json object = {{"id", prediction.id},
                                 {"label", to_string(prediction.label)}};
        if (verbose) {
            object["system"] = prediction.system;
            if (!prediction.detail.is_null()) object["score"] = prediction.detail;
        }
        out << object.dump() << '\n';
    }
}

} // namespace sentilex

#endif
