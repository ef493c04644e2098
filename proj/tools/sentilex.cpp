// Command-line front end: lexicon preparation, classification, threshold
// tuning, evaluation and prediction-agreement analysis.
//
// Exit codes: 0 success, 1 internal failure, 2 usage or input error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sentilex/corpus.hpp"
#include "sentilex/errors.hpp"
#include "sentilex/eval.hpp"
#include "sentilex/labels.hpp"
#include "sentilex/lexicon.hpp"
#include "sentilex/sentistrength.hpp"
#include "sentilex/socal.hpp"
#include "sentilex/text.hpp"
#include "sentilex/tuning.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string path_stem(const std::string& path) {
    const std::string stem = fs::path(path).stem().string();
    return stem.empty() ? path : stem;
}

std::ofstream open_output(const std::string& path) {
    const fs::path parent = fs::path(path).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw sentilex::InputError("cannot open output file: " + path);
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    auto out = open_output(path);
    out << content;
}

sentilex::GridAxis parse_axis(const std::string& spec, const std::string& flag) {
    sentilex::GridAxis axis;
    double* fields[3] = {&axis.lo, &axis.hi, &axis.step};
    std::size_t start = 0;
    for (int i = 0; i < 3; ++i) {
        const std::size_t colon = spec.find(':', start);
        const std::string part = colon == std::string::npos
                                     ? spec.substr(start)
                                     : spec.substr(start, colon - start);
        if (part.empty() || (i < 2 && colon == std::string::npos) ||
            (i == 2 && colon != std::string::npos))
            throw sentilex::InputError(flag + ": expected LO:HI:STEP, got '" + spec + "'");
        try {
            std::size_t used = 0;
            *fields[i] = std::stod(part, &used);
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw sentilex::InputError(flag + ": bad number '" + part + "' in '" + spec + "'");
        }
        start = colon == std::string::npos ? spec.size() : colon + 1;
    }
    return axis;
}

// --- shared input assembly ---------------------------------------------------

struct MarkerPaths {
    std::string modifiers, negations, irrealis;
};

sentilex::MarkerLists load_marker_lists(const MarkerPaths& paths) {
    return sentilex::load_markers(paths.modifiers, paths.negations, paths.irrealis);
}

struct NamedLexicon {
    sentilex::Lexicon lexicon;
    sentilex::CleaningReport report;
};

NamedLexicon load_clean_lexicon(const std::string& path) {
    NamedLexicon named;
    auto [lexicon, report] = sentilex::load_lexicon_file(path, path_stem(path));
    named.lexicon = std::move(lexicon);
    named.report = std::move(report);
    return named;
}

// Builds engine-ready documents for every corpus record: token streams come
// from annotation files (--annotations, then per-record "annotated" paths),
// otherwise from the fallback tokenizer when enabled. The corpus text is
// authoritative for raw_text and char_length.
std::vector<sentilex::Document> build_documents(
    const std::vector<sentilex::CorpusRecord>& records, const std::string& corpus_path,
    const std::string& annotations_path, bool fallback_tokenize) {
    std::unordered_map<std::string, sentilex::Document> annotated;
    std::unordered_set<std::string> loaded_files;
    auto load_annotation_file = [&](const std::string& path) {
        if (!loaded_files.insert(path).second) return;
        for (auto& doc : sentilex::parse_annotated_file(path)) {
            const std::string id = doc.id;
            annotated.emplace(id, std::move(doc));
        }
    };
    if (!annotations_path.empty()) load_annotation_file(annotations_path);
    const fs::path corpus_dir = fs::path(corpus_path).parent_path();
    for (const auto& record : records) {
        if (!record.annotated) continue;
        fs::path path(*record.annotated);
        if (path.is_relative()) path = corpus_dir / path;
        load_annotation_file(path.string());
    }

    std::vector<sentilex::Document> docs;
    docs.reserve(records.size());
    std::vector<std::string> missing;
    for (const auto& record : records) {
        const auto it = annotated.find(record.id);
        if (it != annotated.end()) {
            sentilex::Document doc = it->second;
            doc.raw_text = record.text;
            doc.char_length = sentilex::utf8_length(record.text);
            docs.push_back(std::move(doc));
        } else if (fallback_tokenize) {
            docs.push_back(sentilex::tokenize_fallback(record.text, record.id));
        } else {
            missing.push_back(record.id);
        }
    }
    if (!missing.empty()) {
        std::string message = "no annotation found for " + std::to_string(missing.size()) +
                              " document(s):";
        for (std::size_t i = 0; i < missing.size() && i < 10; ++i)
            message += " '" + missing[i] + "'";
        if (missing.size() > 10) message += " ...";
        message += "; pass --annotations or --fallback-tokenize";
        throw sentilex::InputError(message);
    }
    return docs;
}

std::vector<sentilex::SentimentLabel> require_gold(
    const std::vector<sentilex::CorpusRecord>& records, const std::string& what) {
    std::vector<sentilex::SentimentLabel> gold;
    gold.reserve(records.size());
    for (const auto& record : records) {
        if (!record.label)
            throw sentilex::InputError(what + " requires gold labels; document '" +
                                       record.id + "' has none");
        gold.push_back(*record.label);
    }
    return gold;
}

// --- subcommand options ------------------------------------------------------

struct LexiconCommandOptions {
    std::vector<std::string> lexicons;
    std::string name;
    std::string out;
};

struct ClassifyOptions {
    std::string engine;
    std::string corpus;
    std::string annotations;
    std::vector<std::string> lexicons;
    MarkerPaths markers;
    std::optional<double> t_pos, t_neg, k_neut, k;
    std::string tuning_file;
    double shift = 4.0;
    int lookback = 3;
    bool raw_scale = false;
    bool fallback_tokenize = false;
    std::string out;
    bool verbose = false;
};

struct TuneOptions {
    std::string engine;
    std::string corpus;
    std::string annotations;
    std::vector<std::string> lexicons;
    MarkerPaths markers;
    std::string grid_file;
    std::string t_pos_grid, t_neg_grid, k_neut_grid, k_grid;
    double shift = 4.0;
    int lookback = 3;
    bool raw_scale = false;
    bool fallback_tokenize = false;
    std::string out;
};

struct EvalOptions {
    std::string corpus;
    std::vector<std::string> predictions;
    std::vector<std::string> systems;
    std::string out;
};

// --- lexicon subcommands -----------------------------------------------------

int run_lexicon_clean(const LexiconCommandOptions& opts) {
    const std::string& path = opts.lexicons.front();
    const std::string name = opts.name.empty() ? path_stem(path) : opts.name;
    auto [lexicon, report] = sentilex::load_lexicon_file(path, name);

    std::ostringstream body;
    sentilex::write_lexicon(body, lexicon);
    write_text_file(opts.out, body.str());
    write_text_file(opts.out + ".report.txt", report.to_text());
    std::cout << report.to_text();
    return 0;
}

int run_lexicon_combine(const LexiconCommandOptions& opts) {
    std::vector<sentilex::Lexicon> lexicons;
    lexicons.reserve(opts.lexicons.size());
    for (const auto& path : opts.lexicons)
        lexicons.push_back(load_clean_lexicon(path).lexicon);

    fs::create_directories(opts.out);
    std::vector<sentilex::LexiconStats> rows;
    for (std::size_t n = 1; n <= lexicons.size(); ++n) {
        const sentilex::Lexicon combined = sentilex::vote_combine(lexicons, n);
        std::ostringstream body;
        sentilex::write_lexicon(body, combined);
        write_text_file((fs::path(opts.out) / (combined.name + ".tsv")).string(),
                        body.str());
        rows.push_back(sentilex::lexicon_stats(combined));
    }
    const std::string table = sentilex::stats_table_tsv(rows);
    write_text_file((fs::path(opts.out) / "stats.tsv").string(), table);
    std::cout << table;
    return 0;
}

int run_lexicon_stats(const LexiconCommandOptions& opts) {
    std::vector<sentilex::LexiconStats> rows;
    rows.reserve(opts.lexicons.size());
    for (const auto& path : opts.lexicons)
        rows.push_back(sentilex::lexicon_stats(load_clean_lexicon(path).lexicon));
    const std::string table = sentilex::stats_table_tsv(rows);
    if (!opts.out.empty()) write_text_file(opts.out, table);
    std::cout << table;
    return 0;
}

// --- classify ----------------------------------------------------------------

json socal_score_json(const sentilex::SocalScore& score) {
    json contributions = json::array();
    for (const auto& c : score.contributions)
        contributions.push_back({{"sentence", c.sentence},
                                 {"token", c.token},
                                 {"key", c.key},
                                 {"base_weight", c.base_weight},
                                 {"adjusted_weight", c.adjusted_weight},
                                 {"rules", c.rules}});
    return {{"value", score.value}, {"contributions", contributions}};
}

void read_thresholds_from_tuning_file(const std::string& path, const std::string& engine,
                                      std::optional<double>& a, std::optional<double>& b) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw sentilex::InputError("cannot open tuning report: " + path);
    json report;
    try {
        in >> report;
    } catch (const json::exception& e) {
        throw sentilex::InputError(path + ": invalid JSON: " + e.what());
    }
    if (report.value("engine", "") != engine)
        throw sentilex::InputError(path + ": tuning report is for engine '" +
                                   report.value("engine", "?") + "', not '" + engine + "'");
    const auto& thresholds = report.at("thresholds");
    if (engine == "socal") {
        a = thresholds.at("t_pos").get<double>();
        b = thresholds.at("t_neg").get<double>();
    } else {
        a = thresholds.at("k_neut").get<double>();
        b = thresholds.at("k").get<double>();
    }
}

int run_classify(const ClassifyOptions& opts) {
    const auto records = sentilex::load_corpus_file(opts.corpus);
    const auto docs =
        build_documents(records, opts.corpus, opts.annotations, opts.fallback_tokenize);
    const auto markers = load_marker_lists(opts.markers);
    const auto named = load_clean_lexicon(opts.lexicons.front());

    std::optional<double> t_pos = opts.t_pos, t_neg = opts.t_neg;
    std::optional<double> k_neut = opts.k_neut, k = opts.k;
    if (opts.engine == "socal" && !opts.tuning_file.empty() && (!t_pos || !t_neg))
        read_thresholds_from_tuning_file(opts.tuning_file, "socal", t_pos, t_neg);
    if (opts.engine == "sentistrength" && !opts.tuning_file.empty() && (!k_neut || !k))
        read_thresholds_from_tuning_file(opts.tuning_file, "sentistrength", k_neut, k);

    std::vector<sentilex::Prediction> predictions;
    predictions.reserve(docs.size());
    if (opts.engine == "socal") {
        if (!t_pos || !t_neg)
            throw sentilex::InputError(
                "socal needs thresholds: pass --t-pos and --t-neg, or --tuning with a "
                "report from 'sentilex tune'");
        const sentilex::SocalThresholds thresholds{*t_pos, *t_neg};
        if (!thresholds.valid())
            throw sentilex::InputError("invalid thresholds: t_neg must be <= t_pos");
        const sentilex::SocalEngine engine(named.lexicon, markers,
                                           {opts.shift, opts.lookback});
        for (const auto& doc : docs) {
            const sentilex::SocalScore score = engine.score(doc);
            sentilex::Prediction p;
            p.id = doc.id;
            p.label = sentilex::classify_socal(score, thresholds);
            p.system = "socal";
            if (opts.verbose) p.detail = socal_score_json(score);
            predictions.push_back(std::move(p));
        }
    } else {
        if (!k_neut || !k)
            throw sentilex::InputError(
                "sentistrength needs thresholds: pass --k-neut and --k, or --tuning with "
                "a report from 'sentilex tune'");
        const sentilex::SentiStrengthThresholds thresholds{*k_neut, *k};
        if (!thresholds.valid())
            throw sentilex::InputError("invalid thresholds: need k_neut >= 0 and k > 0");
        const sentilex::SentiStrengthEngine engine(named.lexicon, markers,
                                                   {opts.lookback});
        for (const auto& doc : docs) {
            const sentilex::DualScore score = engine.score(doc);
            sentilex::Prediction p;
            p.id = doc.id;
            p.label = sentilex::classify_sentistrength(score, thresholds, opts.raw_scale);
            p.system = "sentistrength";
            if (opts.verbose)
                p.detail = {{"s_pos", score.s_pos}, {"s_neg", score.s_neg}};
            predictions.push_back(std::move(p));
        }
    }

    if (opts.out.empty()) {
        sentilex::write_predictions(std::cout, predictions, opts.verbose);
    } else {
        auto out = open_output(opts.out);
        sentilex::write_predictions(out, predictions, opts.verbose);
    }
    return 0;
}

// --- tune ----------------------------------------------------------------

int run_tune(const TuneOptions& opts) {
    const auto records = sentilex::load_corpus_file(opts.corpus);
    const auto gold = require_gold(records, "tune");
    const auto docs =
        build_documents(records, opts.corpus, opts.annotations, opts.fallback_tokenize);
    const auto markers = load_marker_lists(opts.markers);

    sentilex::SocalGrid socal_grid;
    sentilex::SentiStrengthGrid senti_grid;
    if (!opts.grid_file.empty()) {
        std::ifstream in(opts.grid_file, std::ios::binary);
        if (!in) throw sentilex::InputError("cannot open grid file: " + opts.grid_file);
        json spec;
        try {
            in >> spec;
        } catch (const json::exception& e) {
            throw sentilex::InputError(opts.grid_file + ": invalid JSON: " + e.what());
        }
        auto read_axis = [&](const char* key, sentilex::GridAxis& axis) {
            if (!spec.contains(key)) return;
            const auto& arr = spec.at(key);
            if (!arr.is_array() || arr.size() != 3)
                throw sentilex::InputError(std::string(opts.grid_file) + ": '" + key +
                                           "' must be [lo, hi, step]");
            axis = {arr[0].get<double>(), arr[1].get<double>(), arr[2].get<double>()};
        };
        read_axis("t_pos", socal_grid.t_pos);
        read_axis("t_neg", socal_grid.t_neg);
        read_axis("k_neut", senti_grid.k_neut);
        read_axis("k", senti_grid.k);
    }
    if (!opts.t_pos_grid.empty())
        socal_grid.t_pos = parse_axis(opts.t_pos_grid, "--t-pos-grid");
    if (!opts.t_neg_grid.empty())
        socal_grid.t_neg = parse_axis(opts.t_neg_grid, "--t-neg-grid");
    if (!opts.k_neut_grid.empty())
        senti_grid.k_neut = parse_axis(opts.k_neut_grid, "--k-neut-grid");
    if (!opts.k_grid.empty()) senti_grid.k = parse_axis(opts.k_grid, "--k-grid");

    json per_lexicon = json::array();
    std::string best_lexicon;
    json best_thresholds;
    double best_f1 = -1.0;
    for (const auto& path : opts.lexicons) {
        const auto named = load_clean_lexicon(path);
        json entry;
        entry["lexicon"] = named.lexicon.name;
        if (opts.engine == "socal") {
            const auto result =
                sentilex::tune_socal(docs, gold, named.lexicon, markers, socal_grid,
                                     {opts.shift, opts.lookback});
            entry.update(sentilex::tuning_result_json(result));
        } else {
            const auto result = sentilex::tune_sentistrength(
                docs, gold, named.lexicon, markers, senti_grid, {opts.lookback},
                opts.raw_scale);
            entry.update(sentilex::tuning_result_json(result));
        }
        if (entry["macro_f1"].get<double>() > best_f1) {
            best_f1 = entry["macro_f1"].get<double>();
            best_lexicon = entry["lexicon"].get<std::string>();
            best_thresholds = entry["thresholds"];
        }
        per_lexicon.push_back(std::move(entry));
    }

    const json report = {{"engine", opts.engine},
                         {"per_lexicon", per_lexicon},
                         {"best_lexicon", best_lexicon},
                         {"thresholds", best_thresholds},
                         {"macro_f1", best_f1}};
    if (opts.out.empty()) {
        std::cout << report.dump(2) << '\n';
    } else {
        auto out = open_output(opts.out);
        out << report.dump(2) << '\n';
        std::cout << "best_lexicon\t" << best_lexicon << "\tmacro_f1\t"
                  << sentilex::format_fixed(best_f1, 4) << '\n';
    }
    return 0;
}

// --- eval / compare ----------------------------------------------------------

int run_eval(const EvalOptions& opts) {
    const auto records = sentilex::load_corpus_file(opts.corpus);
    const auto gold = require_gold(records, "eval");
    const std::string& path = opts.predictions.front();
    const std::string system =
        opts.systems.empty() ? path_stem(path) : opts.systems.front();
    const auto predictions =
        sentilex::align_predictions(records, sentilex::load_predictions_file(path), system);
    const auto report = sentilex::macro_f1(gold, predictions);

    const std::string tsv = sentilex::evaluation_report_tsv(report, system);
    std::cout << tsv;
    if (!opts.out.empty()) {
        write_text_file(opts.out + ".tsv", tsv);
        write_text_file(opts.out + ".json",
                        sentilex::evaluation_report_json(report, system).dump(2) + "\n");
    }
    return 0;
}

int run_compare(const EvalOptions& opts) {
    const auto records = sentilex::load_corpus_file(opts.corpus);
    std::vector<sentilex::SentimentLabel> gold;
    bool all_labeled = true;
    for (const auto& record : records)
        if (!record.label) all_labeled = false;
    if (all_labeled)
        for (const auto& record : records) gold.push_back(*record.label);

    std::array<std::string, 3> systems;
    std::array<std::vector<sentilex::SentimentLabel>, 3> predictions;
    for (std::size_t i = 0; i < 3; ++i) {
        const std::string& path = opts.predictions[i];
        systems[i] = i < opts.systems.size() ? opts.systems[i] : path_stem(path);
        predictions[i] = sentilex::align_predictions(
            records, sentilex::load_predictions_file(path), systems[i]);
    }
    std::vector<std::size_t> lengths;
    lengths.reserve(records.size());
    for (const auto& record : records)
        lengths.push_back(sentilex::utf8_length(record.text));

    const auto report =
        sentilex::agreement_partition(lengths, gold, predictions, systems);
    const std::string tsv = sentilex::agreement_report_tsv(report);
    std::cout << tsv;
    if (!opts.out.empty()) {
        write_text_file(opts.out + ".tsv", tsv);
        write_text_file(opts.out + ".json",
                        sentilex::agreement_report_json(report).dump(2) + "\n");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lexicon-based sentiment analysis for Russian text"};
    app.require_subcommand(1);

    // lexicon clean|combine|stats
    auto* lexicon_cmd = app.add_subcommand("lexicon", "Prepare and inspect sentiment lexicons");
    lexicon_cmd->require_subcommand(1);
    LexiconCommandOptions clean_opts, combine_opts, stats_opts;

    auto* clean_cmd = lexicon_cmd->add_subcommand("clean", "Clean one lexicon file");
    clean_cmd->add_option("--lexicon", clean_opts.lexicons, "Lexicon TSV file")
        ->required()
        ->expected(1);
    clean_cmd->add_option("--name", clean_opts.name, "Lexicon name (default: file stem)");
    clean_cmd->add_option("--out", clean_opts.out, "Cleaned lexicon output path")->required();

    auto* combine_cmd =
        lexicon_cmd->add_subcommand("combine", "Vote-combine lexicons into Lex1..LexM");
    combine_cmd->add_option("--lexicon", combine_opts.lexicons, "Lexicon TSV file (repeat)")
        ->required();
    combine_cmd->add_option("--out", combine_opts.out, "Output directory")->required();

    auto* stats_cmd = lexicon_cmd->add_subcommand("stats", "Characteristics table");
    stats_cmd->add_option("--lexicon", stats_opts.lexicons, "Lexicon TSV file (repeat)")
        ->required();
    stats_cmd->add_option("--out", stats_opts.out, "Also write the table to this path");

    // classify
    ClassifyOptions classify_opts;
    auto* classify_cmd = app.add_subcommand("classify", "Label a corpus with one engine");
    classify_cmd->add_option("--engine", classify_opts.engine, "socal | sentistrength")
        ->required()
        ->check(CLI::IsMember({"socal", "sentistrength"}));
    classify_cmd->add_option("--corpus", classify_opts.corpus, "Corpus JSONL file")
        ->required();
    classify_cmd->add_option("--annotations", classify_opts.annotations,
                             "Annotated-token file");
    classify_cmd->add_option("--lexicon", classify_opts.lexicons, "Lexicon TSV file")
        ->required()
        ->expected(1);
    classify_cmd->add_option("--modifiers", classify_opts.markers.modifiers,
                             "Modifier list (TSV lemma, delta)");
    classify_cmd->add_option("--negations", classify_opts.markers.negations,
                             "Negation list (one lemma per line)");
    classify_cmd->add_option("--irrealis", classify_opts.markers.irrealis,
                             "Irrealis marker list (one lemma per line)");
    classify_cmd->add_option("--t-pos", classify_opts.t_pos, "SO-CAL positive threshold");
    classify_cmd->add_option("--t-neg", classify_opts.t_neg, "SO-CAL negative threshold");
    classify_cmd->add_option("--k-neut", classify_opts.k_neut,
                             "SentiStrength neutrality bound");
    classify_cmd->add_option("--k", classify_opts.k, "SentiStrength positive/negative ratio");
    classify_cmd->add_option("--tuning", classify_opts.tuning_file,
                             "Tuning report to take thresholds from");
    classify_cmd->add_option("--shift", classify_opts.shift,
                             "Negation shift amount (default 4.0)");
    classify_cmd->add_option("--lookback", classify_opts.lookback,
                             "Negation lookback window (default 3)");
    classify_cmd->add_flag("--raw-scale", classify_opts.raw_scale,
                           "Compare raw [1,5] strengths in the decision rule");
    classify_cmd->add_flag("--fallback-tokenize", classify_opts.fallback_tokenize,
                           "Tokenize unannotated documents without POS info");
    classify_cmd->add_option("--out", classify_opts.out, "Predictions output (default stdout)");
    classify_cmd->add_flag("--verbose", classify_opts.verbose,
                           "Include score detail in predictions");

    // tune
    TuneOptions tune_opts;
    auto* tune_cmd = app.add_subcommand("tune", "Fit decision thresholds by grid search");
    tune_cmd->add_option("--engine", tune_opts.engine, "socal | sentistrength")
        ->required()
        ->check(CLI::IsMember({"socal", "sentistrength"}));
    tune_cmd->add_option("--corpus", tune_opts.corpus, "Labeled training corpus JSONL")
        ->required();
    tune_cmd->add_option("--annotations", tune_opts.annotations, "Annotated-token file");
    tune_cmd->add_option("--lexicon", tune_opts.lexicons,
                         "Lexicon TSV file (repeat to select the best)")
        ->required();
    tune_cmd->add_option("--modifiers", tune_opts.markers.modifiers, "Modifier list");
    tune_cmd->add_option("--negations", tune_opts.markers.negations, "Negation list");
    tune_cmd->add_option("--irrealis", tune_opts.markers.irrealis, "Irrealis list");
    tune_cmd->add_option("--grid", tune_opts.grid_file,
                         "Grid spec JSON file (keys t_pos, t_neg, k_neut, k)");
    tune_cmd->add_option("--t-pos-grid", tune_opts.t_pos_grid, "LO:HI:STEP");
    tune_cmd->add_option("--t-neg-grid", tune_opts.t_neg_grid, "LO:HI:STEP");
    tune_cmd->add_option("--k-neut-grid", tune_opts.k_neut_grid, "LO:HI:STEP");
    tune_cmd->add_option("--k-grid", tune_opts.k_grid, "LO:HI:STEP");
    tune_cmd->add_option("--shift", tune_opts.shift, "Negation shift amount (default 4.0)");
    tune_cmd->add_option("--lookback", tune_opts.lookback,
                         "Negation lookback window (default 3)");
    tune_cmd->add_flag("--raw-scale", tune_opts.raw_scale,
                       "Compare raw [1,5] strengths in the decision rule");
    tune_cmd->add_flag("--fallback-tokenize", tune_opts.fallback_tokenize,
                       "Tokenize unannotated documents without POS info");
    tune_cmd->add_option("--out", tune_opts.out, "Tuning report path (default stdout)");

    // eval / compare
    EvalOptions eval_opts, compare_opts;
    auto* eval_cmd = app.add_subcommand("eval", "Score one prediction file against gold");
    eval_cmd->add_option("--corpus", eval_opts.corpus, "Gold-labeled corpus JSONL")
        ->required();
    eval_cmd->add_option("--predictions", eval_opts.predictions, "Predictions JSONL")
        ->required()
        ->expected(1);
    eval_cmd->add_option("--system", eval_opts.systems, "System name (default: file stem)");
    eval_cmd->add_option("--out", eval_opts.out, "Report base path (writes .json and .tsv)");

    auto* compare_cmd =
        app.add_subcommand("compare", "Agreement analysis of three prediction files");
    compare_cmd->add_option("--corpus", compare_opts.corpus, "Corpus JSONL")->required();
    compare_cmd
        ->add_option("--predictions", compare_opts.predictions,
                     "Predictions JSONL (exactly three, in system order)")
        ->required()
        ->expected(3);
    compare_cmd->add_option("--system", compare_opts.systems,
                            "System names (repeat, default: file stems)");
    compare_cmd->add_option("--out", compare_opts.out,
                            "Report base path (writes .json and .tsv)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (clean_cmd->parsed()) return run_lexicon_clean(clean_opts);
        if (combine_cmd->parsed()) return run_lexicon_combine(combine_opts);
        if (stats_cmd->parsed()) return run_lexicon_stats(stats_opts);
        if (classify_cmd->parsed()) return run_classify(classify_opts);
        if (tune_cmd->parsed()) return run_tune(tune_opts);
        if (eval_cmd->parsed()) return run_eval(eval_opts);
        if (compare_cmd->parsed()) return run_compare(compare_opts);
    } catch (const sentilex::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
