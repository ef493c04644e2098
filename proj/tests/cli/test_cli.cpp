// End-to-end tests driving the installed CLI binary (path in SENTILEX_CLI).

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string cli_path() {
    const char* path = std::getenv("SENTILEX_CLI");
    REQUIRE(path != nullptr);
    return path;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream body;
    body << in.rdbuf();
    return body.str();
}

class Workspace {
public:
    Workspace() {
        static int counter = 0;
        dir_ = fs::temp_directory_path() /
               ("sentilex_cli_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        fs::create_directories(dir_);
    }
    ~Workspace() {
        std::error_code ec;
        fs::remove_all(dir_, ec);
    }

    const fs::path& dir() const { return dir_; }

    fs::path write(const std::string& name, const std::string& content) const {
        const fs::path path = dir_ / name;
        fs::create_directories(path.parent_path());
        std::ofstream out(path, std::ios::binary);
        out << content;
        return path;
    }

    RunResult run(const std::string& args) const {
        const fs::path out_file = dir_ / "stdout.txt";
        const fs::path err_file = dir_ / "stderr.txt";
        const std::string command = cli_path() + " " + args + " > " +
                                    out_file.string() + " 2> " + err_file.string();
        const int status = std::system(command.c_str());
        RunResult result;
        result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        result.out = slurp(out_file);
        result.err = slurp(err_file);
        return result;
    }

private:
    fs::path dir_;
};

const char* kLexicon =
    "хороший\t3\tADJ\n"
    "отличный\t5\tADJ\n"
    "плохой\t-3\tADJ\n"
    "ужасный\t-5\tADJ\n";

const char* kCorpus =
    R"({"id":"1","text":"Хороший фильм","label":"positive"})" "\n"
    R"({"id":"2","text":"Ужасный фильм","label":"negative"})" "\n"
    R"({"id":"3","text":"Просто фильм","label":"neutral"})" "\n";

} // namespace

TEST_CASE("lexicon clean writes the cleaned file and a report") {
    Workspace ws;
    const auto in = ws.write("raw.tsv",
                             "Хороший\t3\n"
                             "хороший\t3\n"
                             "ok\t2\n"
                             "занос\t1\n"
                             "занос\t-2\n"
                             "нейтрально\t0\n");
    const auto out = ws.dir() / "clean.tsv";
    const RunResult result = ws.run("lexicon clean --lexicon " + in.string() +
                                    " --out " + out.string());
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("removed_latin\t1") != std::string::npos);
    CHECK(result.out.find("removed_duplicates\t1") != std::string::npos);
    CHECK(result.out.find("removed_conflict_keys\t1") != std::string::npos);
    CHECK(result.out.find("removed_neutral\t1") != std::string::npos);
    CHECK(slurp(out) == "хороший\t3\n");
    CHECK(fs::exists(out.string() + ".report.txt"));
}

TEST_CASE("lexicon combine emits Lex1..LexM and a stats table") {
    Workspace ws;
    std::vector<std::string> paths;
    const char* suffixes[] = {"а", "б", "в"};
    for (int i = 0; i < 3; ++i) {
        paths.push_back(ws.write("lex" + std::to_string(i) + ".tsv",
                                 std::string("общий\t2\nсвое") + suffixes[i] + "\t-1\n")
                            .string());
    }
    const auto out_dir = ws.dir() / "combined";
    std::string args = "lexicon combine --out " + out_dir.string();
    for (const auto& path : paths) args += " --lexicon " + path;
    const RunResult result = ws.run(args);
    CHECK(result.exit_code == 0);
    CHECK(fs::exists(out_dir / "Lex1.tsv"));
    CHECK(fs::exists(out_dir / "Lex2.tsv"));
    CHECK(fs::exists(out_dir / "Lex3.tsv"));
    CHECK(fs::exists(out_dir / "stats.tsv"));
    // Lex1 holds all four keys, Lex2 and Lex3 only the shared one
    CHECK(slurp(out_dir / "Lex3.tsv") == "общий\t2\n");
    const std::string stats = slurp(out_dir / "stats.tsv");
    CHECK(stats.rfind("lexicon\ttotal\tpositive\tpositive_pct\tnegative\tnegative_pct\n",
                      0) == 0);
    CHECK(stats.find("Lex1\t4\t1\t25.0\t3\t75.0") != std::string::npos);
}

TEST_CASE("lexicon stats prints one row per input") {
    Workspace ws;
    const auto lex = ws.write("lex.tsv", kLexicon);
    const RunResult result = ws.run("lexicon stats --lexicon " + lex.string());
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("lex\t4\t2\t50.0\t2\t50.0") != std::string::npos);
}

TEST_CASE("classify produces a prediction per document, byte-identically") {
    Workspace ws;
    const auto lex = ws.write("lex.tsv", kLexicon);
    const auto corpus = ws.write("corpus.jsonl", kCorpus);
    const std::string args = "classify --engine socal --corpus " + corpus.string() +
                             " --lexicon " + lex.string() +
                             " --t-pos 0.5 --t-neg -0.5 --fallback-tokenize";
    const RunResult first = ws.run(args);
    REQUIRE(first.exit_code == 0);
    CHECK(first.out ==
          "{\"id\":\"1\",\"label\":\"positive\"}\n"
          "{\"id\":\"2\",\"label\":\"negative\"}\n"
          "{\"id\":\"3\",\"label\":\"neutral\"}\n");
    const RunResult second = ws.run(args);
    CHECK(second.out == first.out);

    // verbose output carries the score detail
    const RunResult verbose = ws.run(args + " --verbose");
    CHECK(verbose.out.find("\"value\":3.0") != std::string::npos);
}

TEST_CASE("classify without thresholds exits 2 with advice") {
    Workspace ws;
    const auto lex = ws.write("lex.tsv", kLexicon);
    const auto corpus = ws.write("corpus.jsonl", kCorpus);
    const RunResult result =
        ws.run("classify --engine sentistrength --corpus " + corpus.string() +
               " --lexicon " + lex.string() + " --fallback-tokenize");
    CHECK(result.exit_code == 2);
    CHECK(result.err.find("tune") != std::string::npos);
}

TEST_CASE("classify with annotations uses the POS filter") {
    Workspace ws;
    const auto lex = ws.write("lex.tsv", kLexicon);
    const auto corpus = ws.write("corpus.jsonl",
                                 R"({"id":"1","text":"Хороший фильм"})" "\n");
    const auto ann = ws.write("corpus.conllu",
                              "# doc = 1\n"
                              "Хороший\tхороший\tADJ\n"
                              "фильм\tфильм\tNOUN\n"
                              "\n");
    const RunResult result = ws.run(
        "classify --engine socal --corpus " + corpus.string() + " --annotations " +
        ann.string() + " --lexicon " + lex.string() + " --t-pos 0.5 --t-neg -0.5");
    REQUIRE(result.exit_code == 0);
    CHECK(result.out == "{\"id\":\"1\",\"label\":\"positive\"}\n");
}

TEST_CASE("classify without annotations or fallback flag exits 2") {
    Workspace ws;
    const auto lex = ws.write("lex.tsv", kLexicon);
    const auto corpus = ws.write("corpus.jsonl", kCorpus);
    const RunResult result =
        ws.run("classify --engine socal --corpus " + corpus.string() + " --lexicon " +
               lex.string() + " --t-pos 0.5 --t-neg -0.5");
    CHECK(result.exit_code == 2);
    CHECK(result.err.find("--fallback-tokenize") != std::string::npos);
}

TEST_CASE("tune then classify via the tuning report") {
    Workspace ws;
    const auto lex = ws.write("lex.tsv", kLexicon);
    const auto corpus = ws.write("corpus.jsonl", kCorpus);
    const auto report_path = ws.dir() / "tuning.json";
    const RunResult tuned =
        ws.run("tune --engine socal --corpus " + corpus.string() + " --lexicon " +
               lex.string() + " --fallback-tokenize --out " + report_path.string());
    REQUIRE(tuned.exit_code == 0);
    const json report = json::parse(slurp(report_path));
    CHECK(report["engine"] == "socal");
    CHECK(report["macro_f1"] == 1.0);
    CHECK(report["best_lexicon"] == "lex");
    CHECK(report["per_lexicon"].size() == 1);
    CHECK(report["per_lexicon"][0]["grid"].size() > 0);

    const RunResult classified = ws.run(
        "classify --engine socal --corpus " + corpus.string() + " --lexicon " +
        lex.string() + " --fallback-tokenize --tuning " + report_path.string());
    REQUIRE(classified.exit_code == 0);
    CHECK(classified.out.find("\"label\":\"positive\"") != std::string::npos);
}

TEST_CASE("tune picks the lexicon that covers the corpus") {
    Workspace ws;
    const auto covering = ws.write("covering.tsv", kLexicon);
    const auto useless = ws.write("useless.tsv", "другое\t2\n");
    const auto corpus = ws.write("corpus.jsonl", kCorpus);
    const RunResult result = ws.run("tune --engine sentistrength --corpus " +
                                    corpus.string() + " --lexicon " + useless.string() +
                                    " --lexicon " + covering.string() +
                                    " --fallback-tokenize");
    REQUIRE(result.exit_code == 0);
    const json report = json::parse(result.out);
    CHECK(report["best_lexicon"] == "covering");
    CHECK(report["macro_f1"] == 1.0);
}

TEST_CASE("tune on an unlabeled corpus exits 2") {
    Workspace ws;
    const auto lex = ws.write("lex.tsv", kLexicon);
    const auto corpus = ws.write("corpus.jsonl", R"({"id":"1","text":"Хороший"})" "\n");
    const RunResult result =
        ws.run("tune --engine socal --corpus " + corpus.string() + " --lexicon " +
               lex.string() + " --fallback-tokenize");
    CHECK(result.exit_code == 2);
}

TEST_CASE("tune without lexicons is a usage error") {
    Workspace ws;
    const auto corpus = ws.write("corpus.jsonl", kCorpus);
    const RunResult result =
        ws.run("tune --engine socal --corpus " + corpus.string());
    CHECK(result.exit_code == 2);
}

TEST_CASE("eval reports perfect predictions as macro F1 1") {
    Workspace ws;
    const auto corpus = ws.write("corpus.jsonl", kCorpus);
    const auto preds = ws.write("preds.jsonl",
                                R"({"id":"1","label":"positive"})" "\n"
                                R"({"id":"2","label":"negative"})" "\n"
                                R"({"id":"3","label":"neutral"})" "\n");
    const auto out_base = ws.dir() / "eval";
    const RunResult result = ws.run("eval --corpus " + corpus.string() +
                                    " --predictions " + preds.string() + " --out " +
                                    out_base.string());
    REQUIRE(result.exit_code == 0);
    CHECK(result.out.find("preds\tmacro_f1\t\t\t1.0000") != std::string::npos);
    CHECK(fs::exists(out_base.string() + ".tsv"));
    const json report = json::parse(slurp(out_base.string() + ".json"));
    CHECK(report["macro_f1"] == 1.0);
    CHECK(report["corpus_size"] == 3);
}

TEST_CASE("eval with incomplete coverage exits 2 and lists ids") {
    Workspace ws;
    const auto corpus = ws.write("corpus.jsonl", kCorpus);
    const auto preds = ws.write("preds.jsonl", R"({"id":"1","label":"positive"})" "\n");
    const RunResult result = ws.run("eval --corpus " + corpus.string() +
                                    " --predictions " + preds.string());
    CHECK(result.exit_code == 2);
    CHECK(result.err.find("'2'") != std::string::npos);
    CHECK(result.err.find("'3'") != std::string::npos);
}

TEST_CASE("eval on an unreadable file exits 2 with the path") {
    Workspace ws;
    const auto corpus = ws.write("corpus.jsonl", kCorpus);
    const RunResult result = ws.run("eval --corpus " + corpus.string() +
                                    " --predictions /nonexistent/preds.jsonl");
    CHECK(result.exit_code == 2);
    CHECK(result.err.find("/nonexistent/preds.jsonl") != std::string::npos);
}

TEST_CASE("compare of three identical prediction files is one full subset") {
    Workspace ws;
    const auto corpus = ws.write("corpus.jsonl", kCorpus);
    const std::string preds_content = std::string(R"({"id":"1","label":"positive"})") +
                                      "\n" + R"({"id":"2","label":"negative"})" + "\n" +
                                      R"({"id":"3","label":"neutral"})" + "\n";
    const auto a = ws.write("a.jsonl", preds_content);
    const auto b = ws.write("b.jsonl", preds_content);
    const auto c = ws.write("c.jsonl", preds_content);
    const auto out_base = ws.dir() / "agreement";
    const RunResult result =
        ws.run("compare --corpus " + corpus.string() + " --predictions " + a.string() +
               " --predictions " + b.string() + " --predictions " + c.string() +
               " --out " + out_base.string());
    REQUIRE(result.exit_code == 0);
    CHECK(result.out.find("all matched\t1.0000\t1.0000\t1.0000\t3 (100.0%)") !=
          std::string::npos);
    const json report = json::parse(slurp(out_base.string() + ".json"));
    CHECK(report["subsets"][0]["size"] == 3);
    CHECK(report["subsets"][4]["size"] == 0);
}

TEST_CASE("compare populates the pairwise patterns") {
    Workspace ws;
    const auto corpus = ws.write("corpus.jsonl", kCorpus);
    const auto a = ws.write("a.jsonl",
                            R"({"id":"1","label":"positive"})" "\n"
                            R"({"id":"2","label":"negative"})" "\n"
                            R"({"id":"3","label":"neutral"})" "\n");
    const auto b = ws.write("b.jsonl",
                            R"({"id":"1","label":"positive"})" "\n"
                            R"({"id":"2","label":"positive"})" "\n"
                            R"({"id":"3","label":"positive"})" "\n");
    const auto c = ws.write("c.jsonl",
                            R"({"id":"1","label":"negative"})" "\n"
                            R"({"id":"2","label":"negative"})" "\n"
                            R"({"id":"3","label":"neutral"})" "\n");
    const auto out_base = ws.dir() / "r";
    const RunResult result =
        ws.run("compare --corpus " + corpus.string() + " --predictions " + a.string() +
               " --predictions " + b.string() + " --predictions " + c.string() +
               " --out " + out_base.string());
    REQUIRE(result.exit_code == 0);
    // doc1: a=b!=c, doc2: c=a!=b, doc3: c=a!=b
    const json report = json::parse(slurp(out_base.string() + ".json"));
    CHECK(report["subsets"][1]["size"] == 1);
    CHECK(report["subsets"][2]["size"] == 2);
}

TEST_CASE("lexicon stats on an empty lexicon prints a zero row") {
    Workspace ws;
    const auto lex = ws.write("empty.tsv", "");
    const RunResult result = ws.run("lexicon stats --lexicon " + lex.string());
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("empty\t0\t0\t\t0\t") != std::string::npos);
}

TEST_CASE("tune accepts grid ranges from flags and from a file") {
    Workspace ws;
    const auto lex = ws.write("lex.tsv", kLexicon);
    const auto corpus = ws.write("corpus.jsonl", kCorpus);
    const RunResult flags = ws.run(
        "tune --engine socal --corpus " + corpus.string() + " --lexicon " + lex.string() +
        " --fallback-tokenize --t-pos-grid 0.5:1.0:0.5 --t-neg-grid -1.0:-0.5:0.5");
    REQUIRE(flags.exit_code == 0);
    const json flag_report = json::parse(flags.out);
    CHECK(flag_report["per_lexicon"][0]["grid"].size() == 4);
    CHECK(flag_report["macro_f1"] == 1.0);

    const auto grid_file = ws.write("grid.json",
                                    R"({"t_pos":[0.5,1.0,0.5],"t_neg":[-1.0,-0.5,0.5]})");
    const RunResult file = ws.run("tune --engine socal --corpus " + corpus.string() +
                                  " --lexicon " + lex.string() +
                                  " --fallback-tokenize --grid " + grid_file.string());
    REQUIRE(file.exit_code == 0);
    CHECK(json::parse(file.out)["per_lexicon"][0]["grid"] ==
          flag_report["per_lexicon"][0]["grid"]);

    const RunResult bad = ws.run("tune --engine socal --corpus " + corpus.string() +
                                 " --lexicon " + lex.string() +
                                 " --fallback-tokenize --t-pos-grid 0.5:1.0");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("the shift flag changes negation handling") {
    Workspace ws;
    const auto lex = ws.write("lex.tsv", "хороший\t3\n");
    const auto neg = ws.write("neg.txt", "не\n");
    const auto corpus =
        ws.write("corpus.jsonl", R"({"id":"1","text":"не хороший"})" "\n");
    const std::string base = "classify --engine socal --corpus " + corpus.string() +
                             " --lexicon " + lex.string() + " --negations " +
                             neg.string() + " --fallback-tokenize --t-pos 0.5 --t-neg -0.5";
    // default shift 4: 3 - 4 = -1 -> negative
    CHECK(ws.run(base).out == "{\"id\":\"1\",\"label\":\"negative\"}\n");
    // shift 2: 3 - 2 = 1 -> positive
    CHECK(ws.run(base + " --shift 2").out == "{\"id\":\"1\",\"label\":\"positive\"}\n");
}

TEST_CASE("the raw-scale flag moves the decision scale") {
    Workspace ws;
    const auto lex = ws.write("lex.tsv", "хороший\t2\n");
    const auto corpus = ws.write("corpus.jsonl", R"({"id":"1","text":"хороший"})" "\n");
    const std::string base = "classify --engine sentistrength --corpus " +
                             corpus.string() + " --lexicon " + lex.string() +
                             " --fallback-tokenize --k-neut 1.0 --k 1.0";
    // offset scale: (2,1) -> (1,0), 1 <= 1 -> neutral
    CHECK(ws.run(base).out == "{\"id\":\"1\",\"label\":\"neutral\"}\n");
    // raw scale: 2 > 1 -> positive
    CHECK(ws.run(base + " --raw-scale").out == "{\"id\":\"1\",\"label\":\"positive\"}\n");
}

TEST_CASE("eval requires gold labels") {
    Workspace ws;
    const auto corpus = ws.write("corpus.jsonl", R"({"id":"1","text":"т"})" "\n");
    const auto preds = ws.write("preds.jsonl", R"({"id":"1","label":"neutral"})" "\n");
    const RunResult result = ws.run("eval --corpus " + corpus.string() +
                                    " --predictions " + preds.string());
    CHECK(result.exit_code == 2);
}

TEST_CASE("subcommands do not mutate their inputs") {
    Workspace ws;
    const auto lex = ws.write("lex.tsv", kLexicon);
    const auto corpus = ws.write("corpus.jsonl", kCorpus);
    const std::string lex_before = slurp(lex);
    const std::string corpus_before = slurp(corpus);
    ws.run("classify --engine socal --corpus " + corpus.string() + " --lexicon " +
           lex.string() + " --t-pos 0.5 --t-neg -0.5 --fallback-tokenize --out " +
           (ws.dir() / "p.jsonl").string());
    CHECK(slurp(lex) == lex_before);
    CHECK(slurp(corpus) == corpus_before);
}

TEST_CASE("no subcommand is a usage error") {
    Workspace ws;
    CHECK(ws.run("").exit_code == 2);
    CHECK(ws.run("--help").exit_code == 0);
}
