#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sentilex/lexicon.hpp"

namespace fs = std::filesystem;

using namespace sentilex;

namespace {

RawLexiconEntry raw(const std::string& key, double weight) {
    return RawLexiconEntry{key, weight, std::nullopt};
}

// Cyrillic-only synthetic keys, so the Latin filter never interferes.
std::string synth_key(int i) {
    static const char* digits[] = {"а", "б", "в", "г", "д", "е", "ж", "з", "и", "к"};
    std::string out = "слово";
    if (i == 0) return out + digits[0];
    while (i > 0) {
        out += digits[i % 10];
        i /= 10;
    }
    return out;
}

} // namespace

TEST_CASE("clean_lexicon collapses duplicates") {
    const auto [lexicon, report] =
        clean_lexicon({raw("хороший", 3), raw("хороший", 3)}, "t");
    CHECK(lexicon.size() == 1);
    CHECK(report.removed_duplicates == 1);
    CHECK(report.kept == 1);
    CHECK(lexicon.find("хороший")->weight == 3.0);
}

TEST_CASE("clean_lexicon drops keys with both polarities") {
    const auto [lexicon, report] = clean_lexicon({raw("занос", 1), raw("занос", -2)}, "t");
    CHECK(lexicon.size() == 0);
    CHECK(report.removed_conflict_keys == 1);
    CHECK(report.removed_duplicates == 0);
}

TEST_CASE("clean_lexicon drops Latin-letter entries") {
    const auto [lexicon, report] = clean_lexicon({raw("ok", 2)}, "t");
    CHECK(lexicon.size() == 0);
    CHECK(report.removed_latin == 1);
}

TEST_CASE("clean_lexicon drops neutral and out-of-range weights") {
    const auto [lexicon, report] =
        clean_lexicon({raw("стол", 0), raw("дом", 7), raw("сад", -5.5), raw("лес", 2)}, "t");
    CHECK(lexicon.size() == 1);
    CHECK(report.removed_neutral == 1);
    CHECK(report.removed_out_of_range == 2);
    CHECK(lexicon.contains("лес"));
}

TEST_CASE("clean_lexicon folds keys before grouping") {
    SECTION("case and yo folding merge duplicates") {
        const auto [lexicon, report] =
            clean_lexicon({raw("Актёр", 2), raw("актер", 2)}, "t");
        CHECK(lexicon.size() == 1);
        CHECK(report.removed_duplicates == 1);
        CHECK(lexicon.contains("актер"));
    }
    SECTION("folding exposes polarity conflicts") {
        const auto [lexicon, report] =
            clean_lexicon({raw("ЗАНОС", 1), raw("занос", -1)}, "t");
        CHECK(lexicon.size() == 0);
        CHECK(report.removed_conflict_keys == 1);
    }
    SECTION("first occurrence wins") {
        const auto [lexicon, report] =
            clean_lexicon({raw("дом", 2), raw("дом", 3)}, "t");
        CHECK(lexicon.find("дом")->weight == 2.0);
    }
}

TEST_CASE("clean_lexicon keeps phrases as multi-lemma keys") {
    const auto [lexicon, report] = clean_lexicon({raw("очень  хороший", 4)}, "t");
    REQUIRE(lexicon.size() == 1);
    const LexiconEntry* entry = lexicon.find("очень хороший");
    REQUIRE(entry != nullptr);
    CHECK(entry->key == std::vector<std::string>{"очень", "хороший"});
}

TEST_CASE("clean_lexicon is idempotent") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> weight(-5.0, 5.0);
    std::vector<RawLexiconEntry> entries;
    for (int i = 0; i < 200; ++i) {
        double w = weight(rng);
        if (w == 0) w = 1;
        entries.push_back(raw(synth_key(i % 120), w));
    }
    const auto [cleaned, report1] = clean_lexicon(entries, "t");
    std::vector<RawLexiconEntry> again;
    for (const auto& [key, entry] : cleaned.entries)
        again.push_back(raw(key, entry.weight));
    const auto [recleaned, report2] = clean_lexicon(again, "t");
    CHECK(recleaned.size() == cleaned.size());
    CHECK(report2.removed_neutral == 0);
    CHECK(report2.removed_latin == 0);
    CHECK(report2.removed_conflict_keys == 0);
    CHECK(report2.removed_duplicates == 0);
    for (const auto& [key, entry] : cleaned.entries) {
        const LexiconEntry* other = recleaned.find(key);
        REQUIRE(other != nullptr);
        CHECK(other->weight == entry.weight);
    }
}

namespace {

Lexicon make_lexicon(const std::string& name,
                     const std::vector<std::pair<std::string, double>>& entries) {
    std::vector<RawLexiconEntry> rows;
    rows.reserve(entries.size());
    for (const auto& [key, weight] : entries) rows.push_back(raw(key, weight));
    return clean_lexicon(rows, name).first;
}

} // namespace

TEST_CASE("vote_combine membership threshold") {
    std::vector<Lexicon> lexicons;
    for (int i = 0; i < 9; ++i)
        lexicons.push_back(make_lexicon("lex" + std::to_string(i), {{"хороший", 3}}));
    // unanimous key reaches Lex9
    const Lexicon lex9 = vote_combine(lexicons, 9);
    CHECK(lex9.contains("хороший"));
    CHECK(lex9.name == "Lex9");
    CHECK(lex9.find("хороший")->weight == 3.0);
    CHECK(lex9.find("хороший")->sources.size() == 9);

    // a key in exactly 2 lexicons misses Lex3
    lexicons[0] = make_lexicon("lex0", {{"хороший", 3}, {"плохой", -2}});
    lexicons[1] = make_lexicon("lex1", {{"хороший", 3}, {"плохой", -2}});
    CHECK(vote_combine(lexicons, 2).contains("плохой"));
    CHECK_FALSE(vote_combine(lexicons, 3).contains("плохой"));
}

TEST_CASE("vote_combine with pairwise-disjoint lexicons") {
    std::vector<Lexicon> lexicons;
    std::set<std::string> all_keys;
    for (int i = 0; i < 9; ++i) {
        std::vector<std::pair<std::string, double>> entries;
        for (int j = 0; j < 5; ++j) {
            const std::string key = synth_key(100 * i + j);
            entries.emplace_back(key, j % 2 ? 2.0 : -2.0);
            all_keys.insert(key);
        }
        lexicons.push_back(make_lexicon("lex" + std::to_string(i), entries));
    }
    const Lexicon lex1 = vote_combine(lexicons, 1);
    CHECK(lex1.size() == all_keys.size());
    for (const auto& key : all_keys) CHECK(lex1.contains(key));
    for (std::size_t n = 2; n <= 9; ++n) CHECK(vote_combine(lexicons, n).size() == 0);
}

TEST_CASE("vote_combine excludes cross-lexicon polarity conflicts everywhere") {
    std::vector<Lexicon> lexicons = {
        make_lexicon("a", {{"спорный", 2}}),
        make_lexicon("b", {{"спорный", -2}}),
        make_lexicon("c", {{"спорный", 2}}),
    };
    for (std::size_t n = 1; n <= 3; ++n)
        CHECK_FALSE(vote_combine(lexicons, n).contains("спорный"));
}

TEST_CASE("vote_combine averages weights") {
    std::vector<Lexicon> lexicons = {
        make_lexicon("a", {{"дом", 1}}),
        make_lexicon("b", {{"дом", 2}}),
        make_lexicon("c", {{"дом", 4.5}}),
    };
    const Lexicon lex2 = vote_combine(lexicons, 2);
    CHECK(lex2.find("дом")->weight == Catch::Approx((1 + 2 + 4.5) / 3.0).epsilon(1e-12));
    CHECK(lex2.find("дом")->sources == std::set<std::string>{"a", "b", "c"});
}

TEST_CASE("vote_combine edge thresholds") {
    std::vector<Lexicon> lexicons = {make_lexicon("a", {{"дом", 1}})};
    CHECK(vote_combine(lexicons, 2).size() == 0); // n beyond count: empty, not an error
    CHECK_THROWS_AS(vote_combine(lexicons, 0), InputError);
}

namespace {

struct SynthFamily {
    std::vector<Lexicon> lexicons;
    // oracle data: key -> (distinct source count, conflict flag)
    std::map<std::string, std::pair<std::size_t, bool>> membership;
};

SynthFamily random_family(std::mt19937& rng, int pool, int per_lexicon) {
    SynthFamily family;
    std::uniform_int_distribution<int> key_pick(0, pool - 1);
    std::uniform_int_distribution<int> weight_pick(1, 10);
    for (int l = 0; l < 9; ++l) {
        std::vector<std::pair<std::string, double>> entries;
        std::set<std::string> used;
        for (int e = 0; e < per_lexicon; ++e) {
            const std::string key = synth_key(key_pick(rng));
            if (!used.insert(key).second) continue;
            const double weight =
                (weight_pick(rng) <= 5 ? 1 : -1) * (0.5 * weight_pick(rng));
            entries.emplace_back(key, weight);
        }
        family.lexicons.push_back(make_lexicon("lex" + std::to_string(l), entries));
    }
    // brute-force membership count over the cleaned lexicons
    for (const auto& lexicon : family.lexicons) {
        for (const auto& [key, entry] : lexicon.entries) {
            auto& [count, conflict] = family.membership[key];
            if (count > 0) {
                bool prev_positive = false;
                for (const auto& other : family.lexicons) {
                    if (const LexiconEntry* found = other.find(key)) {
                        prev_positive = found->positive();
                        break;
                    }
                }
                if (prev_positive != entry.positive()) conflict = true;
            }
            ++count;
        }
    }
    return family;
}

} // namespace

TEST_CASE("vote_combine nesting and union properties") {
    std::mt19937 rng(17);
    for (int iter = 0; iter < 30; ++iter) {
        const SynthFamily family = random_family(rng, 60, 25);
        std::vector<Lexicon> combined;
        for (std::size_t n = 1; n <= 9; ++n)
            combined.push_back(vote_combine(family.lexicons, n));

        // Lex1 is the polarity-consistent union
        std::size_t expect_union = 0;
        for (const auto& [key, info] : family.membership)
            if (!info.second) ++expect_union;
        CHECK(combined[0].size() == expect_union);

        for (std::size_t n = 1; n <= 9; ++n) {
            // membership matches the brute-force count
            for (const auto& [key, info] : family.membership) {
                const bool expected = !info.second && info.first >= n;
                CHECK(combined[n - 1].contains(key) == expected);
            }
            // nesting
            if (n < 9) {
                for (const auto& [key, entry] : combined[n].entries)
                    CHECK(combined[n - 1].contains(key));
                CHECK(combined[n].size() <= combined[n - 1].size());
            }
        }
    }
}

TEST_CASE("vote_combine is independent of input ordering") {
    std::mt19937 rng(23);
    const SynthFamily family = random_family(rng, 40, 20);
    const Lexicon forward = vote_combine(family.lexicons, 3);
    std::vector<Lexicon> shuffled = family.lexicons;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const Lexicon backward = vote_combine(shuffled, 3);
    REQUIRE(forward.size() == backward.size());
    for (const auto& [key, entry] : forward.entries) {
        const LexiconEntry* other = backward.find(key);
        REQUIRE(other != nullptr);
        CHECK(other->weight == entry.weight); // bitwise equal
        CHECK(other->sources == entry.sources);
    }
}

TEST_CASE("lexicon_stats counts and percentages") {
    const Lexicon lexicon = make_lexicon(
        "t", {{"а", 1}, {"б", 2}, {"в", 3}, {"г", -1}});
    const LexiconStats stats = lexicon_stats(lexicon);
    CHECK(stats.total == 4);
    CHECK(stats.positive == 3);
    CHECK(stats.negative == 1);
    CHECK(stats.positive_pct == 75.0);
    CHECK(stats.negative_pct == 25.0);
}

TEST_CASE("lexicon_stats on an empty lexicon") {
    const LexiconStats stats = lexicon_stats(Lexicon{"empty", {}});
    CHECK(stats.total == 0);
    CHECK_FALSE(stats.positive_pct.has_value());
    CHECK_FALSE(stats.negative_pct.has_value());
}

TEST_CASE("lexicon file round-trip") {
    const Lexicon lexicon = make_lexicon("t", {{"хороший", 3.25}, {"очень плохой", -4.5}});
    std::ostringstream out;
    write_lexicon(out, lexicon);
    std::istringstream in(out.str());
    const auto entries = read_lexicon_entries(in, "mem");
    const auto [reread, report] = clean_lexicon(entries, "t");
    REQUIRE(reread.size() == lexicon.size());
    for (const auto& [key, entry] : lexicon.entries)
        CHECK(reread.find(key)->weight == entry.weight);
}

TEST_CASE("lexicon file scale header") {
    std::istringstream in("#scale 5\nхороший\t0.6\n");
    const auto entries = read_lexicon_entries(in, "mem");
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].weight == Catch::Approx(3.0));
}

TEST_CASE("lexicon file format errors carry line numbers") {
    auto expect_parse_error = [](const std::string& content, std::size_t line) {
        std::istringstream in(content);
        try {
            read_lexicon_entries(in, "mem");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == line);
        }
    };
    expect_parse_error("хороший\n", 1);                    // one column
    expect_parse_error("хороший\tx\n", 1);                 // bad weight
    expect_parse_error("хороший\t2\tНАРЕЧ\n", 1);          // bad POS
    expect_parse_error("хороший\t2\nплохой\t1\t2\t3\n", 2); // too many columns
    expect_parse_error("\t2\n", 1);                        // empty key
}

TEST_CASE("lexicon entries accept POS tags") {
    std::istringstream in("хороший\t3\tADJ\nдом\t1\tN\nидти\t2\tV\nплохо\t-2\tADV\n");
    const auto entries = read_lexicon_entries(in, "mem");
    REQUIRE(entries.size() == 4);
    CHECK(entries[0].pos == PosTag::Adj);
    CHECK(entries[1].pos == PosTag::Noun);
    CHECK(entries[2].pos == PosTag::Verb);
    CHECK(entries[3].pos == PosTag::Adv);
}

TEST_CASE("load_markers reads and validates the three lists") {
    const fs::path dir = fs::temp_directory_path() / "sentilex_markers_test";
    fs::create_directories(dir);
    auto write = [&](const char* name, const std::string& content) {
        std::ofstream out(dir / name, std::ios::binary);
        out << content;
        return (dir / name).string();
    };

    SECTION("happy path") {
        const MarkerLists markers = load_markers(
            write("mod.tsv", "очень\t0.25\nслегка\t-0.30\n"),
            write("neg.txt", "не\nбез\n"), write("irr.txt", "если\nожидать\n"));
        CHECK(markers.modifiers.at("очень") == 0.25);
        CHECK(markers.modifiers.at("слегка") == -0.30);
        CHECK(markers.is_negation("не"));
        CHECK(markers.is_irrealis("если"));
    }
    SECTION("overlap between lists is fatal and names the lemma") {
        const auto mod = write("mod2.tsv", "очень\t0.25\n");
        const auto neg = write("neg2.txt", "не\n");
        const auto irr = write("irr2.txt", "не\n");
        try {
            load_markers(mod, neg, irr);
            FAIL("expected InputError");
        } catch (const InputError& e) {
            CHECK(std::string(e.what()).find("не") != std::string::npos);
        }
    }
    SECTION("empty paths give empty lists") {
        const MarkerLists markers = load_markers("", "", "");
        CHECK(markers.modifiers.empty());
        CHECK(markers.negations.empty());
        CHECK(markers.irrealis.empty());
    }
    SECTION("delta at or below -1 is fatal") {
        const auto mod = write("mod3.tsv", "совсем\t-1.0\n");
        CHECK_THROWS_AS(load_markers(mod, "", ""), InputError);
    }
    SECTION("marker lemmas are folded") {
        const MarkerLists markers =
            load_markers(write("mod4.tsv", "ОЧЕНЬ\t0.5\n"), "", "");
        CHECK(markers.is_modifier("очень"));
    }
}
