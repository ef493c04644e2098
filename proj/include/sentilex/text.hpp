#ifndef SENTILEX_TEXT_HPP
#define SENTILEX_TEXT_HPP

#include <cstddef>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sentilex/errors.hpp"
#include "sentilex/unicode.hpp"

namespace sentilex {

enum class PosTag { Noun, Adj, Verb, Adv, Other };

inline const char* to_string(PosTag pos) {
    switch (pos) {
        case PosTag::Noun: return "NOUN";
        case PosTag::Adj: return "ADJ";
        case PosTag::Verb: return "VERB";
        case PosTag::Adv: return "ADV";
        case PosTag::Other: return "X";
    }
    return "X";
}

// UPOS tags outside the four content classes collapse to Other.
inline PosTag parse_upos(std::string_view tag) {
    if (tag == "NOUN") return PosTag::Noun;
    if (tag == "ADJ") return PosTag::Adj;
    if (tag == "VERB") return PosTag::Verb;
    if (tag == "ADV") return PosTag::Adv;
    return PosTag::Other;
}

struct Token {
    std::string surface;
    std::string lemma; // lowercased, ё folded to е
    PosTag pos = PosTag::Other;
    bool is_question_mark = false;
    bool in_quotes = false;

    bool operator==(const Token&) const = default;
};

struct Sentence {
    std::vector<Token> tokens;

    bool operator==(const Sentence&) const = default;
};

struct Document {
    std::string id;
    std::vector<Sentence> sentences;
    std::string raw_text;
    std::size_t char_length = 0; // code points in raw_text
    bool has_pos = true;         // false when built without morphological annotation

    bool operator==(const Document&) const = default;
};

inline Document make_document(std::string id, std::vector<Sentence> sentences,
                              std::string raw_text, bool has_pos = true) {
    Document doc;
    doc.id = std::move(id);
    doc.sentences = std::move(sentences);
    doc.char_length = utf8_length(raw_text);
    doc.raw_text = std::move(raw_text);
    doc.has_pos = has_pos;
    return doc;
}

namespace detail {

inline bool is_open_quote(char32_t c) { return c == 0xAB || c == 0x201C; }   // « “
inline bool is_close_quote(char32_t c) { return c == 0xBB || c == 0x201D; }  // » ”

// Finds matched quote pairs in a sequence of quote marks at the given
// positions. Directional pairs («» / “”) match by nesting; straight double
// quotes pair up consecutively. Unmatched marks are ignored.
inline std::vector<std::pair<std::size_t, std::size_t>>
match_quote_pairs(const std::vector<std::pair<char32_t, std::size_t>>& marks) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<std::size_t> guillemets, curly;
    std::optional<std::size_t> straight;
    for (const auto& [cp, pos] : marks) {
        switch (cp) {
            case 0xAB: guillemets.push_back(pos); break;
            case 0xBB:
                if (!guillemets.empty()) {
                    pairs.emplace_back(guillemets.back(), pos);
                    guillemets.pop_back();
                }
                break;
            case 0x201C: curly.push_back(pos); break;
            case 0x201D:
                if (!curly.empty()) {
                    pairs.emplace_back(curly.back(), pos);
                    curly.pop_back();
                }
                break;
            case U'"':
                if (straight) {
                    pairs.emplace_back(*straight, pos);
                    straight.reset();
                } else {
                    straight = pos;
                }
                break;
            default: break;
        }
    }
    return pairs;
}

// Marks tokens lying strictly between paired quote marks. Quote marks are
// recognized as single-character token surfaces; pairing spans sentence
// boundaries within the document.
inline void mark_quoted_tokens(Document& doc) {
    std::vector<Token*> flat;
    for (auto& sentence : doc.sentences)
        for (auto& token : sentence.tokens) flat.push_back(&token);

    std::vector<std::pair<char32_t, std::size_t>> marks;
    for (std::size_t i = 0; i < flat.size(); ++i) {
        const std::string& s = flat[i]->surface;
        std::size_t k = 0;
        if (s.empty()) continue;
        const char32_t cp = next_code_point(s, k);
        if (k != s.size()) continue; // multi-character surface
        if (is_open_quote(cp) || is_close_quote(cp) || cp == U'"')
            marks.emplace_back(cp, i);
    }
    for (const auto& [lo, hi] : match_quote_pairs(marks))
        for (std::size_t i = lo + 1; i < hi; ++i) flat[i]->in_quotes = true;
}

inline std::string escape_text_line(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        if (c == '\\') out += "\\\\";
        else if (c == '\n') out += "\\n";
        else if (c == '\r') out += "\\r";
        else out.push_back(c);
    }
    return out;
}

inline std::string unescape_text_line(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\\' && i + 1 < text.size()) {
            const char c = text[++i];
            if (c == 'n') out.push_back('\n');
            else if (c == 'r') out.push_back('\r');
            else if (c == '\\') out.push_back('\\');
            else { out.push_back('\\'); out.push_back(c); }
        } else {
            out.push_back(text[i]);
        }
    }
    return out;
}

} // namespace detail

// Parses the annotated-token stream: one token per line with tab-separated
// FORM, LEMMA and UPOS columns; a blank line ends a sentence; "# doc = <id>"
// starts a document block and "# text = <raw>" supplies its raw text (with
// \n, \r and \\ escapes). When no text line is present the raw text is the
// space-join of surfaces. A "# pos = absent" line marks a block produced
// without morphological annotation. Lemmas are lowercased and ё-folded on
// ingestion; a lemma of "_" falls back to the folded surface. Other comment
// lines are ignored.
inline std::vector<Document> parse_annotated(std::istream& in,
                                             const std::string& source = "<stream>") {
    std::vector<Document> docs;
    std::unordered_set<std::string> seen_ids;

    bool in_block = false;
    std::string id;
    std::optional<std::string> raw_text;
    bool pos_absent = false;
    std::vector<Sentence> sentences;
    std::vector<Token> tokens;
    std::size_t line_no = 0;

    auto flush_sentence = [&] {
        if (!tokens.empty()) {
            sentences.push_back(Sentence{std::move(tokens)});
            tokens.clear();
        }
    };
    auto flush_document = [&] {
        if (!in_block) return;
        flush_sentence();
        if (sentences.empty())
            throw ParseError(source, line_no, "document block '" + id + "' is empty");
        if (!seen_ids.insert(id).second)
            throw ParseError(source, line_no, "duplicate document id '" + id + "'");
        std::string raw;
        if (raw_text) {
            raw = *raw_text;
        } else {
            for (const auto& sentence : sentences)
                for (const auto& token : sentence.tokens) {
                    if (!raw.empty()) raw += ' ';
                    raw += token.surface;
                }
        }
        Document doc = make_document(std::move(id), std::move(sentences),
                                     std::move(raw), !pos_absent);
        detail::mark_quoted_tokens(doc);
        docs.push_back(std::move(doc));
        id.clear();
        raw_text.reset();
        pos_absent = false;
        sentences.clear();
        in_block = false;
    };

    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            flush_sentence();
            continue;
        }
        if (line[0] == '#') {
            if (line.rfind("# doc =", 0) == 0) {
                flush_document();
                std::string value = line.substr(7);
                if (!value.empty() && value.front() == ' ') value.erase(0, 1);
                if (value.empty())
                    throw ParseError(source, line_no, "empty document id");
                in_block = true;
                id = value;
            } else if (line.rfind("# text =", 0) == 0) {
                if (!in_block)
                    throw ParseError(source, line_no, "'# text' outside a document block");
                if (raw_text)
                    throw ParseError(source, line_no, "duplicate '# text' line");
                std::string value = line.substr(8);
                if (!value.empty() && value.front() == ' ') value.erase(0, 1);
                raw_text = detail::unescape_text_line(value);
            } else if (line.rfind("# pos = absent", 0) == 0) {
                if (!in_block)
                    throw ParseError(source, line_no, "'# pos' outside a document block");
                pos_absent = true;
            }
            continue;
        }
        if (!in_block)
            throw ParseError(source, line_no,
                             "token line before any '# doc =' header");
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
        if (cols.size() != 3)
            throw ParseError(source, line_no,
                             "expected 3 tab-separated columns (FORM LEMMA UPOS), got " +
                                 std::to_string(cols.size()));
        Token token;
        token.surface = cols[0];
        if (token.surface.empty())
            throw ParseError(source, line_no, "empty FORM column");
        const std::string& lemma_col = cols[1];
        if (lemma_col.empty())
            throw ParseError(source, line_no, "empty LEMMA column");
        token.lemma = lemma_col == "_" ? fold_text(token.surface) : fold_text(lemma_col);
        token.pos = parse_upos(cols[2]);
        if (token.surface.find('?') != std::string::npos) {
            token.is_question_mark = true;
            token.pos = PosTag::Other;
        }
        tokens.push_back(std::move(token));
    }
    ++line_no;
    flush_document();
    return docs;
}

inline std::vector<Document> parse_annotated_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open annotated file: " + path);
    return parse_annotated(in, path);
}

// Serializes a document in the format parse_annotated reads. Token surfaces
// must not contain tabs or line breaks.
inline void write_annotated(std::ostream& out, const Document& doc) {
    out << "# doc = " << doc.id << '\n';
    out << "# text = " << detail::escape_text_line(doc.raw_text) << '\n';
    if (!doc.has_pos) out << "# pos = absent\n";
    for (const auto& sentence : doc.sentences) {
        for (const auto& token : sentence.tokens)
            out << token.surface << '\t' << token.lemma << '\t'
                << to_string(token.pos) << '\n';
        out << '\n';
    }
}

inline void write_annotated(std::ostream& out, const std::vector<Document>& docs) {
    for (const auto& doc : docs) write_annotated(out, doc);
}

// Degraded-mode tokenizer for raw text without morphological annotation.
// Words are maximal runs of letters/digits (hyphens joining two word
// characters stay inside the word); sentences split on '.', '!', '?' and
// newline. Question marks are kept as tokens so sentence-level question
// handling still works; all other punctuation is dropped. POS tags are
// unknown, which the returned document records via has_pos = false.
inline Document tokenize_fallback(std::string_view raw, std::string id) {
    const std::u32string cps = decode_utf8(raw);

    std::vector<std::pair<char32_t, std::size_t>> marks;
    for (std::size_t i = 0; i < cps.size(); ++i) {
        const char32_t c = cps[i];
        if (detail::is_open_quote(c) || detail::is_close_quote(c) || c == U'"')
            marks.emplace_back(c, i);
    }
    std::vector<bool> quoted(cps.size(), false);
    for (const auto& [lo, hi] : detail::match_quote_pairs(marks))
        for (std::size_t i = lo + 1; i < hi; ++i) quoted[i] = true;

    std::vector<Sentence> sentences;
    std::vector<Token> tokens;

    auto end_sentence = [&] {
        if (!tokens.empty()) {
            sentences.push_back(Sentence{std::move(tokens)});
            tokens.clear();
        }
    };
    auto emit_word = [&](std::size_t begin, std::size_t end) {
        Token token;
        token.surface = encode_utf8(std::u32string_view(cps).substr(begin, end - begin));
        token.lemma = fold_text(token.surface);
        token.pos = PosTag::Other;
        token.in_quotes = quoted[begin];
        tokens.push_back(std::move(token));
    };

    std::size_t i = 0;
    const std::size_t n = cps.size();
    while (i < n) {
        const char32_t c = cps[i];
        if (is_word_char(c)) {
            std::size_t j = i + 1;
            while (j < n) {
                if (is_word_char(cps[j])) {
                    ++j;
                } else if (cps[j] == U'-' && j + 1 < n && is_word_char(cps[j + 1])) {
                    j += 2;
                } else {
                    break;
                }
            }
            emit_word(i, j);
            i = j;
        } else if (c == U'?') {
            Token token;
            token.surface = "?";
            token.lemma = "?";
            token.pos = PosTag::Other;
            token.is_question_mark = true;
            token.in_quotes = quoted[i];
            tokens.push_back(std::move(token));
            end_sentence();
            ++i;
        } else if (c == U'.' || c == U'!' || c == U'\n') {
            end_sentence();
            ++i;
        } else {
            ++i;
        }
    }
    end_sentence();

    return make_document(std::move(id), std::move(sentences), std::string(raw),
                         /*has_pos=*/false);
}

} // namespace sentilex

#endif
