#ifndef SENTILEX_UNICODE_HPP
#define SENTILEX_UNICODE_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Minimal UTF-8 handling for Russian text processing: decoding, code point
// counting, case folding over ASCII/Latin-1/Cyrillic, and the character
// classes the tokenizer and lexicon cleaner need. Invalid byte sequences
// decode as U+FFFD; nothing here throws.

namespace sentilex {

inline void append_utf8(std::string& out, char32_t cp) {
    if (cp <= 0x7F) {
        out.push_back(static_cast<char>(cp));
    } else if (cp <= 0x7FF) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp <= 0xFFFF) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// Decodes the next code point starting at s[i]; advances i past it.
inline char32_t next_code_point(std::string_view s, std::size_t& i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    std::size_t len;
    char32_t cp;
    if (b0 < 0x80) {
        ++i;
        return b0;
    } else if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        ++i;
        return 0xFFFD;
    }
    if (i + len > s.size()) {
        ++i;
        return 0xFFFD;
    }
    for (std::size_t k = 1; k < len; ++k) {
        const auto b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xC0) != 0x80) {
            ++i;
            return 0xFFFD;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    // Reject overlong encodings and surrogates.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
        (len == 4 && cp < 0x10000) || (cp >= 0xD800 && cp <= 0xDFFF) ||
        cp > 0x10FFFF) {
        ++i;
        return 0xFFFD;
    }
    i += len;
    return cp;
}

inline std::u32string decode_utf8(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) out.push_back(next_code_point(s, i));
    return out;
}

inline std::string encode_utf8(std::u32string_view s) {
    std::string out;
    out.reserve(s.size() * 2);
    for (char32_t cp : s) append_utf8(out, cp);
    return out;
}

// Number of code points in a UTF-8 string.
inline std::size_t utf8_length(std::string_view s) {
    std::size_t n = 0, i = 0;
    while (i < s.size()) {
        next_code_point(s, i);
        ++n;
    }
    return n;
}

inline bool is_latin_letter(char32_t c) {
    if ((c >= U'A' && c <= U'Z') || (c >= U'a' && c <= U'z')) return true;
    if (c >= 0xC0 && c <= 0xFF && c != 0xD7 && c != 0xF7) return true; // Latin-1 letters
    if (c >= 0x100 && c <= 0x24F) return true;                        // Latin Extended-A/B
    return false;
}

inline bool is_cyrillic(char32_t c) {
    return (c >= 0x400 && c <= 0x4FF) || (c >= 0x500 && c <= 0x52F);
}

inline bool is_letter(char32_t c) {
    return is_latin_letter(c) || is_cyrillic(c) ||
           (c >= 0x386 && c <= 0x3F5); // Greek
}

inline bool is_word_char(char32_t c) {
    return is_letter(c) || (c >= U'0' && c <= U'9');
}

// Lowercases ASCII, Latin-1 and Cyrillic, then folds ё to е. All lemma
// matching in the engines happens on the image of this function.
inline char32_t fold_char(char32_t c) {
    if (c >= U'A' && c <= U'Z') {
        c += 0x20;
    } else if (c >= 0xC0 && c <= 0xDE && c != 0xD7) {
        c += 0x20; // Latin-1 uppercase
    } else if (c >= 0x410 && c <= 0x42F) {
        c += 0x20; // А..Я
    } else if (c >= 0x400 && c <= 0x40F) {
        c += 0x50; // Ѐ..Џ (includes Ё -> ё)
    }
    if (c == 0x451) c = 0x435; // ё -> е
    return c;
}

inline std::string fold_text(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) append_utf8(out, fold_char(next_code_point(s, i)));
    return out;
}

// True when the string is a fixpoint of fold_text.
inline bool is_folded(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
        const char32_t cp = next_code_point(s, i);
        if (fold_char(cp) != cp) return false;
    }
    return true;
}

inline bool contains_latin(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size())
        if (is_latin_letter(next_code_point(s, i))) return true;
    return false;
}

} // namespace sentilex

#endif
