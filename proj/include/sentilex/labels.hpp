#ifndef SENTILEX_LABELS_HPP
#define SENTILEX_LABELS_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace sentilex {

// The three-class sentiment label space.
enum class SentimentLabel { Positive, Negative, Neutral };

inline constexpr std::array<SentimentLabel, 3> kAllLabels = {
    SentimentLabel::Positive, SentimentLabel::Negative, SentimentLabel::Neutral};

inline const char* to_string(SentimentLabel label) {
    switch (label) {
        case SentimentLabel::Positive: return "positive";
        case SentimentLabel::Negative: return "negative";
        case SentimentLabel::Neutral: return "neutral";
    }
    return "neutral";
}

// Case-insensitive (ASCII) parse of "positive" | "negative" | "neutral".
inline std::optional<SentimentLabel> parse_label(std::string_view text) {
    std::string low;
    low.reserve(text.size());
    for (char c : text)
        low.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c + 32) : c);
    if (low == "positive") return SentimentLabel::Positive;
    if (low == "negative") return SentimentLabel::Negative;
    if (low == "neutral") return SentimentLabel::Neutral;
    return std::nullopt;
}

inline std::size_t label_index(SentimentLabel label) {
    return static_cast<std::size_t>(label);
}

} // namespace sentilex

#endif
