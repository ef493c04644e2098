#ifndef SENTILEX_FORMAT_HPP
#define SENTILEX_FORMAT_HPP

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace sentilex {

// Shortest round-trip decimal rendering; used where re-reading the value
// must reproduce it bit-for-bit (lexicon files, JSON-adjacent output).
inline std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

inline std::string format_fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

// Splits 100% over the given counts at one-decimal resolution using the
// largest-remainder rule, so the rendered percentages sum to exactly 100.0.
// Returns an empty vector when the total is zero.
inline std::vector<double> percent_split(const std::vector<std::size_t>& counts) {
    const std::size_t total = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
    if (total == 0) return {};
    // Work in 0.1%-units: distribute 1000 units.
    std::vector<std::uint64_t> base(counts.size());
    std::vector<double> remainder(counts.size());
    std::uint64_t assigned = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double exact = 1000.0 * static_cast<double>(counts[i]) / static_cast<double>(total);
        base[i] = static_cast<std::uint64_t>(exact);
        remainder[i] = exact - static_cast<double>(base[i]);
        assigned += base[i];
    }
    std::vector<std::size_t> order(counts.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return remainder[a] > remainder[b];
    });
    for (std::size_t k = 0; assigned < 1000 && k < order.size(); ++k, ++assigned)
        base[order[k]] += 1;
    std::vector<double> out(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
        out[i] = static_cast<double>(base[i]) / 10.0;
    return out;
}

inline std::string tsv_row(const std::vector<std::string>& cells) {
    std::string row;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) row += '\t';
        row += cells[i];
    }
    row += '\n';
    return row;
}

} // namespace sentilex

#endif
