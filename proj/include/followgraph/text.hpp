#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace followgraph::text {

inline char fold(char c) {
    return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

inline std::string fold(std::string_view s) {
    std::string out(s.size(), '\0');
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = fold(s[i]);
    return out;
}

inline bool is_alpha(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) != 0;
}

inline bool is_space(char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

// First whitespace-delimited token, empty view if none.
inline std::string_view first_token(std::string_view s) {
    std::size_t b = 0;
    while (b < s.size() && is_space(s[b])) ++b;
    std::size_t e = b;
    while (e < s.size() && !is_space(s[e])) ++e;
    return s.substr(b, e - b);
}

// Strip non-alphabetic characters from both ends ("MIKE!!" -> "MIKE",
// "@emily" -> "emily"). Interior punctuation is kept.
inline std::string_view strip_nonalpha_edges(std::string_view s) {
    std::size_t b = 0;
    while (b < s.size() && !is_alpha(s[b])) ++b;
    std::size_t e = s.size();
    while (e > b && !is_alpha(s[e - 1])) --e;
    return s.substr(b, e - b);
}

// Maximal alphabetic runs, case-folded. "proud mom-of-3!" -> {proud, mom, of}.
inline std::vector<std::string> alpha_words(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && !is_alpha(s[i])) ++i;
        std::size_t b = i;
        while (i < s.size() && is_alpha(s[i])) ++i;
        if (i > b) out.push_back(fold(s.substr(b, i - b)));
    }
    return out;
}

inline std::string trim(std::string_view s) {
    std::size_t b = 0;
    while (b < s.size() && is_space(s[b])) ++b;
    std::size_t e = s.size();
    while (e > b && is_space(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

}  // namespace followgraph::text
