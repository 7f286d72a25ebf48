#pragma once

// Text normalization: raw submission text -> deterministic token stream.
//
// Pipeline (in order): targeted Latin composition, lowercase, optional
// diacritic folding, split on non-alphanumeric runs, stop-word removal,
// minimum-length filter, optional light suffix stemming. The stop-word and
// length filters are re-applied after stemming so that normalization is
// idempotent at the token level (a stem that collapses onto a stop word,
// e.g. "paras" -> "para", is dropped rather than left to disappear on a
// second pass).

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "cohort_audit/stopwords.hpp"
#include "cohort_audit/unicode.hpp"

namespace cohort_audit {

struct TextPrepConfig {
    bool fold_diacritics = true;
    bool stemming = true;
    bool use_bundled_stopwords = true;
    // Extra stop words (e.g. loaded from an override file). When
    // use_bundled_stopwords is false these are the whole inventory.
    std::vector<std::string> extra_stopwords;
};

struct TokenStream {
    std::vector<std::string> tokens;

    bool empty() const { return tokens.empty(); }
    std::size_t size() const { return tokens.size(); }
};

inline std::size_t codepoint_length(std::string_view s) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < s.size(); ++n) utf8_next(s, i);
    return n;
}

// Light Spanish suffix stemmer: strips plural/gender suffixes (-es, -s,
// -a, -o) while the token stays longer than 4 characters, so inflected
// forms like "efectivos"/"efectivas"/"efectivo"/"efectiva" share a stem.
inline std::string stem_token(std::string token) {
    for (;;) {
        if (codepoint_length(token) <= 4) return token;
        if (token.ends_with("es")) {
            token.erase(token.size() - 2);
            continue;
        }
        char last = token.back();
        if (last == 's' || last == 'a' || last == 'o') {
            token.pop_back();
            continue;
        }
        return token;
    }
}

// One token per non-empty line; '#' starts a comment line.
inline std::vector<std::string> load_stopword_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open stop-word file: " + path);
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t a = line.find_first_not_of(" \t");
        if (a == std::string::npos || line[a] == '#') continue;
        std::size_t b = line.find_last_not_of(" \t");
        words.push_back(line.substr(a, b - a + 1));
    }
    return words;
}

// Stop-word set normalized with the same fold the tokenizer applies, so
// "también" matches whether or not diacritics are folded.
inline std::unordered_set<std::string> build_stopword_set(const TextPrepConfig& config) {
    std::unordered_set<std::string> set;
    const auto add = [&](std::string_view w) {
        set.insert(fold_string(w, config.fold_diacritics));
    };
    if (config.use_bundled_stopwords) {
        for (auto w : kSpanishStopwords) add(w);
        for (auto w : kEnglishStopwords) add(w);
    }
    for (const auto& w : config.extra_stopwords) add(w);
    return set;
}

namespace detail {

inline void normalize_into(std::string_view text, const TextPrepConfig& config,
                           const std::unordered_set<std::string>& stopwords,
                           std::vector<std::string>& out) {
    const std::string folded = fold_string(text, config.fold_diacritics);
    std::string current;
    const auto flush = [&] {
        if (current.empty()) return;
        std::string token = std::move(current);
        current.clear();
        if (codepoint_length(token) < 2 || stopwords.count(token)) return;
        if (config.stemming) {
            token = stem_token(std::move(token));
            if (codepoint_length(token) < 2 || stopwords.count(token)) return;
        }
        out.push_back(std::move(token));
    };
    std::size_t i = 0;
    while (i < folded.size()) {
        std::size_t at = i;
        char32_t cp = utf8_next(folded, i);
        if (is_word_char(cp)) {
            current.append(folded, at, i - at);
        } else {
            flush();
        }
    }
    flush();
}

}  // namespace detail

inline TokenStream normalize(std::string_view text, const TextPrepConfig& config,
                             const std::unordered_set<std::string>& stopwords) {
    TokenStream stream;
    detail::normalize_into(text, config, stopwords, stream.tokens);
    return stream;
}

inline TokenStream normalize(std::string_view text, const TextPrepConfig& config = {}) {
    return normalize(text, config, build_stopword_set(config));
}

}  // namespace cohort_audit
