#pragma once

#include <cctype>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "lmfp/core/error.hpp"
#include "lmfp/corpus/tokenizer.hpp"

namespace lmfp::textstats {

struct LexicalStats {
    double avg_words = 0.0;
    double sd_words = 0.0;
    double avg_sentences = 0.0;
    double sd_sentences = 0.0;
};

/// Number of word-like tokens in raw text (punctuation-only tokens excluded).
inline std::size_t count_words(std::string_view text) {
    std::size_t n = 0;
    for (const auto& t : tokenize(text))
        if (is_word_token(t)) ++n;
    return n;
}

namespace detail {

inline void mean_sd(const std::vector<double>& xs, double& mean, double& sd) {
    mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    sd = std::sqrt(ss / static_cast<double>(xs.size()));
}

}  // namespace detail

/// Words and sentences per comment over raw (untruncated) texts. Standard
/// deviations are population SDs.
inline LexicalStats lexical_profile(const std::vector<std::string>& texts) {
    if (texts.size() < 2) throw InvalidArgument("lexical_profile needs at least 2 comments");
    std::vector<double> words, sentences;
    words.reserve(texts.size());
    sentences.reserve(texts.size());
    for (const auto& t : texts) {
        words.push_back(static_cast<double>(count_words(t)));
        sentences.push_back(static_cast<double>(count_sentences(t)));
    }
    LexicalStats s;
    detail::mean_sd(words, s.avg_words, s.sd_words);
    detail::mean_sd(sentences, s.avg_sentences, s.sd_sentences);
    return s;
}

/// Vowel-group syllable heuristic with silent trailing 'e'.
inline int count_syllables(std::string_view token) {
    std::string w;
    for (char c : token)
        if (std::isalpha(static_cast<unsigned char>(c))) w += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (w.empty()) return 1;
    auto vowel = [](char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y'; };
    int groups = 0;
    bool prev = false;
    for (char c : w) {
        const bool v = vowel(c);
        if (v && !prev) ++groups;
        prev = v;
    }
    if (w.back() == 'e') {
        const bool consonant_le = w.size() >= 3 && w[w.size() - 2] == 'l' && !vowel(w[w.size() - 3]);
        if (!consonant_le) --groups;
    }
    return groups < 1 ? 1 : groups;
}

/// Flesch-Kincaid grade level of a raw text.
inline double readability(std::string_view text) {
    std::size_t words = 0;
    std::size_t syllables = 0;
    for (const auto& t : tokenize(text)) {
        if (!is_word_token(t)) continue;
        ++words;
        syllables += static_cast<std::size_t>(count_syllables(t));
    }
    if (words == 0) throw InvalidArgument("readability of a text with no words");
    const double sentences = static_cast<double>(count_sentences(text));
    const double w = static_cast<double>(words);
    return 0.39 * (w / sentences) + 11.8 * (static_cast<double>(syllables) / w) - 15.59;
}

}  // namespace lmfp::textstats
