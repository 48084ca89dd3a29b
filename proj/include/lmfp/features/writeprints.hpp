#pragma once

// Writeprints stylometric vector, 220 dimensions in a frozen layout:
//
//   [  0,  20)  lexical
//   [ 20, 120)  function-word relative frequencies (kFunctionWords order)
//   [120, 135)  POS unigram frequencies (kPosNames order)
//   [135, 185)  POS bigram frequencies, bigrams chosen by the context
//   [185, 215)  content-word frequencies, words chosen by the context
//   [215, 220)  idiosyncratic
//
// Lexical slots: 0 char count, 1 word count, 2 mean word length, 3 chars per
// word, 4 digit %, 5 uppercase %, 6 whitespace %, 7 special-char %, 8 short
// word % (< 4 chars), 9 words per sentence, 10 distinct/total tokens, 11 hapax
// fraction of distinct tokens, 12 punctuation tokens per token, 13..19
// character-class frequencies (vowels, frequent consonants "tnshrdl", other
// consonants, apostrophe/hyphen, brackets/quotes, sentence terminators,
// non-ASCII code points).
//
// Idiosyncratic slots: 215 misspelling % of alphabetic tokens, 216 runs of
// three or more identical characters, 217 all-caps tokens, 218 digit tokens,
// 219 symbol/emoji tokens.

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lmfp/core/io.hpp"
#include "lmfp/corpus/corpus.hpp"
#include "lmfp/features/pos_tagger.hpp"
#include "lmfp/features/wordlists.hpp"

namespace lmfp::features {

inline constexpr std::size_t kWriteprintsDim = 220;
inline constexpr std::size_t kLexicalDim = 20;
inline constexpr std::size_t kFunctionDim = 100;
inline constexpr std::size_t kPosUnigramDim = kPosCount;
inline constexpr std::size_t kPosBigramDim = 50;
inline constexpr std::size_t kContentDim = 30;
inline constexpr std::size_t kIdioDim = 5;

inline constexpr std::size_t kFunctionOffset = kLexicalDim;
inline constexpr std::size_t kPosUnigramOffset = kFunctionOffset + kFunctionDim;
inline constexpr std::size_t kPosBigramOffset = kPosUnigramOffset + kPosUnigramDim;
inline constexpr std::size_t kContentOffset = kPosBigramOffset + kPosBigramDim;
inline constexpr std::size_t kIdioOffset = kContentOffset + kContentDim;
static_assert(kIdioOffset + kIdioDim == kWriteprintsDim);

using WriteprintsVector = std::array<double, kWriteprintsDim>;

/// Corpus-dependent slots. Unfilled slots are absent and always produce 0.
struct WriteprintsContext {
    std::vector<std::string> content_words;  // at most 30
    std::vector<int> pos_bigrams;            // at most 50, codes from pos_bigram_code

    bool operator==(const WriteprintsContext&) const = default;

    [[nodiscard]] json to_json() const {
        json j;
        j["format"] = "lmfp-writeprints-context";
        j["version"] = 1;
        j["wordlist_version"] = kWordListVersion;
        j["content_words"] = content_words;
        j["pos_bigrams"] = pos_bigrams;
        json names = json::array();
        for (int code : pos_bigrams) names.push_back(pos_bigram_name(code));
        j["pos_bigram_names"] = names;
        return j;
    }

    static WriteprintsContext from_json(const json& j) {
        if (j.value("format", "") != "lmfp-writeprints-context") throw Error("not a writeprints context file");
        WriteprintsContext ctx;
        ctx.content_words = j.at("content_words").get<std::vector<std::string>>();
        ctx.pos_bigrams = j.at("pos_bigrams").get<std::vector<int>>();
        if (ctx.content_words.size() > kContentDim || ctx.pos_bigrams.size() > kPosBigramDim)
            throw Error("writeprints context has too many slots");
        return ctx;
    }
};

/// Alphabetic token (letters plus interior apostrophes/hyphens) that is not a
/// function word.
inline bool is_content_word(const std::string& tok) {
    bool alpha = false;
    for (char c : tok) {
        if (std::isalpha(static_cast<unsigned char>(c)))
            alpha = true;
        else if (c != '\'' && c != '-')
            return false;
    }
    return alpha && function_word_index(tok) < 0;
}

namespace detail {

template <typename Key>
std::vector<Key> top_by_count(const std::map<Key, std::size_t>& counts, std::size_t k) {
    std::vector<std::pair<Key, std::size_t>> v(counts.begin(), counts.end());
    // map order supplies the lexicographic tie-break; stable sort keeps it.
    std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    std::vector<Key> out;
    for (std::size_t i = 0; i < v.size() && i < k; ++i) out.push_back(v[i].first);
    return out;
}

}  // namespace detail

inline WriteprintsContext fit_writeprints_context(const LabeledDataset& train) {
    if (train.comments.empty()) throw InvalidArgument("fit_writeprints_context: empty training set");
    std::map<std::string, std::size_t> words;
    std::map<int, std::size_t> bigrams;
    for (const auto& c : train.comments) {
        for (const auto& t : c.tokens)
            if (is_content_word(t)) ++words[t];
        const auto tags = tag(c.tokens);
        for (std::size_t i = 0; i + 1 < tags.size(); ++i) ++bigrams[pos_bigram_code(tags[i], tags[i + 1])];
    }
    return {detail::top_by_count(words, kContentDim), detail::top_by_count(bigrams, kPosBigramDim)};
}

namespace detail {

/// Decodes one UTF-8 lead byte position; returns code point length.
inline std::size_t utf8_len(unsigned char c) {
    if (c < 0x80) return 1;
    if ((c >> 5) == 0x6) return 2;
    if ((c >> 4) == 0xe) return 3;
    if ((c >> 3) == 0x1e) return 4;
    return 1;
}

inline bool is_symbol_token(const std::string& tok) {
    if (tok == kLinkToken) return false;
    for (char c : tok)
        if (is_ascii_alnum(c)) return false;
    // Pure ASCII sentence/clause punctuation is not a symbol.
    static constexpr std::string_view kPlainPunct = ".,;:!?'\"()[]{}-";
    for (char c : tok)
        if (kPlainPunct.find(c) == std::string_view::npos) return true;
    return false;
}

inline double pct(double part, double whole) { return whole > 0.0 ? 100.0 * part / whole : 0.0; }
inline double ratio(double part, double whole) { return whole > 0.0 ? part / whole : 0.0; }

}  // namespace detail

inline WriteprintsVector writeprints(const TokenizedComment& comment, const WriteprintsContext& ctx) {
    using detail::pct;
    using detail::ratio;
    WriteprintsVector v{};
    const std::string& raw = comment.raw;
    const auto& toks = comment.tokens;
    const double n_tok = static_cast<double>(toks.size());

    // Character classes over code points of the raw text.
    double chars = 0, digits = 0, upper = 0, space = 0, special = 0;
    double vowels = 0, freq_cons = 0, other_cons = 0, apos_hyph = 0, brackets = 0, terminators = 0, non_ascii = 0;
    std::size_t runs = 0, run_len = 0;
    std::size_t prev_cp_start = std::string::npos;
    for (std::size_t i = 0; i < raw.size();) {
        const auto c = static_cast<unsigned char>(raw[i]);
        const std::size_t len = std::min(detail::utf8_len(c), raw.size() - i);
        ++chars;
        if (len > 1 || c >= 0x80) {
            ++non_ascii;
            ++special;
        } else if (std::isdigit(c)) {
            ++digits;
        } else if (std::isspace(c)) {
            ++space;
        } else if (std::isalpha(c)) {
            if (std::isupper(c)) ++upper;
            const char l = static_cast<char>(std::tolower(c));
            if (std::string_view("aeiou").find(l) != std::string_view::npos)
                ++vowels;
            else if (std::string_view("tnshrdl").find(l) != std::string_view::npos)
                ++freq_cons;
            else
                ++other_cons;
        } else {
            ++special;
            if (c == '\'' || c == '-')
                ++apos_hyph;
            else if (std::string_view("()[]{}\"<>").find(static_cast<char>(c)) != std::string_view::npos)
                ++brackets;
            else if (c == '.' || c == '!' || c == '?')
                ++terminators;
        }
        const bool same = prev_cp_start != std::string::npos && raw.compare(prev_cp_start, i - prev_cp_start, raw, i, len) == 0 &&
                          i - prev_cp_start == len;
        run_len = same ? run_len + 1 : 1;
        if (run_len == 3) ++runs;
        prev_cp_start = i;
        i += len;
    }

    double words = 0, word_chars = 0, short_words = 0, punct_tokens = 0;
    std::unordered_map<std::string, std::size_t> freq;
    for (const auto& t : toks) {
        ++freq[t];
        if (is_punct_token(t)) ++punct_tokens;
        if (is_word_token(t)) {
            ++words;
            word_chars += static_cast<double>(t.size());
            if (t.size() < 4) ++short_words;
        }
    }
    double hapax = 0;
    for (const auto& [t, n] : freq)
        if (n == 1) ++hapax;

    v[0] = chars;
    v[1] = words;
    v[2] = ratio(word_chars, words);
    v[3] = ratio(chars, words);
    v[4] = pct(digits, chars);
    v[5] = pct(upper, chars);
    v[6] = pct(space, chars);
    v[7] = pct(special, chars);
    v[8] = pct(short_words, words);
    v[9] = words / static_cast<double>(count_sentences(raw));
    v[10] = ratio(static_cast<double>(freq.size()), n_tok);
    v[11] = ratio(hapax, static_cast<double>(freq.size()));
    v[12] = ratio(punct_tokens, n_tok);
    const std::array<double, 7> classes{vowels, freq_cons, other_cons, apos_hyph, brackets, terminators, non_ascii};
    for (std::size_t k = 0; k < classes.size(); ++k) v[13 + k] = ratio(classes[k], chars);

    for (const auto& [t, n] : freq) {
        const int idx = function_word_index(t);
        if (idx >= 0) v[kFunctionOffset + static_cast<std::size_t>(idx)] = ratio(static_cast<double>(n), n_tok);
    }

    const auto tags = tag(toks);
    for (auto p : tags) v[kPosUnigramOffset + static_cast<std::size_t>(p)] += 1.0;
    for (std::size_t k = 0; k < kPosUnigramDim; ++k) v[kPosUnigramOffset + k] = ratio(v[kPosUnigramOffset + k], n_tok);

    if (tags.size() >= 2) {
        std::unordered_map<int, std::size_t> bg;
        for (std::size_t i = 0; i + 1 < tags.size(); ++i) ++bg[pos_bigram_code(tags[i], tags[i + 1])];
        for (std::size_t k = 0; k < ctx.pos_bigrams.size(); ++k) {
            auto it = bg.find(ctx.pos_bigrams[k]);
            if (it != bg.end()) v[kPosBigramOffset + k] = static_cast<double>(it->second) / static_cast<double>(tags.size() - 1);
        }
    }

    for (std::size_t k = 0; k < ctx.content_words.size(); ++k) {
        auto it = freq.find(ctx.content_words[k]);
        if (it != freq.end()) v[kContentOffset + k] = ratio(static_cast<double>(it->second), n_tok);
    }

    double alpha_tokens = 0, misspelled = 0, digit_tokens = 0, symbol_tokens = 0;
    for (const auto& t : toks) {
        bool alpha = !t.empty(), has_digit = false;
        for (char c : t) {
            alpha = alpha && (std::isalpha(static_cast<unsigned char>(c)) || c == '\'' || c == '-');
            has_digit = has_digit || std::isdigit(static_cast<unsigned char>(c));
        }
        if (alpha) {
            ++alpha_tokens;
            if (!in_dictionary(t)) ++misspelled;
        }
        if (has_digit) ++digit_tokens;
        if (detail::is_symbol_token(t)) ++symbol_tokens;
    }
    double all_caps = 0;
    for (const auto& t : tokenize_cased(raw)) {
        int letters = 0;
        bool lower = false;
        for (char c : t) {
            if (std::isalpha(static_cast<unsigned char>(c))) ++letters;
            if (std::islower(static_cast<unsigned char>(c))) lower = true;
        }
        if (letters >= 2 && !lower && t != kLinkToken) ++all_caps;
    }
    v[kIdioOffset + 0] = pct(misspelled, alpha_tokens);
    v[kIdioOffset + 1] = static_cast<double>(runs);
    v[kIdioOffset + 2] = all_caps;
    v[kIdioOffset + 3] = digit_tokens;
    v[kIdioOffset + 4] = symbol_tokens;
    return v;
}

/// Human-readable column names in layout order.
inline std::vector<std::string> writeprints_names(const WriteprintsContext& ctx) {
    std::vector<std::string> n{"chars",        "words",        "mean_word_len", "chars_per_word", "digit_pct",
                               "upper_pct",    "space_pct",    "special_pct",   "short_word_pct", "words_per_sentence",
                               "richness",     "hapax_frac",   "punct_per_token", "cc_vowel",     "cc_freq_consonant",
                               "cc_other_consonant", "cc_apos_hyphen", "cc_bracket_quote", "cc_terminator", "cc_non_ascii"};
    for (auto w : kFunctionWords) n.push_back("fw_" + std::string(w));
    for (auto p : kPosNames) n.push_back("pos_" + std::string(p));
    for (std::size_t k = 0; k < kPosBigramDim; ++k)
        n.push_back(k < ctx.pos_bigrams.size() ? "posbg_" + pos_bigram_name(ctx.pos_bigrams[k]) : "posbg_absent_" + std::to_string(k));
    for (std::size_t k = 0; k < kContentDim; ++k)
        n.push_back(k < ctx.content_words.size() ? "cw_" + ctx.content_words[k] : "cw_absent_" + std::to_string(k));
    for (auto s : {"misspell_pct", "char_runs", "all_caps_tokens", "digit_tokens", "symbol_tokens"}) n.emplace_back(s);
    return n;
}

}  // namespace lmfp::features
