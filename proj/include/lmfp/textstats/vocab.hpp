#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lmfp/corpus/tokenizer.hpp"

namespace lmfp::textstats {

struct VocabSet {
    std::string class_label;
    std::set<std::string> terms;

    [[nodiscard]] std::size_t size() const { return terms.size(); }
};

/// Rows indexed by family A, columns by family B.
struct OverlapMatrix {
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    std::vector<std::vector<double>> values;
};

/// Suffix stripping: -ing, -ed, -es, -s, -ly, first rule leaving a stem of
/// at least 3 characters wins.
inline std::string stem(std::string_view word) {
    static constexpr std::array<std::string_view, 5> kSuffixes{"ing", "ed", "es", "s", "ly"};
    for (auto suf : kSuffixes) {
        if (word.size() >= suf.size() + 3 && word.substr(word.size() - suf.size()) == suf)
            return std::string(word.substr(0, word.size() - suf.size()));
    }
    return std::string(word);
}

inline bool is_numeric_token(std::string_view tok) {
    bool digit = false;
    for (char c : tok) {
        if (std::isdigit(static_cast<unsigned char>(c)))
            digit = true;
        else if (c != '.' && c != ',')
            return false;
    }
    return digit;
}

/// Maps one preprocessed token to its vocabulary term. Returns empty for
/// tokens that are dropped (punctuation, emoji, symbols).
inline std::string normalize_term(std::string_view tok) {
    if (tok == kLinkToken) return std::string(kLinkToken);
    if (is_numeric_token(tok)) return std::string(kNumToken);
    bool has_alnum = false;
    for (char c : tok) has_alnum |= is_ascii_alnum(c);
    if (!has_alnum) return {};
    std::string cleaned;
    for (char c : tok)
        if (!is_ascii_punct(c)) cleaned += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return stem(cleaned);
}

inline void add_terms(VocabSet& v, std::string_view text) {
    for (const auto& t : tokenize(text)) {
        auto term = normalize_term(t);
        if (!term.empty()) v.terms.insert(std::move(term));
    }
}

inline VocabSet build_vocab(const std::string& class_label, const std::vector<std::string>& texts) {
    VocabSet v{class_label, {}};
    for (const auto& t : texts) add_terms(v, t);
    return v;
}

/// |A ∩ B| / |A ∪ B|, and 0 when both sets are empty.
inline double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() && b.empty()) return 0.0;
    std::size_t inter = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++inter;
            ++ia;
            ++ib;
        }
    }
    return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

inline OverlapMatrix jaccard_matrix(const std::vector<VocabSet>& family_a, const std::vector<VocabSet>& family_b) {
    OverlapMatrix m;
    for (const auto& v : family_a) m.row_labels.push_back(v.class_label);
    for (const auto& v : family_b) m.col_labels.push_back(v.class_label);
    m.values.assign(family_a.size(), std::vector<double>(family_b.size(), 0.0));
    for (std::size_t i = 0; i < family_a.size(); ++i)
        for (std::size_t j = 0; j < family_b.size(); ++j) m.values[i][j] = jaccard(family_a[i].terms, family_b[j].terms);
    return m;
}

}  // namespace lmfp::textstats
