#pragma once

// Reference-based quality metrics. Every candidate is scored against the whole
// reference pool: BLEU clips against the per-n-gram maximum over the pool,
// GLEU and chrF take the best-matching reference per candidate.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "lmfp/core/error.hpp"

namespace lmfp::textstats {

using TokenList = std::vector<std::string>;

struct QualityScores {
    double bleu = 0.0;
    double gleu = 0.0;
    double chrf = 0.0;
    std::size_t skipped = 0;  // empty candidates
};

inline constexpr double kBleuEpsilon = 1e-9;
inline constexpr int kBleuOrder = 4;
inline constexpr int kGleuOrder = 4;
inline constexpr int kChrOrder = 6;
inline constexpr double kChrBeta = 2.0;

using NgramCounts = std::unordered_map<std::string, int>;

inline NgramCounts word_ngrams(const TokenList& toks, int n) {
    NgramCounts out;
    if (static_cast<int>(toks.size()) < n) return out;
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= toks.size(); ++i) {
        std::string key = toks[i];
        for (int k = 1; k < n; ++k) {
            key += '\x1f';
            key += toks[i + static_cast<std::size_t>(k)];
        }
        ++out[key];
    }
    return out;
}

inline NgramCounts char_ngrams(const std::string& s, int n) {
    NgramCounts out;
    if (static_cast<int>(s.size()) < n) return out;
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= s.size(); ++i) ++out[s.substr(i, static_cast<std::size_t>(n))];
    return out;
}

inline int total_count(const NgramCounts& c) {
    int t = 0;
    for (const auto& [k, v] : c) t += v;
    return t;
}

inline int overlap_count(const NgramCounts& cand, const NgramCounts& ref) {
    int m = 0;
    for (const auto& [k, v] : cand) {
        auto it = ref.find(k);
        if (it != ref.end()) m += std::min(v, it->second);
    }
    return m;
}

/// Corpus BLEU-4, uniform weights, brevity penalty against the closest
/// reference length. Zero clipped counts are replaced by epsilon; orders with
/// no candidate n-grams at all use epsilon / 1.
inline double corpus_bleu(const std::vector<TokenList>& candidates, const std::vector<TokenList>& references) {
    std::vector<NgramCounts> max_ref(kBleuOrder);
    for (const auto& ref : references)
        for (int n = 1; n <= kBleuOrder; ++n)
            for (const auto& [k, v] : word_ngrams(ref, n)) {
                auto& slot = max_ref[static_cast<std::size_t>(n - 1)][k];
                slot = std::max(slot, v);
            }
    std::vector<double> clipped(kBleuOrder, 0.0), total(kBleuOrder, 0.0);
    double cand_len = 0.0, ref_len = 0.0;
    for (const auto& cand : candidates) {
        if (cand.empty()) continue;
        const auto c = static_cast<long>(cand.size());
        long best = -1;
        for (const auto& ref : references) {
            const auto r = static_cast<long>(ref.size());
            if (best < 0 || std::labs(r - c) < std::labs(best - c) || (std::labs(r - c) == std::labs(best - c) && r < best))
                best = r;
        }
        cand_len += static_cast<double>(c);
        ref_len += static_cast<double>(std::max(best, 0L));
        for (int n = 1; n <= kBleuOrder; ++n) {
            const auto counts = word_ngrams(cand, n);
            clipped[static_cast<std::size_t>(n - 1)] += overlap_count(counts, max_ref[static_cast<std::size_t>(n - 1)]);
            total[static_cast<std::size_t>(n - 1)] += total_count(counts);
        }
    }
    if (cand_len == 0.0) return 0.0;
    double log_p = 0.0;
    for (int n = 0; n < kBleuOrder; ++n) {
        const double num = clipped[static_cast<std::size_t>(n)] > 0.0 ? clipped[static_cast<std::size_t>(n)] : kBleuEpsilon;
        const double den = std::max(total[static_cast<std::size_t>(n)], 1.0);
        log_p += std::log(num / den) / kBleuOrder;
    }
    const double bp = cand_len >= ref_len ? 1.0 : std::exp(1.0 - ref_len / cand_len);
    return bp * std::exp(log_p);
}

/// Sentence GLEU: min(precision, recall) over pooled 1..4-gram matches.
inline double sentence_gleu(const TokenList& cand, const TokenList& ref) {
    int match = 0, cand_total = 0, ref_total = 0;
    for (int n = 1; n <= kGleuOrder; ++n) {
        const auto c = word_ngrams(cand, n);
        const auto r = word_ngrams(ref, n);
        match += overlap_count(c, r);
        cand_total += total_count(c);
        ref_total += total_count(r);
    }
    if (cand_total == 0 || ref_total == 0) return 0.0;
    return std::min(static_cast<double>(match) / cand_total, static_cast<double>(match) / ref_total);
}

/// Sentence chrF (n = 1..6, beta = 2). Whitespace is removed; precision and
/// recall are averaged over the orders where both strings have n-grams.
inline double sentence_chrf(const TokenList& cand, const TokenList& ref) {
    std::string hs, rs;
    for (const auto& t : cand) hs += t;
    for (const auto& t : ref) rs += t;
    double p_sum = 0.0, r_sum = 0.0;
    int orders = 0;
    for (int n = 1; n <= kChrOrder; ++n) {
        const auto h = char_ngrams(hs, n);
        const auto r = char_ngrams(rs, n);
        const int ht = total_count(h), rt = total_count(r);
        if (ht == 0 || rt == 0) continue;
        const int m = overlap_count(h, r);
        p_sum += static_cast<double>(m) / ht;
        r_sum += static_cast<double>(m) / rt;
        ++orders;
    }
    if (orders == 0) return 0.0;
    const double p = p_sum / orders, r = r_sum / orders;
    if (p == 0.0 && r == 0.0) return 0.0;
    const double b2 = kChrBeta * kChrBeta;
    return (1.0 + b2) * p * r / (b2 * p + r);
}

inline QualityScores quality_scores(const std::vector<TokenList>& candidates, const std::vector<TokenList>& references) {
    if (candidates.empty() || references.empty()) throw InvalidArgument("quality_scores: empty candidates or references");
    QualityScores q;
    double gleu_sum = 0.0, chrf_sum = 0.0;
    std::size_t scored = 0;
    for (const auto& cand : candidates) {
        if (cand.empty()) {
            ++q.skipped;
            continue;
        }
        double g = 0.0, c = 0.0;
        for (const auto& ref : references) {
            g = std::max(g, sentence_gleu(cand, ref));
            c = std::max(c, sentence_chrf(cand, ref));
        }
        gleu_sum += g;
        chrf_sum += c;
        ++scored;
    }
    if (scored == 0) return q;
    q.bleu = corpus_bleu(candidates, references);
    q.gleu = gleu_sum / static_cast<double>(scored);
    q.chrf = chrf_sum / static_cast<double>(scored);
    return q;
}

}  // namespace lmfp::textstats
