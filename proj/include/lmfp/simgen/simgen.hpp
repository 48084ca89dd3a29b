#pragma once

// Class-conditional Markov text generator for desk-scale attribution corpora.
//
// Every class draws tokens from a blend of two sparse Markov chains:
//   P_c(next | ctx) = (1 - private_mix) * S(next | ctx) + private_mix * Q_c(next | ctx)
// S ranges over a shared vocabulary and is identical for every class; Q_c
// ranges over the class's own private words. Rows of S and Q_c are built on
// demand from a seed derived from (spec seed, class, context), so a model is
// a pure function of its spec. With private_mix = 0 all classes are the same
// source; raising it makes classes separable.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lmfp/core/io.hpp"
#include "lmfp/core/random.hpp"
#include "lmfp/corpus/corpus.hpp"

namespace lmfp::simgen {

struct SimSpec {
    std::size_t n_classes = 10;
    std::size_t shared_vocab_size = 1500;
    std::size_t private_vocab_size = 40;
    int order = 1;
    std::size_t comments_per_class = 1100;
    std::size_t min_length = 10;
    std::size_t max_length = 60;
    double private_mix = 0.5;
    std::size_t successors = 24;  // nonzero entries per shared transition row
    std::uint64_t seed = 42;

    void validate() const {
        if (n_classes == 0) throw InvalidArgument("simgen: n_classes must be >= 1");
        if (shared_vocab_size == 0) throw InvalidArgument("simgen: shared_vocab_size must be >= 1");
        if (order != 1 && order != 2) throw InvalidArgument("simgen: order must be 1 or 2");
        if (min_length < kMinTokens) throw InvalidArgument("simgen: min_length must be >= 6");
        if (max_length > 200 || max_length < min_length) throw InvalidArgument("simgen: need min_length <= max_length <= 200");
        if (!(private_mix >= 0.0 && private_mix <= 1.0)) throw InvalidArgument("simgen: private_mix must be in [0,1]");
        if (private_mix > 0.0 && private_vocab_size == 0) throw InvalidArgument("simgen: private_mix > 0 needs private words");
        if (successors == 0) throw InvalidArgument("simgen: successors must be >= 1");
    }

    [[nodiscard]] json to_json() const {
        return {{"n_classes", n_classes},
                {"shared_vocab_size", shared_vocab_size},
                {"private_vocab_size", private_vocab_size},
                {"order", order},
                {"comments_per_class", comments_per_class},
                {"length_distribution", {{"min", min_length}, {"max", max_length}}},
                {"private_mix", private_mix},
                {"successors", successors},
                {"seed", seed}};
    }

    static SimSpec from_json(const json& j) {
        SimSpec s;
        s.n_classes = j.value("n_classes", s.n_classes);
        s.shared_vocab_size = j.value("shared_vocab_size", s.shared_vocab_size);
        s.private_vocab_size = j.value("private_vocab_size", s.private_vocab_size);
        s.order = j.value("order", s.order);
        s.comments_per_class = j.value("comments_per_class", s.comments_per_class);
        if (j.contains("length_distribution")) {
            s.min_length = j["length_distribution"].value("min", s.min_length);
            s.max_length = j["length_distribution"].value("max", s.max_length);
        }
        s.private_mix = j.value("private_mix", s.private_mix);
        s.successors = j.value("successors", s.successors);
        s.seed = j.value("seed", s.seed);
        return s;
    }
};

/// Pronounceable lowercase pseudo-words, unique across calls on one instance.
class WordFactory {
public:
    explicit WordFactory(std::uint64_t seed) : rng_(seed) {}

    std::string next() {
        static constexpr std::string_view kOnsets[] = {"b", "c", "d", "f", "g", "h", "j", "k", "l", "m", "n", "p", "r", "s",
                                                       "t", "v", "w", "z", "br", "ch", "cl", "dr", "fl", "gr", "pl", "pr",
                                                       "sh", "sk", "sl", "sp", "st", "th", "tr"};
        static constexpr std::string_view kVowels[] = {"a", "e", "i", "o", "u", "ai", "ea", "ee", "io", "oo", "ou", "y"};
        static constexpr std::string_view kCodas[] = {"", "", "", "n", "r", "s", "t", "l", "m", "nd", "st", "ck", "ng"};
        static constexpr std::string_view kSuffixes[] = {"", "", "", "", "", "", "ing", "ed", "ly", "ous", "tion", "ness", "al", "er"};
        for (;;) {
            std::string w;
            const auto syllables = 1 + rng_.below(3);
            for (std::uint64_t s = 0; s < syllables; ++s) {
                w += kOnsets[rng_.below(std::size(kOnsets))];
                w += kVowels[rng_.below(std::size(kVowels))];
            }
            w += kCodas[rng_.below(std::size(kCodas))];
            w += kSuffixes[rng_.below(std::size(kSuffixes))];
            if (w.size() >= 2 && used_.insert(w).second) return w;
        }
    }

private:
    Rng rng_;
    std::set<std::string> used_;
};

/// Sparse transition row: candidate word ids and cumulative weights.
struct Row {
    std::vector<std::uint32_t> next;
    std::vector<double> weight;
    double total = 0.0;
};

class ClassModel {
public:
    std::string label;
    std::vector<std::uint32_t> private_ids;  // indices into MarkovModels::words

    [[nodiscard]] const std::vector<std::uint32_t>& vocabulary_support() const { return support_; }

private:
    friend class MarkovModels;
    std::vector<std::uint32_t> support_;
};

class MarkovModels {
public:
    static constexpr std::uint32_t kBos = 0xffffffffu;

    explicit MarkovModels(const SimSpec& spec) : spec_(spec) {
        spec.validate();
        WordFactory words(derive_seed(spec.seed, 0x5151));
        for (std::size_t i = 0; i < spec.shared_vocab_size; ++i) words_.push_back(words.next());
        // Shared-word popularity, drawn once; rows favour popular words.
        Rng pop(derive_seed(spec.seed, 0x7070));
        popularity_.resize(spec.shared_vocab_size);
        for (auto& p : popularity_) p = std::pow(pop.exponential(), 2.0);
        for (std::size_t c = 0; c < spec.n_classes; ++c) {
            ClassModel m;
            char buf[16];
            std::snprintf(buf, sizeof buf, "bot%02zu", c);
            m.label = spec.n_classes > 100 ? "bot" + std::to_string(1000 + c).substr(1) : buf;
            for (std::size_t k = 0; k < spec.private_vocab_size; ++k) {
                m.private_ids.push_back(static_cast<std::uint32_t>(words_.size()));
                words_.push_back(words.next());
            }
            if (spec.private_mix < 1.0)
                for (std::uint32_t i = 0; i < spec.shared_vocab_size; ++i) m.support_.push_back(i);
            if (spec.private_mix > 0.0) m.support_.insert(m.support_.end(), m.private_ids.begin(), m.private_ids.end());
            classes_.push_back(std::move(m));
        }
    }

    [[nodiscard]] const SimSpec& spec() const { return spec_; }
    [[nodiscard]] const std::vector<std::string>& words() const { return words_; }
    [[nodiscard]] const std::vector<ClassModel>& classes() const { return classes_; }

    /// Shared transition row for a context (previous one or two word ids).
    const Row& shared_row(std::uint64_t ctx) {
        auto it = shared_cache_.find(ctx);
        if (it != shared_cache_.end()) return it->second;
        Rng rng(derive_seed(spec_.seed, mix_seed(ctx) ^ 0x5a5a));
        Row r;
        const std::size_t V = spec_.shared_vocab_size;
        const std::size_t k = std::min(spec_.successors, V);
        // Sample k distinct successors proportional to popularity, then
        // weight them with skewed Dirichlet-like draws.
        std::vector<double> pool(popularity_);
        double pool_total = 0.0;
        for (double p : pool) pool_total += p;
        for (std::size_t s = 0; s < k; ++s) {
            const auto pick = rng.categorical(pool, pool_total);
            pool_total -= pool[pick];
            pool[pick] = 0.0;
            r.next.push_back(static_cast<std::uint32_t>(pick));
            r.weight.push_back(std::pow(rng.exponential(), 2.0));
            r.total += r.weight.back();
            if (pool_total <= 0.0) break;
        }
        return shared_cache_.emplace(ctx, std::move(r)).first->second;
    }

    /// Private transition row of class c for a context.
    const Row& private_row(std::size_t c, std::uint64_t ctx) {
        const std::uint64_t key = mix_seed(ctx) ^ mix_seed(c + 0x1234);
        auto it = private_cache_.find(key);
        if (it != private_cache_.end()) return it->second;
        Rng rng(derive_seed(derive_seed(spec_.seed, c + 1), mix_seed(ctx) ^ 0xa5a5));
        Row r;
        // Zipf-like base preference within the private vocabulary, jittered per row.
        for (std::size_t k = 0; k < classes_[c].private_ids.size(); ++k) {
            r.next.push_back(classes_[c].private_ids[k]);
            r.weight.push_back(rng.exponential() / static_cast<double>(k + 1));
            r.total += r.weight.back();
        }
        return private_cache_.emplace(key, std::move(r)).first->second;
    }

    /// Generates one comment's token list for class c.
    std::vector<std::string> sample_tokens(std::size_t c, Rng& rng) {
        const auto len = static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(spec_.min_length), static_cast<std::int64_t>(spec_.max_length)));
        std::vector<std::string> out;
        std::uint32_t prev1 = kBos, prev2 = kBos;
        for (std::size_t t = 0; t < len; ++t) {
            const std::uint64_t ctx = spec_.order == 1 ? std::uint64_t{prev1} : (std::uint64_t{prev2} << 32) | prev1;
            const bool use_private = spec_.private_mix > 0.0 && rng.uniform() < spec_.private_mix;
            const Row& row = use_private ? private_row(c, ctx) : shared_row(ctx);
            const auto id = row.next[rng.categorical(row.weight, row.total)];
            out.push_back(words_[id]);
            prev2 = prev1;
            prev1 = id;
        }
        return out;
    }

private:
    SimSpec spec_;
    std::vector<std::string> words_;
    std::vector<double> popularity_;
    std::vector<ClassModel> classes_;
    std::unordered_map<std::uint64_t, Row> shared_cache_;
    std::unordered_map<std::uint64_t, Row> private_cache_;
};

inline MarkovModels build_models(const SimSpec& spec) { return MarkovModels(spec); }

/// Renders tokens as text: sentences of 5..15 words, first letter capitalized,
/// closed with a period. Punctuation only adds tokens, so the comment still
/// survives preprocessing.
inline std::string render(const std::vector<std::string>& tokens, Rng& rng) {
    std::string text;
    std::size_t in_sentence = 0;
    std::size_t sentence_len = static_cast<std::size_t>(rng.between(5, 15));
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        std::string w = tokens[i];
        if (in_sentence == 0) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
        if (!text.empty()) text += ' ';
        text += w;
        ++in_sentence;
        if (in_sentence == sentence_len || i + 1 == tokens.size()) {
            text += '.';
            in_sentence = 0;
            sentence_len = static_cast<std::size_t>(rng.between(5, 15));
        }
    }
    return text;
}

/// comments_per_class comments per class, ids "{class}-{index}", class-major order.
inline std::vector<Comment> generate_corpus(MarkovModels& models) {
    const auto& spec = models.spec();
    std::vector<Comment> out;
    out.reserve(spec.n_classes * spec.comments_per_class);
    for (std::size_t c = 0; c < spec.n_classes; ++c) {
        Rng rng(derive_seed(spec.seed, 0x10000 + c));
        const auto& label = models.classes()[c].label;
        for (std::size_t i = 0; i < spec.comments_per_class; ++i) {
            const auto toks = models.sample_tokens(c, rng);
            out.push_back({label + "-" + std::to_string(i), label, render(toks, rng)});
        }
    }
    return out;
}

inline std::vector<Comment> generate_corpus(const SimSpec& spec) {
    auto models = build_models(spec);
    return generate_corpus(models);
}

}  // namespace lmfp::simgen
