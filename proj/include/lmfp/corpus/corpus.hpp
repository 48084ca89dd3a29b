#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "lmfp/core/error.hpp"
#include "lmfp/core/io.hpp"
#include "lmfp/core/random.hpp"
#include "lmfp/corpus/tokenizer.hpp"

namespace lmfp {

inline constexpr std::size_t kMinTokens = 6;
inline constexpr std::size_t kMaxTokens = 75;

struct Comment {
    std::string id;
    std::string class_label;
    std::string text;

    bool operator==(const Comment&) const = default;
};

/// A comment that survived preprocessing. `raw` keeps the original text for
/// case- and sentence-based statistics.
struct TokenizedComment {
    std::string id;
    std::string class_label;
    std::vector<std::string> tokens;
    std::string raw;

    bool operator==(const TokenizedComment&) const = default;
};

struct Rejected {
    std::string id;
    std::string reason;
};

struct LabeledDataset {
    std::vector<TokenizedComment> comments;
    std::vector<std::string> classes;  // sorted; index is the class id

    [[nodiscard]] std::size_t class_index(const std::string& label) const {
        auto it = std::lower_bound(classes.begin(), classes.end(), label);
        if (it == classes.end() || *it != label) throw InvalidArgument("unknown class '" + label + "'");
        return static_cast<std::size_t>(it - classes.begin());
    }

    [[nodiscard]] std::vector<std::size_t> labels() const {
        std::vector<std::size_t> y;
        y.reserve(comments.size());
        for (const auto& c : comments) y.push_back(class_index(c.class_label));
        return y;
    }

    [[nodiscard]] std::size_t size() const { return comments.size(); }
};

struct SplitSpec {
    std::size_t train_per_class = 800;
    std::size_t val_per_class = 100;
    std::size_t test_per_class = 200;
    std::uint64_t seed = 0;
};

struct Splits {
    LabeledDataset train;
    LabeledDataset val;
    LabeledDataset test;
};

/// Reads `{"id", "class", "text"}` lines. Rejects malformed lines and
/// duplicate ids.
inline std::vector<Comment> load_corpus(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw Error("corpus file not found: " + path.string());
    std::vector<Comment> out;
    std::unordered_set<std::string> seen;
    const std::string src = path.string();
    for_each_jsonl(path, [&](std::size_t line, const json& obj) {
        Comment c{require_field(obj, "id", json::value_t::string, src, line).get<std::string>(),
                  require_field(obj, "class", json::value_t::string, src, line).get<std::string>(),
                  require_field(obj, "text", json::value_t::string, src, line).get<std::string>()};
        if (c.id.empty()) throw ParseError(src, line, "empty id");
        if (c.class_label.empty()) throw ParseError(src, line, "empty class");
        if (!seen.insert(c.id).second) throw ParseError(src, line, "duplicate id '" + c.id + "'");
        out.push_back(std::move(c));
    });
    return out;
}

inline std::string corpus_to_jsonl(const std::vector<Comment>& comments) {
    std::string out;
    for (const auto& c : comments) {
        json j;
        j["id"] = c.id;
        j["class"] = c.class_label;
        j["text"] = c.text;
        out += j.dump();
        out += '\n';
    }
    return out;
}

inline std::variant<TokenizedComment, Rejected> preprocess(const Comment& comment) {
    auto tokens = tokenize(comment.text);
    if (tokens.size() < kMinTokens)
        return Rejected{comment.id, "too short: " + std::to_string(tokens.size()) + " tokens"};
    if (tokens.size() > kMaxTokens) tokens.resize(kMaxTokens);
    return TokenizedComment{comment.id, comment.class_label, std::move(tokens), comment.text};
}

struct PreprocessResult {
    LabeledDataset dataset;
    std::vector<Rejected> rejected;
};

/// Preprocesses every comment and assembles a dataset with sorted classes.
inline PreprocessResult build_dataset(const std::vector<Comment>& comments) {
    PreprocessResult result;
    std::vector<std::string> classes;
    for (const auto& c : comments) {
        auto r = preprocess(c);
        if (auto* tc = std::get_if<TokenizedComment>(&r)) {
            classes.push_back(tc->class_label);
            result.dataset.comments.push_back(std::move(*tc));
        } else {
            result.rejected.push_back(std::get<Rejected>(std::move(r)));
        }
    }
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    result.dataset.classes = std::move(classes);
    return result;
}

/// Restricts a dataset to a subset of its classes, keeping comment order.
inline LabeledDataset restrict_classes(const LabeledDataset& ds, std::vector<std::string> keep) {
    std::sort(keep.begin(), keep.end());
    LabeledDataset out;
    out.classes = keep;
    for (const auto& c : ds.comments)
        if (std::binary_search(keep.begin(), keep.end(), c.class_label)) out.comments.push_back(c);
    return out;
}

/// Seeded per-class shuffle followed by a train/val/test cut.
inline Splits split(const LabeledDataset& ds, const SplitSpec& spec) {
    if (spec.train_per_class == 0 || spec.val_per_class == 0 || spec.test_per_class == 0)
        throw InvalidArgument("split counts must all be >= 1");
    const std::size_t need = spec.train_per_class + spec.val_per_class + spec.test_per_class;

    std::vector<std::vector<std::size_t>> by_class(ds.classes.size());
    for (std::size_t i = 0; i < ds.comments.size(); ++i)
        by_class[ds.class_index(ds.comments[i].class_label)].push_back(i);

    Splits out;
    out.train.classes = out.val.classes = out.test.classes = ds.classes;
    for (std::size_t c = 0; c < by_class.size(); ++c) {
        auto& members = by_class[c];
        if (members.size() < need)
            throw InvalidArgument("class '" + ds.classes[c] + "' has " + std::to_string(members.size()) +
                                  " comments, split needs " + std::to_string(need));
        Rng rng(derive_seed(spec.seed, c));
        rng.shuffle(members);
        for (std::size_t k = 0; k < need; ++k) {
            const auto& cm = ds.comments[members[k]];
            if (k < spec.train_per_class)
                out.train.comments.push_back(cm);
            else if (k < spec.train_per_class + spec.val_per_class)
                out.val.comments.push_back(cm);
            else
                out.test.comments.push_back(cm);
        }
    }
    return out;
}

/// Per-class subsample of `per_class` comments drawn by seeded shuffle. The
/// selection keeps original order, so taking every comment returns `ds`.
inline LabeledDataset subsample_per_class(const LabeledDataset& ds, std::size_t per_class, std::uint64_t seed) {
    std::vector<std::vector<std::size_t>> by_class(ds.classes.size());
    for (std::size_t i = 0; i < ds.comments.size(); ++i)
        by_class[ds.class_index(ds.comments[i].class_label)].push_back(i);
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < by_class.size(); ++c) {
        auto members = by_class[c];
        if (members.size() < per_class)
            throw InvalidArgument("class '" + ds.classes[c] + "' has " + std::to_string(members.size()) +
                                  " training comments, requested " + std::to_string(per_class));
        Rng rng(derive_seed(seed, c));
        rng.shuffle(members);
        keep.insert(keep.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(per_class));
    }
    std::sort(keep.begin(), keep.end());
    LabeledDataset out;
    out.classes = ds.classes;
    for (auto i : keep) out.comments.push_back(ds.comments[i]);
    return out;
}

}  // namespace lmfp
