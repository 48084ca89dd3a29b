#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "lmfp/pipeline/pipeline.hpp"

namespace lmfp::eval {

struct SweepRow {
    std::size_t value = 0;  // per-class training size or class count
    std::vector<std::string> classes;
    PrfReport prf;
    std::map<std::size_t, double> topk;
};

struct SweepTable {
    std::string kind;  // "train-size" or "class-count"
    std::vector<SweepRow> rows;
};

/// Retrains on seeded per-class subsamples of the training split; validation
/// and test splits stay fixed. A size equal to the full training split
/// reproduces run_pipeline on `splits`.
inline SweepTable learning_curve(const pipeline::PipelineSpec& spec, const Splits& splits, const std::vector<std::size_t>& sizes,
                                 const pipeline::Resources& res) {
    SweepTable t{"train-size", {}};
    for (auto size : sizes) {
        if (size == 0) throw InvalidArgument("learning_curve: size must be >= 1");
        Splits sub = splits;
        sub.train = subsample_per_class(splits.train, size, derive_seed(spec.seed, 0x1c00 + size));
        auto r = pipeline::run_pipeline(spec, sub, res);
        t.rows.push_back({size, splits.train.classes, std::move(r.report.prf), std::move(r.report.topk)});
    }
    return t;
}

/// Picks `n` classes by seeded shuffle, returned in sorted order. Asking for
/// every class returns them all without consuming randomness.
inline std::vector<std::string> choose_classes(const std::vector<std::string>& classes, std::size_t n, std::uint64_t seed) {
    if (n > classes.size())
        throw InvalidArgument("class count " + std::to_string(n) + " exceeds the " + std::to_string(classes.size()) + " available classes");
    if (n < 2) throw InvalidArgument("class count must be >= 2");
    if (n == classes.size()) return classes;
    auto pool = classes;
    Rng rng(derive_seed(seed, n));
    rng.shuffle(pool);
    pool.resize(n);
    std::sort(pool.begin(), pool.end());
    return pool;
}

/// Restricts the full dataset to each chosen class subset, splits, retrains.
/// A count equal to every class reproduces run_pipeline on the whole dataset.
inline SweepTable class_sweep(const pipeline::PipelineSpec& spec, const LabeledDataset& ds, const SplitSpec& split_spec,
                              const std::vector<std::size_t>& counts, std::uint64_t seed, const pipeline::Resources& res) {
    SweepTable t{"class-count", {}};
    for (auto n : counts) {
        const auto keep = choose_classes(ds.classes, n, seed);
        const auto sub = restrict_classes(ds, keep);
        auto r = pipeline::run_pipeline(spec, split(sub, split_spec), res);
        t.rows.push_back({n, keep, std::move(r.report.prf), std::move(r.report.topk)});
    }
    return t;
}

inline json to_json(const SweepTable& t) {
    json rows = json::array();
    for (const auto& r : t.rows) {
        json topk = json::object();
        for (const auto& [k, v] : r.topk) topk[std::to_string(k)] = v;
        rows.push_back({{"value", r.value},
                        {"classes", r.classes},
                        {"macro_precision", r.prf.macro_precision},
                        {"macro_recall", r.prf.macro_recall},
                        {"micro_precision", r.prf.micro_precision},
                        {"micro_recall", r.prf.micro_recall},
                        {"topk", topk}});
    }
    return {{"kind", t.kind}, {"rows", rows}};
}

inline std::string to_csv(const SweepTable& t) {
    std::string out = (t.kind == "train-size" ? "per_class_size" : "n_classes");
    out += ",macro_precision,macro_recall,micro_precision,micro_recall\n";
    for (const auto& r : t.rows)
        out += std::to_string(r.value) + "," + fmt_double(r.prf.macro_precision) + "," + fmt_double(r.prf.macro_recall) + "," +
               fmt_double(r.prf.micro_precision) + "," + fmt_double(r.prf.micro_recall) + "\n";
    return out;
}

}  // namespace lmfp::eval
