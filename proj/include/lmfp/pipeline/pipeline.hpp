#pragma once

// Corpus to report in one call: featurize, scale, train, evaluate.

#include <algorithm>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lmfp/classifiers/model.hpp"
#include "lmfp/corpus/corpus.hpp"
#include "lmfp/eval/metrics.hpp"
#include "lmfp/features/embeddings.hpp"
#include "lmfp/features/feature_set.hpp"
#include "lmfp/features/glove.hpp"
#include "lmfp/features/gltr.hpp"
#include "lmfp/features/scaler.hpp"
#include "lmfp/features/writeprints.hpp"

namespace lmfp::pipeline {

enum class FeatureKind { Writeprints, Gltr, Glove, Embedding };

inline std::string to_string(FeatureKind k) {
    switch (k) {
        case FeatureKind::Writeprints: return "writeprints";
        case FeatureKind::Gltr: return "gltr";
        case FeatureKind::Glove: return "glove";
        case FeatureKind::Embedding: return "embedding";
    }
    return "?";
}

inline FeatureKind parse_feature_kind(const std::string& s) {
    if (s == "writeprints") return FeatureKind::Writeprints;
    if (s == "gltr") return FeatureKind::Gltr;
    if (s == "glove") return FeatureKind::Glove;
    if (s == "embedding") return FeatureKind::Embedding;
    throw InvalidArgument("unknown feature kind '" + s + "' (expected writeprints, gltr, glove, embedding)");
}

/// Externally produced inputs some feature kinds need.
struct Resources {
    std::optional<features::LikelihoodTable> likelihoods;
    std::optional<features::GloveTable> glove;
    std::optional<features::EmbeddingTable> embeddings;
};

struct ResourcePaths {
    std::filesystem::path likelihoods;
    std::filesystem::path glove;
    std::filesystem::path embeddings;
};

/// Loads only what `kind` needs; a missing path is an error naming the flag.
inline Resources load_resources(FeatureKind kind, const ResourcePaths& paths) {
    Resources r;
    auto need = [](const std::filesystem::path& p, const char* what) {
        if (p.empty()) throw InvalidArgument(std::string("feature kind needs ") + what);
    };
    switch (kind) {
        case FeatureKind::Writeprints: break;
        case FeatureKind::Gltr:
            need(paths.likelihoods, "a likelihood file");
            r.likelihoods = features::load_likelihoods(paths.likelihoods);
            break;
        case FeatureKind::Glove:
            need(paths.glove, "a GloVe table");
            r.glove = features::load_glove(paths.glove);
            break;
        case FeatureKind::Embedding:
            need(paths.embeddings, "an embedding file");
            r.embeddings = features::load_embeddings(paths.embeddings);
            break;
    }
    return r;
}

inline std::vector<std::size_t> feature_shape(FeatureKind kind, const Resources& res) {
    switch (kind) {
        case FeatureKind::Writeprints: return {features::kWriteprintsDim};
        case FeatureKind::Gltr: return {features::kGltrDim};
        case FeatureKind::Glove: return {features::kSequenceLength, res.glove ? res.glove->dim : features::kGloveDim};
        case FeatureKind::Embedding: return {features::kEmbeddingDim};
    }
    return {};
}

/// Unscaled features in dataset order. Writeprints needs a fitted context.
inline features::FeatureSet featurize(FeatureKind kind, const LabeledDataset& ds, const Resources& res,
                                      const features::WriteprintsContext* ctx = nullptr) {
    features::FeatureSet fs;
    fs.kind = to_string(kind);
    fs.shape = feature_shape(kind, res);
    fs.classes = ds.classes;
    fs.X = Matrix::Zero(static_cast<Eigen::Index>(ds.size()), static_cast<Eigen::Index>(fs.width()));
    if (kind == FeatureKind::Writeprints && !ctx) throw InvalidArgument("writeprints featurization needs a fitted context");
    if (kind == FeatureKind::Gltr && !res.likelihoods) throw InvalidArgument("gltr featurization needs likelihoods");
    if (kind == FeatureKind::Glove && !res.glove) throw InvalidArgument("glove featurization needs a GloVe table");
    if (kind == FeatureKind::Embedding && !res.embeddings) throw InvalidArgument("embedding featurization needs embeddings");
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto& c = ds.comments[i];
        fs.ids.push_back(c.id);
        fs.labels.push_back(ds.class_index(c.class_label));
        auto row = fs.X.row(static_cast<Eigen::Index>(i));
        switch (kind) {
            case FeatureKind::Writeprints: {
                const auto v = features::writeprints(c, *ctx);
                for (std::size_t d = 0; d < v.size(); ++d) row[static_cast<Eigen::Index>(d)] = v[d];
                break;
            }
            case FeatureKind::Gltr: {
                const auto it = res.likelihoods->find(c.id);
                if (it == res.likelihoods->end()) throw InvalidArgument("no likelihood records for comment '" + c.id + "'");
                const auto v = features::gltr_features(c.id, it->second);
                for (std::size_t d = 0; d < v.size(); ++d) row[static_cast<Eigen::Index>(d)] = v[d];
                break;
            }
            case FeatureKind::Glove: {
                const auto v = features::glove_matrix(c, *res.glove);
                for (std::size_t d = 0; d < v.size(); ++d) row[static_cast<Eigen::Index>(d)] = v[d];
                break;
            }
            case FeatureKind::Embedding: {
                const auto it = res.embeddings->find(c.id);
                if (it == res.embeddings->end()) throw InvalidArgument("no embedding for comment '" + c.id + "'");
                for (std::size_t d = 0; d < it->second.size(); ++d) row[static_cast<Eigen::Index>(d)] = it->second[d];
                break;
            }
        }
    }
    return fs;
}

inline features::FeatureSet apply_scaler(features::FeatureSet fs, const features::MinMaxScaler& s) {
    fs.X = s.transform(fs.X);
    return fs;
}

struct PipelineSpec {
    FeatureKind features = FeatureKind::Writeprints;
    classifiers::Kind classifier = classifiers::Kind::Mlp;
    json classifier_config = json::object();
    /// Min-max to [-3, 3]; defaults to on for every kind but GloVe sequences.
    std::optional<bool> scale;
    std::uint64_t seed = 0;
    std::vector<std::size_t> ks{1, 5, 10};
    std::vector<double> thresholds{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

    [[nodiscard]] bool scaled() const { return scale.value_or(features != FeatureKind::Glove); }

    [[nodiscard]] json to_json() const {
        return {{"features", to_string(features)}, {"classifier", classifiers::to_string(classifier)},
                {"classifier_config", classifier_config}, {"scale", scaled()}, {"seed", seed},
                {"ks", ks}, {"thresholds", thresholds}};
    }
};

/// Featurizer state fitted on the training split.
struct FittedFeatures {
    std::optional<features::WriteprintsContext> context;
    std::optional<features::MinMaxScaler> scaler;
    features::FeatureSet train, val, test;
};

inline FittedFeatures fit_features(const PipelineSpec& spec, const Splits& splits, const Resources& res) {
    FittedFeatures f;
    if (spec.features == FeatureKind::Writeprints) f.context = features::fit_writeprints_context(splits.train);
    const auto* ctx = f.context ? &*f.context : nullptr;
    f.train = featurize(spec.features, splits.train, res, ctx);
    f.val = featurize(spec.features, splits.val, res, ctx);
    f.test = featurize(spec.features, splits.test, res, ctx);
    if (spec.scaled()) {
        f.scaler = features::MinMaxScaler::fit(f.train.X);
        f.train = apply_scaler(std::move(f.train), *f.scaler);
        f.val = apply_scaler(std::move(f.val), *f.scaler);
        f.test = apply_scaler(std::move(f.test), *f.scaler);
    }
    return f;
}

/// Clamps each k to the class count and drops duplicates, so the default
/// {1, 5, 10} stays usable on small class sets.
inline std::vector<std::size_t> clip_ks(const std::vector<std::size_t>& ks, std::size_t n_classes) {
    std::vector<std::size_t> out;
    for (auto k : ks)
        if (k >= 1) out.push_back(std::min(k, n_classes));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct PipelineResult {
    FittedFeatures features;
    classifiers::ClassifierModel model;
    classifiers::ProbaMatrix test_proba;
    eval::EvalReport report;
};

inline PipelineResult run_pipeline(const PipelineSpec& spec, const Splits& splits, const Resources& res) {
    PipelineResult r;
    r.features = fit_features(spec, splits, res);
    r.model = classifiers::train_model(spec.classifier, r.features.train, r.features.val, spec.classifier_config, spec.seed);
    r.test_proba = r.model.predict_proba(r.features.test.X);
    const auto ks = clip_ks(spec.ks, splits.test.classes.size());
    r.report = eval::evaluate(r.test_proba, r.features.test.labels, ks, spec.thresholds);
    return r;
}

inline PipelineResult run_pipeline(const PipelineSpec& spec, const LabeledDataset& ds, const SplitSpec& split_spec, const Resources& res) {
    return run_pipeline(spec, split(ds, split_spec), res);
}

}  // namespace lmfp::pipeline
