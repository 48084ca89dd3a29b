#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "lmfp/classifiers/cnn.hpp"
#include "lmfp/classifiers/forest.hpp"
#include "lmfp/classifiers/gnb.hpp"
#include "lmfp/classifiers/mlp.hpp"
#include "lmfp/classifiers/tree.hpp"
#include "lmfp/core/io.hpp"
#include "lmfp/features/feature_set.hpp"

namespace lmfp::classifiers {

enum class Kind { Gnb, Dt, Rf, Mlp, Cnn };

inline std::string to_string(Kind k) {
    switch (k) {
        case Kind::Gnb: return "gnb";
        case Kind::Dt: return "dt";
        case Kind::Rf: return "rf";
        case Kind::Mlp: return "mlp";
        case Kind::Cnn: return "cnn";
    }
    return "?";
}

inline Kind parse_kind(const std::string& s) {
    if (s == "gnb") return Kind::Gnb;
    if (s == "dt") return Kind::Dt;
    if (s == "rf") return Kind::Rf;
    if (s == "mlp") return Kind::Mlp;
    if (s == "cnn") return Kind::Cnn;
    throw InvalidArgument("unknown classifier kind '" + s + "' (expected gnb, dt, rf, mlp or cnn)");
}

// Config <-> JSON. Every field has a default; unknown keys are rejected so a
// typo in a config file does not silently fall back to defaults.
namespace detail {

inline void reject_unknown(const json& j, std::initializer_list<const char*> known, const std::string& what) {
    if (!j.is_object()) throw InvalidArgument(what + " config must be a JSON object");
    for (const auto& [k, v] : j.items()) {
        bool ok = false;
        for (auto n : known) ok = ok || k == n;
        if (!ok) throw InvalidArgument(what + " config: unknown field '" + k + "'");
    }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
    if (auto it = j.find(key); it != j.end() && !it->is_null()) out = it->get<T>();
}

template <typename T>
void read(const json& j, const char* key, std::optional<T>& out) {
    if (auto it = j.find(key); it != j.end()) out = it->is_null() ? std::nullopt : std::optional<T>(it->get<T>());
}

template <typename T>
json opt(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

}  // namespace detail

inline GnbConfig gnb_config(const json& j) {
    detail::reject_unknown(j, {"var_smoothing", "seed"}, "gnb");
    GnbConfig c;
    detail::read(j, "var_smoothing", c.var_smoothing);
    return c;
}
inline json to_json(const GnbConfig& c) { return {{"var_smoothing", c.var_smoothing}}; }

inline TreeConfig tree_config(const json& j) {
    detail::reject_unknown(j, {"criterion", "max_depth", "min_samples_leaf", "max_features", "seed"}, "dt");
    TreeConfig c;
    detail::read(j, "criterion", c.criterion);
    detail::read(j, "max_depth", c.max_depth);
    detail::read(j, "min_samples_leaf", c.min_samples_leaf);
    detail::read(j, "max_features", c.max_features);
    detail::read(j, "seed", c.seed);
    return c;
}
inline json to_json(const TreeConfig& c) {
    return {{"criterion", c.criterion}, {"max_depth", detail::opt(c.max_depth)}, {"min_samples_leaf", c.min_samples_leaf},
            {"max_features", detail::opt(c.max_features)}, {"seed", c.seed}};
}

inline ForestConfig forest_config(const json& j) {
    detail::reject_unknown(j, {"n_trees", "criterion", "bootstrap", "max_features", "max_depth", "min_samples_leaf", "seed"}, "rf");
    ForestConfig c;
    detail::read(j, "n_trees", c.n_trees);
    detail::read(j, "criterion", c.criterion);
    detail::read(j, "bootstrap", c.bootstrap);
    detail::read(j, "max_features", c.max_features);
    detail::read(j, "max_depth", c.max_depth);
    detail::read(j, "min_samples_leaf", c.min_samples_leaf);
    detail::read(j, "seed", c.seed);
    return c;
}
inline json to_json(const ForestConfig& c) {
    return {{"n_trees", c.n_trees}, {"criterion", c.criterion}, {"bootstrap", c.bootstrap},
            {"max_features", detail::opt(c.max_features)}, {"max_depth", detail::opt(c.max_depth)},
            {"min_samples_leaf", c.min_samples_leaf}, {"seed", c.seed}};
}

inline MlpConfig mlp_config(const json& j) {
    detail::reject_unknown(j, {"hidden", "activation", "lr", "l2", "batch_size", "max_epochs", "patience", "tol", "adaptive_lr", "seed"},
                           "mlp");
    MlpConfig c;
    detail::read(j, "hidden", c.hidden);
    detail::read(j, "activation", c.activation);
    detail::read(j, "lr", c.lr);
    detail::read(j, "l2", c.l2);
    detail::read(j, "batch_size", c.batch_size);
    detail::read(j, "max_epochs", c.max_epochs);
    detail::read(j, "patience", c.patience);
    detail::read(j, "tol", c.tol);
    detail::read(j, "adaptive_lr", c.adaptive_lr);
    detail::read(j, "seed", c.seed);
    return c;
}
inline json to_json(const MlpConfig& c) {
    return {{"hidden", c.hidden},         {"activation", c.activation}, {"optimizer", "adam"},
            {"lr", c.lr},                 {"l2", c.l2},                 {"batch_size", c.batch_size},
            {"max_epochs", c.max_epochs}, {"patience", c.patience},     {"tol", c.tol},
            {"adaptive_lr", c.adaptive_lr}, {"seed", c.seed}};
}

inline CnnConfig cnn_config(const json& j) {
    detail::reject_unknown(j, {"kernel1", "kernel2", "filters", "pool_size", "pool_stride", "activation", "bn_momentum", "bn_epsilon", "l2",
                               "lr", "batch_size", "max_epochs", "patience", "tol", "seed"},
                           "cnn");
    CnnConfig c;
    detail::read(j, "kernel1", c.kernel1);
    detail::read(j, "kernel2", c.kernel2);
    detail::read(j, "filters", c.filters);
    detail::read(j, "pool_size", c.pool_size);
    detail::read(j, "pool_stride", c.pool_stride);
    detail::read(j, "activation", c.activation);
    detail::read(j, "bn_momentum", c.bn_momentum);
    detail::read(j, "bn_epsilon", c.bn_epsilon);
    detail::read(j, "l2", c.l2);
    detail::read(j, "lr", c.lr);
    detail::read(j, "batch_size", c.batch_size);
    detail::read(j, "max_epochs", c.max_epochs);
    detail::read(j, "patience", c.patience);
    detail::read(j, "tol", c.tol);
    detail::read(j, "seed", c.seed);
    return c;
}
inline json to_json(const CnnConfig& c) {
    return {{"kernel1", c.kernel1},     {"kernel2", c.kernel2},         {"filters", c.filters},
            {"pool_size", c.pool_size}, {"pool_stride", c.pool_stride}, {"activation", c.activation},
            {"bn_momentum", c.bn_momentum}, {"bn_epsilon", c.bn_epsilon}, {"l2", c.l2},
            {"optimizer", "adam"},      {"lr", c.lr},                   {"batch_size", c.batch_size},
            {"max_epochs", c.max_epochs}, {"patience", c.patience},     {"tol", c.tol},
            {"seed", c.seed}};
}

/// Trained classifier of any kind behind one probability contract.
struct ClassifierModel {
    Kind kind = Kind::Gnb;
    std::vector<std::string> class_labels;
    std::vector<std::size_t> input_shape;
    json train_config;  // resolved hyperparameters, seed included
    json history;       // per-epoch losses for mlp/cnn, empty otherwise
    std::variant<GaussianNB, DecisionTree, RandomForest, Mlp, Cnn> impl;

    [[nodiscard]] ProbaMatrix predict_proba(const Matrix& X) const {
        return std::visit([&](const auto& m) { return m.predict_proba(X); }, impl);
    }

    [[nodiscard]] std::vector<std::size_t> predict(const Matrix& X) const { return argmax_all(predict_proba(X)); }
};

namespace detail {

inline json history_json(const TrainHistory& h) {
    return {{"train_loss", h.train_loss}, {"val_loss", h.val_loss}, {"lr", h.lr}, {"best_epoch", h.best_epoch},
            {"early_stopped", h.early_stopped}, {"epochs_run", h.train_loss.size()}};
}

}  // namespace detail

/// Trains `kind` on `train`; `val` feeds early stopping for mlp/cnn and may be empty.
inline ClassifierModel train_model(Kind kind, const features::FeatureSet& train, const features::FeatureSet& val, const json& config,
                                   std::uint64_t seed) {
    json cfg = config.is_null() ? json::object() : config;
    if (!cfg.contains("seed")) cfg["seed"] = seed;
    ClassifierModel m;
    m.kind = kind;
    m.class_labels = train.classes;
    m.input_shape = train.shape;
    const std::size_t C = train.classes.size();
    if (!val.ids.empty() && val.classes != train.classes) throw InvalidArgument("validation classes differ from training classes");
    if (!val.ids.empty() && val.shape != train.shape) throw InvalidArgument("validation feature shape differs from training");
    switch (kind) {
        case Kind::Gnb: {
            const auto c = gnb_config(cfg);
            m.train_config = to_json(c);
            m.impl = GaussianNB::fit(train.X, train.labels, C, c);
            break;
        }
        case Kind::Dt: {
            const auto c = tree_config(cfg);
            m.train_config = to_json(c);
            m.impl = DecisionTree::fit(train.X, train.labels, C, c);
            break;
        }
        case Kind::Rf: {
            const auto c = forest_config(cfg);
            m.train_config = to_json(c);
            m.impl = RandomForest::fit(train.X, train.labels, C, c);
            break;
        }
        case Kind::Mlp: {
            const auto c = mlp_config(cfg);
            m.train_config = to_json(c);
            check_labels(train.labels, train.size(), C);
            Mlp net(train.width(), c.hidden, C, c.activation, c.l2, c.seed);
            const auto hist = train_network(net, train.X, train.labels, val.X, val.labels, train_options(c));
            m.history = detail::history_json(hist);
            m.impl = std::move(net);
            break;
        }
        case Kind::Cnn: {
            const auto c = cnn_config(cfg);
            m.train_config = to_json(c);
            check_labels(train.labels, train.size(), C);
            const std::size_t length = train.shape.size() == 2 ? train.shape[0] : train.width();
            const std::size_t channels = train.shape.size() == 2 ? train.shape[1] : 1;
            Cnn net(length, channels, C, c);
            const auto hist = train_network(net, train.X, train.labels, val.X, val.labels, train_options(c));
            m.history = detail::history_json(hist);
            m.impl = std::move(net);
            break;
        }
    }
    return m;
}

inline json to_json(const ClassifierModel& m) {
    json params = std::visit([](const auto& x) { return x.to_json(); }, m.impl);
    return {{"format", "lmfp-model"},          {"version", 1},          {"kind", to_string(m.kind)},
            {"class_labels", m.class_labels}, {"input_shape", m.input_shape}, {"train_config", m.train_config},
            {"history", m.history},           {"parameters", params}};
}

inline ClassifierModel model_from_json(const json& j) {
    if (j.value("format", "") != "lmfp-model") throw Error("not an lmfp model file");
    if (j.value("version", 0) != 1) throw Error("unsupported model version");
    ClassifierModel m;
    m.kind = parse_kind(j.at("kind").get<std::string>());
    m.class_labels = j.at("class_labels").get<std::vector<std::string>>();
    m.input_shape = j.at("input_shape").get<std::vector<std::size_t>>();
    m.train_config = j.at("train_config");
    m.history = j.value("history", json());
    const auto& p = j.at("parameters");
    switch (m.kind) {
        case Kind::Gnb: m.impl = GaussianNB::from_json(p); break;
        case Kind::Dt: m.impl = DecisionTree::from_json(p); break;
        case Kind::Rf: m.impl = RandomForest::from_json(p); break;
        case Kind::Mlp: m.impl = Mlp::from_json(p); break;
        case Kind::Cnn: m.impl = Cnn::from_json(p); break;
    }
    return m;
}

inline void save_model(const std::filesystem::path& path, const ClassifierModel& m) { write_file(path, to_json(m).dump() + "\n"); }
inline ClassifierModel load_model(const std::filesystem::path& path) { return model_from_json(read_json(path)); }

}  // namespace lmfp::classifiers
