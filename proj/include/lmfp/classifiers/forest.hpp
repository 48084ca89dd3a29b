#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "lmfp/classifiers/tree.hpp"

namespace lmfp::classifiers {

struct ForestConfig {
    std::size_t n_trees = 100;
    std::string criterion = "entropy";
    bool bootstrap = true;
    std::optional<std::size_t> max_features;  // floor(sqrt(D)) when empty
    std::optional<std::size_t> max_depth;
    std::size_t min_samples_leaf = 1;
    std::uint64_t seed = 0;
};

/// Bagged entropy trees; probabilities are the mean of leaf distributions.
class RandomForest {
public:
    static RandomForest fit(const Matrix& X, std::span<const std::size_t> y, std::size_t n_classes, const ForestConfig& cfg) {
        if (cfg.n_trees == 0) throw InvalidArgument("n_trees must be >= 1");
        check_labels(y, static_cast<std::size_t>(X.rows()), n_classes);
        const auto n = static_cast<std::size_t>(X.rows());
        const auto D = static_cast<std::size_t>(X.cols());
        RandomForest f;
        f.n_classes_ = n_classes;
        f.n_features_ = D;
        for (std::size_t t = 0; t < cfg.n_trees; ++t) {
            const std::uint64_t tree_seed = derive_seed(cfg.seed, t);
            TreeConfig tc;
            tc.criterion = cfg.criterion;
            tc.max_depth = cfg.max_depth;
            tc.min_samples_leaf = cfg.min_samples_leaf;
            tc.max_features = cfg.max_features.value_or(std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(D)))));
            tc.seed = derive_seed(tree_seed, 1);
            std::vector<std::size_t> sample;
            if (cfg.bootstrap) {
                Rng rng(derive_seed(tree_seed, 0));
                sample.resize(n);
                for (auto& s : sample) s = static_cast<std::size_t>(rng.below(n));
            }
            f.trees_.push_back(DecisionTree::fit(X, y, n_classes, tc, std::move(sample)));
        }
        return f;
    }

    [[nodiscard]] ProbaMatrix predict_proba(const Matrix& X) const {
        if (static_cast<std::size_t>(X.cols()) != n_features_)
            throw InvalidArgument("RandomForest: feature width " + std::to_string(X.cols()) + " != trained " + std::to_string(n_features_));
        ProbaMatrix out = ProbaMatrix::Zero(X.rows(), static_cast<Eigen::Index>(n_classes_));
        for (Eigen::Index i = 0; i < X.rows(); ++i) {
            for (const auto& t : trees_) {
                const auto d = t.leaf_distribution(X.row(i).data());
                for (std::size_t c = 0; c < n_classes_; ++c) out(i, static_cast<Eigen::Index>(c)) += d[c];
            }
        }
        out /= static_cast<double>(trees_.size());
        return out;
    }

    [[nodiscard]] const std::vector<DecisionTree>& trees() const { return trees_; }

    [[nodiscard]] json to_json() const {
        json trees = json::array();
        for (const auto& t : trees_) trees.push_back(t.to_json());
        return {{"n_classes", n_classes_}, {"n_features", n_features_}, {"trees", trees}};
    }

    static RandomForest from_json(const json& j) {
        RandomForest f;
        f.n_classes_ = j.at("n_classes").get<std::size_t>();
        f.n_features_ = j.at("n_features").get<std::size_t>();
        for (const auto& t : j.at("trees")) f.trees_.push_back(DecisionTree::from_json(t));
        return f;
    }

private:
    std::vector<DecisionTree> trees_;
    std::size_t n_classes_ = 0;
    std::size_t n_features_ = 0;
};

}  // namespace lmfp::classifiers
