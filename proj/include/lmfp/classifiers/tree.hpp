#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "lmfp/classifiers/proba.hpp"
#include "lmfp/core/io.hpp"
#include "lmfp/core/random.hpp"

namespace lmfp::classifiers {

struct TreeConfig {
    std::string criterion = "entropy";
    std::optional<std::size_t> max_depth;  // unlimited when empty
    std::size_t min_samples_leaf = 1;
    std::optional<std::size_t> max_features;  // all features when empty
    std::uint64_t seed = 0;
};

/// Greedy binary CART on information gain. A split sends x[f] <= t left.
/// Among equal gains the lowest feature index, then lowest threshold, wins.
class DecisionTree {
public:
    struct Node {
        int feature = -1;  // -1 marks a leaf
        double threshold = 0.0;
        int left = -1;
        int right = -1;
        std::vector<double> dist;  // leaf class distribution
    };

    /// `sample` lists training rows, repeats allowed (bootstrap draws).
    static DecisionTree fit(const Matrix& X, std::span<const std::size_t> y, std::size_t n_classes, const TreeConfig& cfg,
                            std::vector<std::size_t> sample = {}) {
        if (cfg.criterion != "entropy") throw InvalidArgument("only the entropy criterion is supported");
        check_labels(y, static_cast<std::size_t>(X.rows()), n_classes);
        if (sample.empty()) {
            sample.resize(static_cast<std::size_t>(X.rows()));
            std::iota(sample.begin(), sample.end(), std::size_t{0});
        }
        DecisionTree t;
        t.n_classes_ = n_classes;
        t.n_features_ = static_cast<std::size_t>(X.cols());
        Builder b{X, y, n_classes, cfg, Rng(cfg.seed), t.nodes_};
        b.build(sample, 0);
        return t;
    }

    [[nodiscard]] std::span<const double> leaf_distribution(const double* x) const {
        int i = 0;
        while (nodes_[static_cast<std::size_t>(i)].feature >= 0) {
            const auto& n = nodes_[static_cast<std::size_t>(i)];
            i = x[n.feature] <= n.threshold ? n.left : n.right;
        }
        return nodes_[static_cast<std::size_t>(i)].dist;
    }

    [[nodiscard]] ProbaMatrix predict_proba(const Matrix& X) const {
        if (static_cast<std::size_t>(X.cols()) != n_features_)
            throw InvalidArgument("DecisionTree: feature width " + std::to_string(X.cols()) + " != trained " + std::to_string(n_features_));
        ProbaMatrix out(X.rows(), static_cast<Eigen::Index>(n_classes_));
        for (Eigen::Index i = 0; i < X.rows(); ++i) {
            const auto d = leaf_distribution(X.row(i).data());
            for (std::size_t c = 0; c < n_classes_; ++c) out(i, static_cast<Eigen::Index>(c)) = d[c];
        }
        return out;
    }

    [[nodiscard]] std::size_t node_count() const { return nodes_.size(); }
    [[nodiscard]] std::size_t depth() const { return depth_from(0); }
    [[nodiscard]] const std::vector<Node>& nodes() const { return nodes_; }
    [[nodiscard]] std::size_t n_classes() const { return n_classes_; }
    [[nodiscard]] std::size_t n_features() const { return n_features_; }

    [[nodiscard]] json to_json() const {
        json nodes = json::array();
        for (const auto& n : nodes_) {
            if (n.feature < 0)
                nodes.push_back({{"dist", n.dist}});
            else
                nodes.push_back({{"f", n.feature}, {"t", n.threshold}, {"l", n.left}, {"r", n.right}});
        }
        return {{"n_classes", n_classes_}, {"n_features", n_features_}, {"nodes", nodes}};
    }

    static DecisionTree from_json(const json& j) {
        DecisionTree t;
        t.n_classes_ = j.at("n_classes").get<std::size_t>();
        t.n_features_ = j.at("n_features").get<std::size_t>();
        for (const auto& n : j.at("nodes")) {
            Node node;
            if (n.contains("dist")) {
                node.dist = n.at("dist").get<std::vector<double>>();
            } else {
                node.feature = n.at("f").get<int>();
                node.threshold = n.at("t").get<double>();
                node.left = n.at("l").get<int>();
                node.right = n.at("r").get<int>();
            }
            t.nodes_.push_back(std::move(node));
        }
        return t;
    }

private:
    static double entropy(const std::vector<double>& counts, double total) {
        double h = 0.0;
        for (double c : counts)
            if (c > 0.0) {
                const double p = c / total;
                h -= p * std::log2(p);
            }
        return h;
    }

    struct Builder {
        const Matrix& X;
        std::span<const std::size_t> y;
        std::size_t C;
        const TreeConfig& cfg;
        Rng rng;
        std::vector<Node>& nodes;

        struct Split {
            int feature = -1;
            double threshold = 0.0;
            double gain = -1.0;
        };

        int make_leaf(const std::vector<double>& counts, double total) {
            Node n;
            n.dist.resize(C);
            for (std::size_t c = 0; c < C; ++c) n.dist[c] = counts[c] / total;
            nodes.push_back(std::move(n));
            return static_cast<int>(nodes.size() - 1);
        }

        void scan_feature(std::size_t f, std::vector<std::size_t>& idx, const std::vector<double>& parent, double parent_h,
                          Split& best) {
            std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
                return X(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(f)) < X(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(f));
            });
            const double n = static_cast<double>(idx.size());
            std::vector<double> left(C, 0.0), right = parent;
            const std::size_t min_leaf = std::max<std::size_t>(cfg.min_samples_leaf, 1);
            for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
                const auto c = y[idx[k]];
                left[c] += 1.0;
                right[c] -= 1.0;
                const double a = X(static_cast<Eigen::Index>(idx[k]), static_cast<Eigen::Index>(f));
                const double b = X(static_cast<Eigen::Index>(idx[k + 1]), static_cast<Eigen::Index>(f));
                if (!(a < b)) continue;
                const std::size_t nl = k + 1, nr = idx.size() - nl;
                if (nl < min_leaf || nr < min_leaf) continue;
                const double dl = static_cast<double>(nl), dr = static_cast<double>(nr);
                const double gain = parent_h - (dl * entropy(left, dl) + dr * entropy(right, dr)) / n;
                double thr = 0.5 * (a + b);
                if (!(thr < b)) thr = a;  // midpoint rounding up to b
                if (gain > best.gain + 1e-12) best = {static_cast<int>(f), thr, gain};
            }
        }

        int build(std::vector<std::size_t>& idx, std::size_t depth) {
            std::vector<double> counts(C, 0.0);
            for (auto i : idx) counts[y[i]] += 1.0;
            const double total = static_cast<double>(idx.size());
            const bool pure = std::count_if(counts.begin(), counts.end(), [](double c) { return c > 0.0; }) <= 1;
            const std::size_t min_leaf = std::max<std::size_t>(cfg.min_samples_leaf, 1);
            if (pure || idx.size() < 2 * min_leaf || (cfg.max_depth && depth >= *cfg.max_depth)) return make_leaf(counts, total);

            const std::size_t D = static_cast<std::size_t>(X.cols());
            const double parent_h = entropy(counts, total);
            Split best;
            std::vector<std::size_t> work = idx;
            if (!cfg.max_features || *cfg.max_features >= D) {
                for (std::size_t f = 0; f < D; ++f) scan_feature(f, work, counts, parent_h, best);
            } else {
                std::vector<std::size_t> order(D);
                std::iota(order.begin(), order.end(), std::size_t{0});
                for (std::size_t k = 0; k < D; ++k) std::swap(order[k], order[k + rng.below(D - k)]);
                const std::size_t m = std::max<std::size_t>(*cfg.max_features, 1);
                std::vector<std::size_t> chosen(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m));
                std::sort(chosen.begin(), chosen.end());
                for (auto f : chosen) scan_feature(f, work, counts, parent_h, best);
                if (best.feature < 0) {
                    // Every sampled feature was constant here; fall back to the rest.
                    std::vector<std::size_t> rest(order.begin() + static_cast<std::ptrdiff_t>(m), order.end());
                    std::sort(rest.begin(), rest.end());
                    for (auto f : rest) scan_feature(f, work, counts, parent_h, best);
                }
            }
            if (best.feature < 0) return make_leaf(counts, total);

            std::vector<std::size_t> left, right;
            for (auto i : idx)
                (X(static_cast<Eigen::Index>(i), best.feature) <= best.threshold ? left : right).push_back(i);
            const int self = static_cast<int>(nodes.size());
            nodes.push_back(Node{best.feature, best.threshold, -1, -1, {}});
            idx.clear();
            idx.shrink_to_fit();
            const int l = build(left, depth + 1);
            const int r = build(right, depth + 1);
            nodes[static_cast<std::size_t>(self)].left = l;
            nodes[static_cast<std::size_t>(self)].right = r;
            return self;
        }
    };

    [[nodiscard]] std::size_t depth_from(int i) const {
        const auto& n = nodes_[static_cast<std::size_t>(i)];
        if (n.feature < 0) return 0;
        return 1 + std::max(depth_from(n.left), depth_from(n.right));
    }

    std::vector<Node> nodes_;
    std::size_t n_classes_ = 0;
    std::size_t n_features_ = 0;
};

}  // namespace lmfp::classifiers
