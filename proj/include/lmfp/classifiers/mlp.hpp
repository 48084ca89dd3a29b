#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "lmfp/classifiers/proba.hpp"
#include "lmfp/classifiers/training.hpp"
#include "lmfp/core/io.hpp"
#include "lmfp/core/random.hpp"

namespace lmfp::classifiers {

struct MlpConfig {
    std::vector<std::size_t> hidden{64};
    std::string activation = "relu";  // relu | tanh
    double lr = 1e-4;
    double l2 = 0.01;
    std::size_t batch_size = 48;
    std::size_t max_epochs = 200;
    std::size_t patience = 5;
    double tol = 1e-4;
    bool adaptive_lr = true;
    std::uint64_t seed = 0;
};

/// Fully connected softmax classifier. All weights and biases live in one
/// flat parameter vector; layer l has a (in x out) row-major weight block
/// followed by its bias.
class Mlp {
public:
    Mlp() = default;

    Mlp(std::size_t n_in, const std::vector<std::size_t>& hidden, std::size_t n_classes, std::string activation, double l2,
        std::uint64_t seed)
        : activation_(std::move(activation)), l2_(l2) {
        if (activation_ != "relu" && activation_ != "tanh") throw InvalidArgument("unknown activation '" + activation_ + "'");
        sizes_.push_back(n_in);
        sizes_.insert(sizes_.end(), hidden.begin(), hidden.end());
        sizes_.push_back(n_classes);
        std::size_t total = 0;
        for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
            w_off_.push_back(total);
            total += sizes_[l] * sizes_[l + 1];
            b_off_.push_back(total);
            total += sizes_[l + 1];
        }
        params_.assign(total, 0.0);
        Rng rng(seed);
        for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
            const double limit = std::sqrt(6.0 / static_cast<double>(sizes_[l]));
            for (std::size_t k = 0; k < sizes_[l] * sizes_[l + 1]; ++k) params_[w_off_[l] + k] = rng.uniform(-limit, limit);
        }
    }

    std::vector<double>& params() { return params_; }
    [[nodiscard]] const std::vector<double>& params() const { return params_; }
    [[nodiscard]] std::size_t n_layers() const { return w_off_.size(); }
    [[nodiscard]] std::size_t n_in() const { return sizes_.front(); }
    [[nodiscard]] std::size_t n_classes() const { return sizes_.back(); }

    /// Mean cross-entropy plus l2/(2n) * sum of squared weights, n = rows.
    double loss_and_grad(const Matrix& X, std::span<const std::size_t> y, std::vector<double>* grad, bool /*training*/) const {
        check_width(X);
        const auto n = static_cast<double>(X.rows());
        std::vector<Matrix> acts{X};
        std::vector<Matrix> pre;
        for (std::size_t l = 0; l < n_layers(); ++l) {
            Matrix z = acts.back() * weight(l);
            z.rowwise() += bias(l);
            pre.push_back(z);
            if (l + 1 < n_layers()) acts.push_back(activate(z));
        }
        Matrix p = pre.back();
        softmax_rows(p);
        double loss = 0.0;
        for (Eigen::Index i = 0; i < p.rows(); ++i) loss -= std::log(std::max(p(i, static_cast<Eigen::Index>(y[static_cast<std::size_t>(i)])), 1e-300));
        loss /= n;
        double sq = 0.0;
        for (std::size_t l = 0; l < n_layers(); ++l) sq += weight(l).squaredNorm();
        loss += 0.5 * l2_ * sq / n;
        if (!grad) return loss;

        grad->assign(params_.size(), 0.0);
        Matrix delta = p;
        for (Eigen::Index i = 0; i < p.rows(); ++i) delta(i, static_cast<Eigen::Index>(y[static_cast<std::size_t>(i)])) -= 1.0;
        delta /= n;
        for (std::size_t l = n_layers(); l-- > 0;) {
            Eigen::Map<Matrix> gw(grad->data() + w_off_[l], static_cast<Eigen::Index>(sizes_[l]), static_cast<Eigen::Index>(sizes_[l + 1]));
            Eigen::Map<Eigen::RowVectorXd> gb(grad->data() + b_off_[l], static_cast<Eigen::Index>(sizes_[l + 1]));
            gw = acts[l].transpose() * delta + (l2_ / n) * weight(l);
            gb = delta.colwise().sum();
            if (l > 0) {
                Matrix back = delta * weight(l).transpose();
                delta = back.cwiseProduct(activation_grad(pre[l - 1], acts[l]));
            }
        }
        return loss;
    }

    [[nodiscard]] ProbaMatrix predict_proba(const Matrix& X) const {
        check_width(X);
        Matrix a = X;
        for (std::size_t l = 0; l < n_layers(); ++l) {
            Matrix z = a * weight(l);
            z.rowwise() += bias(l);
            a = l + 1 < n_layers() ? activate(z) : z;
        }
        softmax_rows(a);
        return a;
    }

    [[nodiscard]] json to_json() const {
        return {{"sizes", sizes_}, {"activation", activation_}, {"l2", l2_}, {"params", params_}};
    }

    static Mlp from_json(const json& j) {
        const auto sizes = j.at("sizes").get<std::vector<std::size_t>>();
        if (sizes.size() < 2) throw Error("mlp: bad layer sizes");
        Mlp m(sizes.front(), std::vector<std::size_t>(sizes.begin() + 1, sizes.end() - 1), sizes.back(),
              j.at("activation").get<std::string>(), j.at("l2").get<double>(), 0);
        auto p = j.at("params").get<std::vector<double>>();
        if (p.size() != m.params_.size()) throw Error("mlp: parameter count mismatch");
        m.params_ = std::move(p);
        return m;
    }

private:
    [[nodiscard]] Eigen::Map<const Matrix> weight(std::size_t l) const {
        return {params_.data() + w_off_[l], static_cast<Eigen::Index>(sizes_[l]), static_cast<Eigen::Index>(sizes_[l + 1])};
    }
    [[nodiscard]] Eigen::Map<const Eigen::RowVectorXd> bias(std::size_t l) const {
        return {params_.data() + b_off_[l], static_cast<Eigen::Index>(sizes_[l + 1])};
    }

    [[nodiscard]] Matrix activate(const Matrix& z) const {
        if (activation_ == "tanh") return z.array().tanh().matrix();
        return z.cwiseMax(0.0);
    }

    [[nodiscard]] Matrix activation_grad(const Matrix& z, const Matrix& a) const {
        if (activation_ == "tanh") return (1.0 - a.array().square()).matrix();
        return (z.array() > 0.0).cast<double>().matrix();
    }

    void check_width(const Matrix& X) const {
        if (static_cast<std::size_t>(X.cols()) != n_in())
            throw InvalidArgument("Mlp: feature width " + std::to_string(X.cols()) + " != trained " + std::to_string(n_in()));
    }

    std::vector<std::size_t> sizes_;
    std::vector<std::size_t> w_off_, b_off_;
    std::vector<double> params_;
    std::string activation_ = "relu";
    double l2_ = 0.0;
};

inline TrainOptions train_options(const MlpConfig& c) {
    return {c.lr, c.batch_size, c.max_epochs, c.patience, c.tol, c.adaptive_lr, 2, derive_seed(c.seed, 1)};
}

}  // namespace lmfp::classifiers
