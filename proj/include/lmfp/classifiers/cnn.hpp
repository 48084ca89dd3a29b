#pragma once

// Two stacked 1-D convolutions, batch normalization, max pooling, then a
// dense softmax layer:
//
//   x (L x Cin) -> conv k1 -> act -> conv k2 -> batch-norm -> act
//               -> max-pool (size, stride) -> flatten -> dense -> softmax
//
// Convolutions use stride 1 and no padding. Batch-norm statistics are taken
// over every (sample, position) pair of a batch during training; inference
// uses running averages.

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "lmfp/classifiers/proba.hpp"
#include "lmfp/classifiers/training.hpp"
#include "lmfp/core/io.hpp"
#include "lmfp/core/random.hpp"

namespace lmfp::classifiers {

struct CnnConfig {
    std::size_t kernel1 = 2;
    std::size_t kernel2 = 3;
    std::size_t filters = 16;
    std::size_t pool_size = 2;
    std::size_t pool_stride = 1;
    std::string activation = "relu";  // relu | none
    double bn_momentum = 0.9;
    double bn_epsilon = 1e-5;
    double l2 = 0.0;
    double lr = 1e-4;
    std::size_t batch_size = 48;
    std::size_t max_epochs = 15;
    std::size_t patience = 5;
    double tol = 1e-4;
    std::uint64_t seed = 0;
};

/// Positions after each stage for an input of `length` positions.
struct CnnShape {
    std::size_t input, conv1, conv2, pooled;
};

inline CnnShape cnn_shape(std::size_t length, const CnnConfig& c) {
    const std::size_t min_len = c.kernel1 + c.kernel2 + c.pool_size - 2;
    if (length < min_len)
        throw InvalidArgument("CNN input length " + std::to_string(length) + " is shorter than the minimum " + std::to_string(min_len));
    CnnShape s;
    s.input = length;
    s.conv1 = length - c.kernel1 + 1;
    s.conv2 = s.conv1 - c.kernel2 + 1;
    s.pooled = (s.conv2 - c.pool_size) / c.pool_stride + 1;
    return s;
}

class Cnn {
public:
    Cnn() = default;

    Cnn(std::size_t length, std::size_t channels, std::size_t n_classes, const CnnConfig& cfg)
        : cfg_(cfg), shape_(cnn_shape(length, cfg)), channels_(channels), n_classes_(n_classes) {
        if (cfg.activation != "relu" && cfg.activation != "none") throw InvalidArgument("unknown activation '" + cfg.activation + "'");
        if (cfg.pool_stride == 0 || cfg.filters == 0 || channels == 0) throw InvalidArgument("CNN: zero-sized layer");
        const std::size_t F = cfg.filters;
        std::size_t off = 0;
        auto take = [&](std::size_t n) {
            const std::size_t o = off;
            off += n;
            return o;
        };
        w1_ = take(F * cfg.kernel1 * channels);
        b1_ = take(F);
        w2_ = take(F * cfg.kernel2 * F);
        b2_ = take(F);
        gamma_ = take(F);
        beta_ = take(F);
        wd_ = take(shape_.pooled * F * n_classes);
        bd_ = take(n_classes);
        params_.assign(off, 0.0);
        Rng rng(cfg.seed);
        auto init = [&](std::size_t at, std::size_t count, std::size_t fan_in) {
            const double limit = std::sqrt(6.0 / static_cast<double>(fan_in));
            for (std::size_t k = 0; k < count; ++k) params_[at + k] = rng.uniform(-limit, limit);
        };
        init(w1_, F * cfg.kernel1 * channels, cfg.kernel1 * channels);
        init(w2_, F * cfg.kernel2 * F, cfg.kernel2 * F);
        init(wd_, shape_.pooled * F * n_classes, shape_.pooled * F);
        for (std::size_t o = 0; o < F; ++o) params_[gamma_ + o] = 1.0;
        running_mean_.assign(F, 0.0);
        running_var_.assign(F, 1.0);
    }

    std::vector<double>& params() { return params_; }
    [[nodiscard]] const std::vector<double>& params() const { return params_; }
    [[nodiscard]] const CnnShape& shape() const { return shape_; }
    [[nodiscard]] std::size_t channels() const { return channels_; }
    [[nodiscard]] std::size_t n_classes() const { return n_classes_; }
    [[nodiscard]] const std::vector<double>& running_mean() const { return running_mean_; }
    [[nodiscard]] const std::vector<double>& running_var() const { return running_var_; }

    /// Batch-normalized activations (before the second activation) for the
    /// given batch in training mode. Exposed for inspection and tests.
    [[nodiscard]] std::vector<Matrix> normalized(const Matrix& X) const {
        Forward f = forward(X, true);
        return f.xhat;
    }

    /// Mean cross-entropy plus l2/(2n) * sum of squared conv and dense weights.
    /// In training mode, batch statistics are used and running averages move.
    double loss_and_grad(const Matrix& X, std::span<const std::size_t> y, std::vector<double>* grad, bool training) {
        Forward f = forward(X, training);
        if (training) update_running(f);
        return backward(f, y, grad);
    }

    [[nodiscard]] ProbaMatrix predict_proba(const Matrix& X) const {
        Forward f = forward(X, false);
        return f.proba;
    }

    /// Loss and gradient without touching running statistics.
    double evaluate_loss(const Matrix& X, std::span<const std::size_t> y, std::vector<double>* grad, bool training) const {
        Forward f = forward(X, training);
        return backward(f, y, grad);
    }

    [[nodiscard]] json to_json() const {
        return {{"length", shape_.input},
                {"channels", channels_},
                {"n_classes", n_classes_},
                {"kernel1", cfg_.kernel1},
                {"kernel2", cfg_.kernel2},
                {"filters", cfg_.filters},
                {"pool_size", cfg_.pool_size},
                {"pool_stride", cfg_.pool_stride},
                {"activation", cfg_.activation},
                {"bn_momentum", cfg_.bn_momentum},
                {"bn_epsilon", cfg_.bn_epsilon},
                {"l2", cfg_.l2},
                {"params", params_},
                {"running_mean", running_mean_},
                {"running_var", running_var_}};
    }

    static Cnn from_json(const json& j) {
        CnnConfig c;
        c.kernel1 = j.at("kernel1").get<std::size_t>();
        c.kernel2 = j.at("kernel2").get<std::size_t>();
        c.filters = j.at("filters").get<std::size_t>();
        c.pool_size = j.at("pool_size").get<std::size_t>();
        c.pool_stride = j.at("pool_stride").get<std::size_t>();
        c.activation = j.at("activation").get<std::string>();
        c.bn_momentum = j.at("bn_momentum").get<double>();
        c.bn_epsilon = j.at("bn_epsilon").get<double>();
        c.l2 = j.at("l2").get<double>();
        Cnn m(j.at("length").get<std::size_t>(), j.at("channels").get<std::size_t>(), j.at("n_classes").get<std::size_t>(), c);
        auto p = j.at("params").get<std::vector<double>>();
        if (p.size() != m.params_.size()) throw Error("cnn: parameter count mismatch");
        m.params_ = std::move(p);
        m.running_mean_ = j.at("running_mean").get<std::vector<double>>();
        m.running_var_ = j.at("running_var").get<std::vector<double>>();
        return m;
    }

private:
    using Strided = Eigen::Map<const Matrix, 0, Eigen::OuterStride<>>;

    struct Forward {
        std::vector<Matrix> x;      // L x Cin views copied per sample
        std::vector<Matrix> h1, a1; // conv1 x F
        std::vector<Matrix> h2;     // conv2 x F
        std::vector<Matrix> xhat;   // conv2 x F
        std::vector<Matrix> a2;     // conv2 x F
        std::vector<std::vector<std::size_t>> pool_arg;  // pooled*F source positions
        Matrix flat;                // n x pooled*F
        ProbaMatrix proba;          // n x C
        std::vector<double> mean, var;
        bool training = false;  // statistics came from this batch
    };

    [[nodiscard]] Eigen::Map<const Matrix> mat(std::size_t off, std::size_t r, std::size_t c) const {
        return {params_.data() + off, static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)};
    }

    [[nodiscard]] bool relu() const { return cfg_.activation == "relu"; }

    Forward forward(const Matrix& X, bool training) const {
        const std::size_t need = shape_.input * channels_;
        if (static_cast<std::size_t>(X.cols()) != need)
            throw InvalidArgument("Cnn: feature width " + std::to_string(X.cols()) + " != trained " + std::to_string(need));
        const std::size_t n = static_cast<std::size_t>(X.rows());
        const std::size_t F = cfg_.filters;
        const auto L1 = static_cast<Eigen::Index>(shape_.conv1);
        const auto L2 = static_cast<Eigen::Index>(shape_.conv2);
        const auto W1 = mat(w1_, F, cfg_.kernel1 * channels_);
        const auto W2 = mat(w2_, F, cfg_.kernel2 * F);
        const Eigen::Map<const Eigen::RowVectorXd> B1(params_.data() + b1_, static_cast<Eigen::Index>(F));
        const Eigen::Map<const Eigen::RowVectorXd> B2(params_.data() + b2_, static_cast<Eigen::Index>(F));

        Forward f;
        f.x.resize(n);
        f.h1.resize(n);
        f.a1.resize(n);
        f.h2.resize(n);
        for (std::size_t s = 0; s < n; ++s) {
            f.x[s] = Eigen::Map<const Matrix>(X.row(static_cast<Eigen::Index>(s)).data(), static_cast<Eigen::Index>(shape_.input),
                                              static_cast<Eigen::Index>(channels_));
            Strided p1(f.x[s].data(), L1, static_cast<Eigen::Index>(cfg_.kernel1 * channels_), Eigen::OuterStride<>(static_cast<Eigen::Index>(channels_)));
            f.h1[s] = p1 * W1.transpose();
            f.h1[s].rowwise() += B1;
            f.a1[s] = relu() ? Matrix(f.h1[s].cwiseMax(0.0)) : f.h1[s];
            Strided p2(f.a1[s].data(), L2, static_cast<Eigen::Index>(cfg_.kernel2 * F), Eigen::OuterStride<>(static_cast<Eigen::Index>(F)));
            f.h2[s] = p2 * W2.transpose();
            f.h2[s].rowwise() += B2;
        }

        f.mean.assign(F, 0.0);
        f.var.assign(F, 0.0);
        f.training = training;
        if (training) {
            const double count = static_cast<double>(n) * static_cast<double>(L2);
            for (std::size_t s = 0; s < n; ++s)
                for (std::size_t o = 0; o < F; ++o) f.mean[o] += f.h2[s].col(static_cast<Eigen::Index>(o)).sum();
            for (auto& m : f.mean) m /= count;
            for (std::size_t s = 0; s < n; ++s)
                for (std::size_t o = 0; o < F; ++o)
                    f.var[o] += (f.h2[s].col(static_cast<Eigen::Index>(o)).array() - f.mean[o]).square().sum();
            for (auto& v : f.var) v /= count;
        } else {
            f.mean = running_mean_;
            f.var = running_var_;
        }

        const std::size_t P = shape_.pooled;
        f.xhat.resize(n);
        f.a2.resize(n);
        f.pool_arg.resize(n);
        f.flat.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(P * F));
        for (std::size_t s = 0; s < n; ++s) {
            f.xhat[s].resize(L2, static_cast<Eigen::Index>(F));
            for (std::size_t o = 0; o < F; ++o) {
                const double inv = 1.0 / std::sqrt(f.var[o] + cfg_.bn_epsilon);
                f.xhat[s].col(static_cast<Eigen::Index>(o)) = (f.h2[s].col(static_cast<Eigen::Index>(o)).array() - f.mean[o]) * inv;
            }
            Matrix bn = f.xhat[s];
            for (std::size_t o = 0; o < F; ++o)
                bn.col(static_cast<Eigen::Index>(o)) = bn.col(static_cast<Eigen::Index>(o)) * params_[gamma_ + o] +
                                                       Eigen::VectorXd::Constant(L2, params_[beta_ + o]);
            f.a2[s] = relu() ? Matrix(bn.cwiseMax(0.0)) : bn;
            f.pool_arg[s].resize(P * F);
            for (std::size_t t = 0; t < P; ++t) {
                for (std::size_t o = 0; o < F; ++o) {
                    std::size_t best = t * cfg_.pool_stride;
                    for (std::size_t k = 1; k < cfg_.pool_size; ++k) {
                        const std::size_t pos = t * cfg_.pool_stride + k;
                        if (f.a2[s](static_cast<Eigen::Index>(pos), static_cast<Eigen::Index>(o)) >
                            f.a2[s](static_cast<Eigen::Index>(best), static_cast<Eigen::Index>(o)))
                            best = pos;
                    }
                    f.pool_arg[s][t * F + o] = best;
                    f.flat(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t * F + o)) =
                        f.a2[s](static_cast<Eigen::Index>(best), static_cast<Eigen::Index>(o));
                }
            }
        }
        const auto Wd = mat(wd_, P * F, n_classes_);
        const Eigen::Map<const Eigen::RowVectorXd> Bd(params_.data() + bd_, static_cast<Eigen::Index>(n_classes_));
        f.proba = f.flat * Wd;
        f.proba.rowwise() += Bd;
        softmax_rows(f.proba);
        return f;
    }

    void update_running(const Forward& f) {
        const double m = cfg_.bn_momentum;
        for (std::size_t o = 0; o < cfg_.filters; ++o) {
            running_mean_[o] = m * running_mean_[o] + (1.0 - m) * f.mean[o];
            running_var_[o] = m * running_var_[o] + (1.0 - m) * f.var[o];
        }
    }

    double backward(const Forward& f, std::span<const std::size_t> y, std::vector<double>* grad) const {
        const std::size_t n = static_cast<std::size_t>(f.proba.rows());
        if (y.size() != n) throw InvalidArgument("Cnn: label count does not match sample count");
        const double dn = static_cast<double>(n);
        const std::size_t F = cfg_.filters;
        const std::size_t P = shape_.pooled;
        const auto W1 = mat(w1_, F, cfg_.kernel1 * channels_);
        const auto W2 = mat(w2_, F, cfg_.kernel2 * F);
        const auto Wd = mat(wd_, P * F, n_classes_);

        double loss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (y[i] >= n_classes_) throw InvalidArgument("Cnn: label out of range");
            loss -= std::log(std::max(f.proba(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(y[i])), 1e-300));
        }
        loss /= dn;
        const double sq = W1.squaredNorm() + W2.squaredNorm() + Wd.squaredNorm();
        loss += 0.5 * cfg_.l2 * sq / dn;
        if (!grad) return loss;

        grad->assign(params_.size(), 0.0);
        auto gmat = [&](std::size_t off, std::size_t r, std::size_t c) {
            return Eigen::Map<Matrix>(grad->data() + off, static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        };
        auto gW1 = gmat(w1_, F, cfg_.kernel1 * channels_);
        auto gW2 = gmat(w2_, F, cfg_.kernel2 * F);
        auto gWd = gmat(wd_, P * F, n_classes_);

        Matrix dlogit = f.proba;
        for (std::size_t i = 0; i < n; ++i) dlogit(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(y[i])) -= 1.0;
        dlogit /= dn;
        gWd = f.flat.transpose() * dlogit + (cfg_.l2 / dn) * Wd;
        Eigen::Map<Eigen::RowVectorXd>(grad->data() + bd_, static_cast<Eigen::Index>(n_classes_)) = dlogit.colwise().sum();
        const Matrix dflat = dlogit * Wd.transpose();

        const auto L2 = static_cast<Eigen::Index>(shape_.conv2);
        const auto L1 = static_cast<Eigen::Index>(shape_.conv1);
        // Gradient w.r.t. the batch-norm output, through pooling and activation.
        std::vector<Matrix> dbn(n);
        for (std::size_t s = 0; s < n; ++s) {
            Matrix da2 = Matrix::Zero(L2, static_cast<Eigen::Index>(F));
            for (std::size_t t = 0; t < P; ++t)
                for (std::size_t o = 0; o < F; ++o)
                    da2(static_cast<Eigen::Index>(f.pool_arg[s][t * F + o]), static_cast<Eigen::Index>(o)) +=
                        dflat(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t * F + o));
            if (relu()) da2 = da2.cwiseProduct((f.a2[s].array() > 0.0).cast<double>().matrix());
            dbn[s] = std::move(da2);
        }
        // Batch-norm backward over all (sample, position) pairs.
        const double count = dn * static_cast<double>(L2);
        std::vector<double> sum_dx(F, 0.0), sum_dx_xhat(F, 0.0);
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t o = 0; o < F; ++o) {
                const auto c = static_cast<Eigen::Index>(o);
                (*grad)[beta_ + o] += dbn[s].col(c).sum();
                (*grad)[gamma_ + o] += dbn[s].col(c).dot(f.xhat[s].col(c));
                sum_dx[o] += params_[gamma_ + o] * dbn[s].col(c).sum();
                sum_dx_xhat[o] += params_[gamma_ + o] * dbn[s].col(c).dot(f.xhat[s].col(c));
            }

        Eigen::Map<Eigen::RowVectorXd> gB1(grad->data() + b1_, static_cast<Eigen::Index>(F));
        Eigen::Map<Eigen::RowVectorXd> gB2(grad->data() + b2_, static_cast<Eigen::Index>(F));
        for (std::size_t s = 0; s < n; ++s) {
            Matrix dh2(L2, static_cast<Eigen::Index>(F));
            for (std::size_t o = 0; o < F; ++o) {
                const auto c = static_cast<Eigen::Index>(o);
                const double inv = 1.0 / std::sqrt(f.var[o] + cfg_.bn_epsilon);
                const double g = params_[gamma_ + o];
                if (f.training)
                    dh2.col(c) = (inv / count) * (count * g * dbn[s].col(c).array() - sum_dx[o] - f.xhat[s].col(c).array() * sum_dx_xhat[o]).matrix();
                else
                    dh2.col(c) = (g * inv) * dbn[s].col(c);  // running statistics are constants
            }
            Strided p2(f.a1[s].data(), L2, static_cast<Eigen::Index>(cfg_.kernel2 * F), Eigen::OuterStride<>(static_cast<Eigen::Index>(F)));
            gW2 += dh2.transpose() * p2;
            gB2 += dh2.colwise().sum();
            const Matrix dp2 = dh2 * W2;  // L2 x k2*F, overlapping windows
            Matrix da1 = Matrix::Zero(L1, static_cast<Eigen::Index>(F));
            for (Eigen::Index t = 0; t < L2; ++t) {
                Eigen::Map<Eigen::RowVectorXd> window(da1.data() + t * static_cast<Eigen::Index>(F), static_cast<Eigen::Index>(cfg_.kernel2 * F));
                window += dp2.row(t);
            }
            if (relu()) da1 = da1.cwiseProduct((f.h1[s].array() > 0.0).cast<double>().matrix());
            Strided p1(f.x[s].data(), L1, static_cast<Eigen::Index>(cfg_.kernel1 * channels_), Eigen::OuterStride<>(static_cast<Eigen::Index>(channels_)));
            gW1 += da1.transpose() * p1;
            gB1 += da1.colwise().sum();
        }
        gW1 += (cfg_.l2 / dn) * W1;
        gW2 += (cfg_.l2 / dn) * W2;
        return loss;
    }

    CnnConfig cfg_;
    CnnShape shape_{};
    std::size_t channels_ = 0;
    std::size_t n_classes_ = 0;
    std::size_t w1_ = 0, b1_ = 0, w2_ = 0, b2_ = 0, gamma_ = 0, beta_ = 0, wd_ = 0, bd_ = 0;
    std::vector<double> params_;
    std::vector<double> running_mean_, running_var_;
};

inline TrainOptions train_options(const CnnConfig& c) {
    return {c.lr, c.batch_size, c.max_epochs, c.patience, c.tol, false, 2, derive_seed(c.seed, 1)};
}

}  // namespace lmfp::classifiers
