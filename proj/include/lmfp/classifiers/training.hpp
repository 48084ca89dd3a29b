#pragma once

// Mini-batch training loop shared by the MLP and CNN. A network type must
// provide:
//   std::vector<double>& params();
//   double loss_and_grad(const Matrix& X, std::span<const std::size_t> y,
//                        std::vector<double>* grad, bool training);
//   ProbaMatrix predict_proba(const Matrix& X) const;
// and be copyable (the best epoch is kept as a copy).

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <sstream>
#include <vector>

#include "lmfp/classifiers/proba.hpp"
#include "lmfp/core/error.hpp"
#include "lmfp/core/random.hpp"

namespace lmfp::classifiers {

class Adam {
public:
    Adam(std::size_t n, double lr, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8)
        : lr_(lr), b1_(beta1), b2_(beta2), eps_(eps), m_(n, 0.0), v_(n, 0.0) {}

    void step(std::vector<double>& params, const std::vector<double>& grad) {
        ++t_;
        const double c1 = 1.0 - std::pow(b1_, static_cast<double>(t_));
        const double c2 = 1.0 - std::pow(b2_, static_cast<double>(t_));
        for (std::size_t i = 0; i < params.size(); ++i) {
            m_[i] = b1_ * m_[i] + (1.0 - b1_) * grad[i];
            v_[i] = b2_ * v_[i] + (1.0 - b2_) * grad[i] * grad[i];
            params[i] -= lr_ * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + eps_);
        }
    }

    [[nodiscard]] double lr() const { return lr_; }
    void set_lr(double lr) { lr_ = lr; }

private:
    double lr_, b1_, b2_, eps_;
    std::vector<double> m_, v_;
    std::uint64_t t_ = 0;
};

class NonFiniteLoss : public Error {
public:
    using Error::Error;
};

struct TrainOptions {
    double lr = 1e-4;
    std::size_t batch_size = 48;
    std::size_t max_epochs = 200;
    std::size_t patience = 5;
    double tol = 1e-4;             // minimum validation-loss improvement
    bool adaptive_lr = false;      // halve lr after `decay_after` stalled epochs
    std::size_t decay_after = 2;
    std::uint64_t seed = 0;
};

struct TrainHistory {
    std::vector<double> train_loss;
    std::vector<double> val_loss;
    std::vector<double> lr;
    std::size_t best_epoch = 0;
    bool early_stopped = false;
};

/// Trains in place. Monitors validation loss (training loss when no
/// validation rows are given) and leaves `net` at its best epoch.
template <typename Net>
TrainHistory train_network(Net& net, const Matrix& X, std::span<const std::size_t> y, const Matrix& Xval,
                           std::span<const std::size_t> yval, const TrainOptions& opt) {
    if (opt.batch_size == 0) throw InvalidArgument("batch_size must be >= 1");
    const std::size_t n = static_cast<std::size_t>(X.rows());
    Adam adam(net.params().size(), opt.lr);
    Rng rng(opt.seed);
    std::vector<double> grad(net.params().size());
    TrainHistory hist;
    double best = std::numeric_limits<double>::infinity();
    Net best_net = net;
    std::size_t stall = 0;
    const bool have_val = Xval.rows() > 0;

    Matrix xb;
    std::vector<std::size_t> yb;
    for (std::size_t epoch = 0; epoch < opt.max_epochs; ++epoch) {
        const auto order = permutation(n, rng);
        double epoch_loss = 0.0;
        for (std::size_t start = 0; start < n; start += opt.batch_size) {
            const std::size_t m = std::min(opt.batch_size, n - start);
            xb.resize(static_cast<Eigen::Index>(m), X.cols());
            yb.resize(m);
            for (std::size_t k = 0; k < m; ++k) {
                xb.row(static_cast<Eigen::Index>(k)) = X.row(static_cast<Eigen::Index>(order[start + k]));
                yb[k] = y[order[start + k]];
            }
            const double loss = net.loss_and_grad(xb, yb, &grad, true);
            if (!std::isfinite(loss)) {
                std::ostringstream msg;
                msg << "non-finite training loss at epoch " << epoch << ", batch starting at " << start << " (lr " << adam.lr() << ")";
                throw NonFiniteLoss(msg.str());
            }
            epoch_loss += loss * static_cast<double>(m);
            adam.step(net.params(), grad);
        }
        hist.train_loss.push_back(epoch_loss / static_cast<double>(n));
        hist.lr.push_back(adam.lr());
        const double monitored = have_val ? net.loss_and_grad(Xval, yval, nullptr, false) : hist.train_loss.back();
        hist.val_loss.push_back(monitored);
        if (!std::isfinite(monitored)) throw NonFiniteLoss("non-finite validation loss at epoch " + std::to_string(epoch));
        if (monitored < best - opt.tol) {
            best = monitored;
            best_net = net;
            hist.best_epoch = epoch;
            stall = 0;
        } else {
            ++stall;
            if (stall >= opt.patience) {
                hist.early_stopped = true;
                break;
            }
            if (opt.adaptive_lr && stall % opt.decay_after == 0) adam.set_lr(adam.lr() * 0.5);
        }
    }
    net = std::move(best_net);
    return hist;
}

}  // namespace lmfp::classifiers
