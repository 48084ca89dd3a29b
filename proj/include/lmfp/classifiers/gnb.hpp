#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "lmfp/classifiers/proba.hpp"
#include "lmfp/core/io.hpp"
#include "lmfp/core/matrix_json.hpp"

namespace lmfp::classifiers {

struct GnbConfig {
    /// Added variance = var_smoothing * (largest per-feature variance).
    double var_smoothing = 1e-9;
};

/// Gaussian naive Bayes with per-class, per-dimension mean and variance.
class GaussianNB {
public:
    static GaussianNB fit(const Matrix& X, std::span<const std::size_t> y, std::size_t n_classes, const GnbConfig& cfg = {}) {
        check_labels(y, static_cast<std::size_t>(X.rows()), n_classes);
        const auto D = X.cols();
        GaussianNB m;
        m.mean_ = Matrix::Zero(static_cast<Eigen::Index>(n_classes), D);
        m.var_ = Matrix::Zero(static_cast<Eigen::Index>(n_classes), D);
        m.log_prior_.assign(n_classes, 0.0);
        std::vector<double> count(n_classes, 0.0);
        for (Eigen::Index i = 0; i < X.rows(); ++i) {
            const auto c = static_cast<Eigen::Index>(y[static_cast<std::size_t>(i)]);
            m.mean_.row(c) += X.row(i);
            count[static_cast<std::size_t>(c)] += 1.0;
        }
        for (std::size_t c = 0; c < n_classes; ++c) m.mean_.row(static_cast<Eigen::Index>(c)) /= count[c];
        for (Eigen::Index i = 0; i < X.rows(); ++i) {
            const auto c = static_cast<Eigen::Index>(y[static_cast<std::size_t>(i)]);
            m.var_.row(c).array() += (X.row(i) - m.mean_.row(c)).array().square();
        }
        for (std::size_t c = 0; c < n_classes; ++c) m.var_.row(static_cast<Eigen::Index>(c)) /= count[c];

        const Eigen::RowVectorXd global_mean = X.colwise().mean();
        const double max_var = X.rows() > 0 ? ((X.rowwise() - global_mean).array().square().colwise().sum() / static_cast<double>(X.rows())).maxCoeff() : 0.0;
        m.epsilon_ = cfg.var_smoothing * max_var;
        m.var_.array() += m.epsilon_;
        const double n = static_cast<double>(X.rows());
        for (std::size_t c = 0; c < n_classes; ++c) m.log_prior_[c] = std::log(count[c] / n);
        return m;
    }

    [[nodiscard]] ProbaMatrix predict_proba(const Matrix& X) const {
        if (X.cols() != mean_.cols())
            throw InvalidArgument("GaussianNB: feature width " + std::to_string(X.cols()) + " != trained " + std::to_string(mean_.cols()));
        const auto C = mean_.rows();
        ProbaMatrix out(X.rows(), C);
        for (Eigen::Index i = 0; i < X.rows(); ++i) {
            for (Eigen::Index c = 0; c < C; ++c) {
                double lp = log_prior_[static_cast<std::size_t>(c)];
                for (Eigen::Index d = 0; d < X.cols(); ++d) {
                    const double v = var_(c, d);
                    const double diff = X(i, d) - mean_(c, d);
                    lp -= 0.5 * (std::log(2.0 * std::numbers::pi * v) + diff * diff / v);
                }
                out(i, c) = lp;
            }
            const double mx = out.row(i).maxCoeff();
            out.row(i) = (out.row(i).array() - mx).exp();
            out.row(i) /= out.row(i).sum();
        }
        return out;
    }

    [[nodiscard]] std::size_t n_classes() const { return static_cast<std::size_t>(mean_.rows()); }
    [[nodiscard]] std::size_t n_features() const { return static_cast<std::size_t>(mean_.cols()); }
    [[nodiscard]] const Matrix& means() const { return mean_; }
    [[nodiscard]] const Matrix& variances() const { return var_; }
    [[nodiscard]] double epsilon() const { return epsilon_; }

    [[nodiscard]] json to_json() const;
    static GaussianNB from_json(const json& j);

private:
    Matrix mean_;
    Matrix var_;
    std::vector<double> log_prior_;
    double epsilon_ = 0.0;
};


inline json GaussianNB::to_json() const {
    return {{"mean", matrix_to_json(mean_)},
            {"var", matrix_to_json(var_)},
            {"log_prior", log_prior_},
            {"epsilon", epsilon_}};
}

inline GaussianNB GaussianNB::from_json(const json& j) {
    GaussianNB m;
    m.mean_ = matrix_from_json(j.at("mean"));
    m.var_ = matrix_from_json(j.at("var"));
    m.log_prior_ = j.at("log_prior").get<std::vector<double>>();
    m.epsilon_ = j.at("epsilon").get<double>();
    return m;
}

}  // namespace lmfp::classifiers
