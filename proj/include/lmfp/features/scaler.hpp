#pragma once

#include <algorithm>
#include <vector>

#include "lmfp/core/io.hpp"
#include "lmfp/core/matrix.hpp"

namespace lmfp::features {

/// Per-dimension min-max map onto [lo, hi], fitted on training rows only.
/// Constant dimensions map to the midpoint; unseen data is clamped.
class MinMaxScaler {
public:
    static constexpr double kLow = -3.0;
    static constexpr double kHigh = 3.0;

    MinMaxScaler() = default;

    static MinMaxScaler fit(const Matrix& train) {
        if (train.rows() == 0) throw InvalidArgument("MinMaxScaler::fit on an empty training set");
        MinMaxScaler s;
        s.min_.resize(static_cast<std::size_t>(train.cols()));
        s.max_.resize(static_cast<std::size_t>(train.cols()));
        for (Eigen::Index d = 0; d < train.cols(); ++d) {
            s.min_[static_cast<std::size_t>(d)] = train.col(d).minCoeff();
            s.max_[static_cast<std::size_t>(d)] = train.col(d).maxCoeff();
        }
        return s;
    }

    [[nodiscard]] bool fitted() const { return !min_.empty(); }
    [[nodiscard]] std::size_t dim() const { return min_.size(); }

    [[nodiscard]] Matrix transform(const Matrix& x) const {
        if (!fitted()) throw Error("MinMaxScaler used before fit");
        if (static_cast<std::size_t>(x.cols()) != dim())
            throw InvalidArgument("MinMaxScaler: width " + std::to_string(x.cols()) + " != fitted " + std::to_string(dim()));
        Matrix out(x.rows(), x.cols());
        for (Eigen::Index d = 0; d < x.cols(); ++d) {
            const double lo = min_[static_cast<std::size_t>(d)];
            const double range = max_[static_cast<std::size_t>(d)] - lo;
            for (Eigen::Index i = 0; i < x.rows(); ++i) {
                if (range == 0.0) {
                    out(i, d) = 0.5 * (kLow + kHigh);
                } else {
                    const double y = kLow + (kHigh - kLow) * (x(i, d) - lo) / range;
                    out(i, d) = std::clamp(y, kLow, kHigh);
                }
            }
        }
        return out;
    }

    [[nodiscard]] const std::vector<double>& min() const { return min_; }
    [[nodiscard]] const std::vector<double>& max() const { return max_; }

    [[nodiscard]] json to_json() const {
        return {{"format", "lmfp-minmax-scaler"}, {"version", 1}, {"low", kLow}, {"high", kHigh}, {"min", min_}, {"max", max_}};
    }

    static MinMaxScaler from_json(const json& j) {
        if (j.value("format", "") != "lmfp-minmax-scaler") throw Error("not a scaler file");
        MinMaxScaler s;
        s.min_ = j.at("min").get<std::vector<double>>();
        s.max_ = j.at("max").get<std::vector<double>>();
        if (s.min_.size() != s.max_.size()) throw Error("scaler min/max length mismatch");
        for (std::size_t d = 0; d < s.min_.size(); ++d)
            if (s.max_[d] < s.min_[d]) throw Error("scaler max < min at dimension " + std::to_string(d));
        return s;
    }

private:
    std::vector<double> min_;
    std::vector<double> max_;
};

}  // namespace lmfp::features
