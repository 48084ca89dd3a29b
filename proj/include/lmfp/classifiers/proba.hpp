#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "lmfp/core/error.hpp"
#include "lmfp/core/matrix.hpp"

namespace lmfp::classifiers {

/// One row per sample, one column per class.
using ProbaMatrix = Matrix;

/// Index of the largest entry; ties go to the lowest index.
template <typename Row>
std::size_t argmax_predict(const Row& row) {
    std::size_t best = 0;
    for (Eigen::Index c = 1; c < static_cast<Eigen::Index>(row.size()); ++c)
        if (row[c] > row[static_cast<Eigen::Index>(best)]) best = static_cast<std::size_t>(c);
    return best;
}

inline std::size_t argmax_predict(std::span<const double> row) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < row.size(); ++c)
        if (row[c] > row[best]) best = c;
    return best;
}

inline std::vector<std::size_t> argmax_all(const ProbaMatrix& p) {
    std::vector<std::size_t> out(static_cast<std::size_t>(p.rows()));
    for (Eigen::Index i = 0; i < p.rows(); ++i) out[static_cast<std::size_t>(i)] = argmax_predict(p.row(i));
    return out;
}

/// In-place softmax of each row of a logit matrix.
inline void softmax_rows(Matrix& z) {
    for (Eigen::Index i = 0; i < z.rows(); ++i) {
        const double m = z.row(i).maxCoeff();
        z.row(i) = (z.row(i).array() - m).exp();
        z.row(i) /= z.row(i).sum();
    }
}

/// Checks the distribution contract: entries >= 0, rows sum to 1 +- tol.
inline bool valid_proba(const ProbaMatrix& p, double tol = 1e-6) {
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
        if ((p.row(i).array() < 0.0).any() || !p.row(i).allFinite()) return false;
        if (std::abs(p.row(i).sum() - 1.0) > tol) return false;
    }
    return true;
}

inline void check_labels(std::span<const std::size_t> y, std::size_t n_rows, std::size_t n_classes) {
    if (y.size() != n_rows) throw InvalidArgument("label count does not match sample count");
    if (n_classes < 2) throw InvalidArgument("need at least 2 classes");
    std::vector<std::size_t> count(n_classes, 0);
    for (auto c : y) {
        if (c >= n_classes) throw InvalidArgument("label out of range");
        ++count[c];
    }
    for (std::size_t c = 0; c < n_classes; ++c)
        if (count[c] == 0) throw InvalidArgument("class " + std::to_string(c) + " has no training samples");
}

}  // namespace lmfp::classifiers
