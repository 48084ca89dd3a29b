#pragma once

#include <Eigen/Dense>

namespace lmfp {

/// Samples are rows.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

}  // namespace lmfp
