#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "lmfp/core/error.hpp"
#include "lmfp/core/matrix.hpp"
#include "lmfp/core/random.hpp"

namespace lmfp::eval {

struct PcaResult {
    Matrix points;                    // n x dims
    Matrix components;                // dims x D, unit rows
    std::vector<double> explained;    // fraction of total variance per component
};

/// Mean-centered PCA by power iteration with deflation. Works on X^T X v
/// products so the D x D covariance is never formed.
inline PcaResult pca_projection(const Matrix& X, std::size_t dims = 2, std::uint64_t seed = 0, std::size_t max_iter = 2000,
                                double tol = 1e-13) {
    if (X.rows() < 2) throw InvalidArgument("pca_projection needs at least 2 vectors");
    const Eigen::RowVectorXd mean = X.colwise().mean();
    const Matrix centered = X.rowwise() - mean;
    const double total = centered.squaredNorm();
    if (total <= 0.0) throw InvalidArgument("pca_projection: input has zero variance");
    dims = std::min<std::size_t>(dims, static_cast<std::size_t>(X.cols()));

    PcaResult r;
    r.components = Matrix::Zero(static_cast<Eigen::Index>(dims), X.cols());
    Rng rng(seed);
    for (std::size_t k = 0; k < dims; ++k) {
        Vector v(X.cols());
        for (Eigen::Index d = 0; d < v.size(); ++d) v[d] = rng.normal();
        auto deflate = [&](Vector& u) {
            for (std::size_t j = 0; j < k; ++j) {
                const Vector cj = r.components.row(static_cast<Eigen::Index>(j)).transpose();
                u -= cj.dot(u) * cj;
            }
        };
        deflate(v);
        v.normalize();
        double lambda = 0.0;
        for (std::size_t it = 0; it < max_iter; ++it) {
            Vector w = centered.transpose() * (centered * v);
            deflate(w);
            const double norm = w.norm();
            if (norm == 0.0) break;
            w /= norm;
            const double change = std::min((w - v).norm(), (w + v).norm());
            v = w;
            lambda = norm;
            if (change < tol) break;
        }
        // Sign convention: largest-magnitude coordinate positive.
        Eigen::Index arg = 0;
        v.cwiseAbs().maxCoeff(&arg);
        if (v[arg] < 0) v = -v;
        r.components.row(static_cast<Eigen::Index>(k)) = v.transpose();
        r.explained.push_back(lambda / total);
    }
    r.points = centered * r.components.transpose();
    return r;
}

}  // namespace lmfp::eval
