#pragma once

#include <vector>

#include "lmfp/core/io.hpp"
#include "lmfp/core/matrix.hpp"

namespace lmfp {


inline json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(std::vector<double>(m.row(i).begin(), m.row(i).end()));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", rows}};
}

inline Matrix matrix_from_json(const json& j) {
    const auto r = j.at("rows").get<Eigen::Index>();
    const auto c = j.at("cols").get<Eigen::Index>();
    Matrix m(r, c);
    const auto& data = j.at("data");
    if (static_cast<Eigen::Index>(data.size()) != r) throw Error("matrix row count mismatch");
    for (Eigen::Index i = 0; i < r; ++i) {
        const auto row = data[static_cast<std::size_t>(i)].get<std::vector<double>>();
        if (static_cast<Eigen::Index>(row.size()) != c) throw Error("matrix column count mismatch");
        for (Eigen::Index k = 0; k < c; ++k) m(i, k) = row[static_cast<std::size_t>(k)];
    }
    return m;
}


}  // namespace lmfp
