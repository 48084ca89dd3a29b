#pragma once

#include <algorithm>
#include <cmath>
#include <span>

#include "lmfp/core/error.hpp"

namespace lmfp::textstats {

struct CorrelationResult {
    double rho = 0.0;    // Pearson correlation
    double slope = 0.0;  // least-squares slope of y on x
};

inline CorrelationResult pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw InvalidArgument("pearson: length mismatch");
    if (xs.size() < 2) throw InvalidArgument("pearson: need at least 2 points");
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw InvalidArgument("pearson: zero variance");
    const double rho = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    return {rho, sxy / sxx};
}

}  // namespace lmfp::textstats
