#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "auricle/core/error.hpp"
#include "auricle/core/linalg.hpp"

namespace auricle {

struct PCAResult {
    Matrix scores;      // M x k
    Matrix components;  // k x N, orthonormal rows
    std::vector<double> explained_variance_ratio;
    std::vector<double> mean;
    std::vector<double> scale;  // all ones unless column scaling was requested

    double total_explained() const {
        double s = 0.0;
        for (double v : explained_variance_ratio) s += v;
        return s;
    }
};

struct PCAOptions {
    bool scale = false;
};

/// Principal components from the eigen-decomposition of the sample covariance.
inline PCAResult pca(const Matrix& x, std::size_t k, const PCAOptions& options = {}) {
    const std::size_t m = x.rows(), n = x.cols();
    if (m < 2) fail(ErrorCode::parameter, "PCA needs at least two rows");
    if (k < 1 || k > std::min(m - 1, n))
        fail(ErrorCode::parameter, "PCA component count " + std::to_string(k) + " outside [1, " +
                                       std::to_string(std::min(m - 1, n)) + "]");
    PCAResult out;
    out.mean.assign(n, 0.0);
    out.scale.assign(n, 1.0);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < n; ++c) out.mean[c] += x(r, c);
    for (auto& v : out.mean) v /= double(m);

    Matrix centered(m, n);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < n; ++c) centered(r, c) = x(r, c) - out.mean[c];
    if (options.scale) {
        for (std::size_t c = 0; c < n; ++c) {
            double ss = 0.0;
            for (std::size_t r = 0; r < m; ++r) ss += centered(r, c) * centered(r, c);
            const double sd = std::sqrt(ss / double(m - 1));
            if (sd > 0.0) {
                out.scale[c] = sd;
                for (std::size_t r = 0; r < m; ++r) centered(r, c) /= sd;
            }
        }
    }

    Matrix cov(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t r = 0; r < m; ++r) s += centered(r, i) * centered(r, j);
            cov(i, j) = cov(j, i) = s / double(m - 1);
        }
    const auto eig = jacobi_eigen(std::move(cov));
    double total = 0.0;
    for (double v : eig.values) total += std::max(v, 0.0);

    out.components = Matrix(k, n);
    out.scores = Matrix(m, k);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t c = 0; c < n; ++c) out.components(j, c) = eig.vectors(c, j);
        out.explained_variance_ratio.push_back(total > 0.0 ? std::max(eig.values[j], 0.0) / total : 0.0);
        for (std::size_t r = 0; r < m; ++r) {
            double s = 0.0;
            for (std::size_t c = 0; c < n; ++c) s += centered(r, c) * eig.vectors(c, j);
            out.scores(r, j) = s;
        }
    }
    return out;
}

}  // namespace auricle
