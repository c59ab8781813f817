#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "auricle/core/error.hpp"
#include "auricle/core/linalg.hpp"
#include "auricle/core/rng.hpp"

namespace auricle {

/// Product-moment correlation of two equal-length samples.
inline double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) fail(ErrorCode::parameter, "correlation needs samples of equal length");
    const std::size_t n = x.size();
    if (n < 3) fail(ErrorCode::parameter, "correlation needs at least three pairs");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (!(sxx > 0.0) || !(syy > 0.0)) fail(ErrorCode::undefined_correlation, "a sample has zero variance");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

struct CorrelationResult {
    double pcc = 0.0;
    double p_value = 1.0;
    std::size_t n = 0;
    std::size_t permutations = 0;
    /// Uncorrelated when p > 0.05 or |PCC| < 0.4.
    bool correlated = false;
};

inline constexpr double significance_level = 0.05;
inline constexpr double min_effect_pcc = 0.4;

/// PCC with a two-sided permutation p-value, p = (1 + #{|r_perm| >= |r|}) / (1 + n_perm).
inline CorrelationResult correlation(std::span<const double> x, std::span<const double> y,
                                     std::size_t permutations = 10000, std::uint64_t seed = 0) {
    CorrelationResult out;
    out.pcc = pearson(x, y);
    out.n = x.size();
    out.permutations = permutations;
    if (permutations > 0) {
        Rng rng(derive_seed(seed, "permutation"));
        std::vector<double> shuffled(y.begin(), y.end());
        const double observed = std::abs(out.pcc) - 1e-12;
        std::size_t hits = 0;
        for (std::size_t p = 0; p < permutations; ++p) {
            rng.shuffle(shuffled.begin(), shuffled.end());
            if (std::abs(pearson(x, shuffled)) >= observed) ++hits;
        }
        out.p_value = double(hits + 1) / double(permutations + 1);
    }
    out.correlated = !(out.p_value > significance_level || std::abs(out.pcc) < min_effect_pcc);
    return out;
}

struct RepeatabilityReport {
    std::vector<double> cv;  // per column
    double mean_cv = 0.0;
};

/// Per-column sample standard deviation over mean for an R x N replicate matrix.
inline RepeatabilityReport repeatability_cv(const Matrix& replicates) {
    const std::size_t r = replicates.rows(), n = replicates.cols();
    if (r < 2) fail(ErrorCode::parameter, "repeatability needs at least two replicates");
    RepeatabilityReport out;
    for (std::size_t c = 0; c < n; ++c) {
        double mean = 0.0;
        for (std::size_t i = 0; i < r; ++i) mean += replicates(i, c);
        mean /= double(r);
        if (mean == 0.0) fail(ErrorCode::domain, "column " + std::to_string(c + 1) + " has zero mean");
        double ss = 0.0;
        for (std::size_t i = 0; i < r; ++i) ss += (replicates(i, c) - mean) * (replicates(i, c) - mean);
        out.cv.push_back(std::sqrt(ss / double(r - 1)) / std::abs(mean));
    }
    for (double v : out.cv) out.mean_cv += v;
    if (n) out.mean_cv /= double(n);
    return out;
}

struct ExclusionBounds {
    double lo = 0.05;
    double hi = 20.0;
};

/// Indices of normalized rows with every value inside the bounds.
inline std::vector<std::size_t> normal_rows(const std::vector<std::vector<double>>& rows,
                                            const ExclusionBounds& bounds = {}) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        bool ok = true;
        for (double v : rows[i]) ok = ok && v >= bounds.lo && v <= bounds.hi;
        if (ok) keep.push_back(i);
    }
    return keep;
}

}  // namespace auricle
