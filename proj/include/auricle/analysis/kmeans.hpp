#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "auricle/core/error.hpp"
#include "auricle/core/linalg.hpp"
#include "auricle/core/rng.hpp"
#include "auricle/core/text.hpp"

namespace auricle {

/// Sum over clusters of squared Euclidean distances from members to their center.
inline double cluster_sse(const Matrix& points, std::span<const std::size_t> assignments, const Matrix& centers) {
    double s = 0.0;
    for (std::size_t i = 0; i < points.rows(); ++i) s += squared_distance(points.row(i), centers.row(assignments[i]));
    return s;
}

inline std::size_t nearest_center(std::span<const double> p, const Matrix& centers) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centers.rows(); ++c) {
        const double d = squared_distance(p, centers.row(c));
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

struct KMeansResult {
    std::vector<std::size_t> assignments;
    Matrix centers;
    double sse = 0.0;
    int iterations = 0;
};

namespace detail {

inline Matrix kmeans_pp_seeds(const Matrix& x, std::size_t k, Rng& rng) {
    const std::size_t m = x.rows(), n = x.cols();
    Matrix centers(k, n);
    auto put = [&](std::size_t c, std::size_t i) { std::copy(x.row(i).begin(), x.row(i).end(), centers.row(c).begin()); };
    put(0, rng.below(m));
    std::vector<double> d2(m);
    for (std::size_t i = 0; i < m; ++i) d2[i] = squared_distance(x.row(i), centers.row(0));
    for (std::size_t c = 1; c < k; ++c) {
        double total = 0.0;
        for (double v : d2) total += v;
        std::size_t pick = 0;
        if (total > 0.0) {
            const double u = rng.uniform() * total;
            double acc = 0.0;
            pick = m;
            for (std::size_t i = 0; i < m; ++i) {
                acc += d2[i];
                if (d2[i] > 0.0 && u < acc) {
                    pick = i;
                    break;
                }
            }
            if (pick == m)  // rounding at the top end
                for (std::size_t i = m; i-- > 0;)
                    if (d2[i] > 0.0) {
                        pick = i;
                        break;
                    }
        } else {
            pick = rng.below(m);
        }
        put(c, pick);
        for (std::size_t i = 0; i < m; ++i) d2[i] = std::min(d2[i], squared_distance(x.row(i), centers.row(c)));
    }
    return centers;
}

inline KMeansResult lloyd(const Matrix& x, Matrix centers, int max_iterations) {
    const std::size_t m = x.rows(), n = x.cols(), k = centers.rows();
    KMeansResult r;
    r.assignments.assign(m, 0);
    double prev_sse = std::numeric_limits<double>::infinity();
    double magnitude = 0.0;  // rounding allowance for the monotonicity check
    for (double v : x.data()) magnitude += v * v;
    bool first = true;
    for (int it = 0; it < max_iterations; ++it) {
        bool changed = first;
        for (std::size_t i = 0; i < m; ++i) {
            const auto c = nearest_center(x.row(i), centers);
            if (c != r.assignments[i]) {
                r.assignments[i] = c;
                changed = true;
            }
        }
        first = false;
        r.iterations = it + 1;
        if (!changed) break;

        // Empty clusters take over the point that is worst served by its center.
        std::vector<std::size_t> count(k, 0);
        for (auto a : r.assignments) ++count[a];
        for (std::size_t c = 0; c < k; ++c) {
            if (count[c] != 0) continue;
            std::size_t far = 0;
            double far_d = -1.0;
            for (std::size_t i = 0; i < m; ++i) {
                if (count[r.assignments[i]] < 2) continue;
                const double d = squared_distance(x.row(i), centers.row(r.assignments[i]));
                if (d > far_d) {
                    far_d = d;
                    far = i;
                }
            }
            --count[r.assignments[far]];
            r.assignments[far] = c;
            count[c] = 1;
            std::copy(x.row(far).begin(), x.row(far).end(), centers.row(c).begin());
        }

        Matrix next(k, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) next(r.assignments[i], j) += x(i, j);
        for (std::size_t c = 0; c < k; ++c)
            for (std::size_t j = 0; j < n; ++j) next(c, j) /= double(count[c]);
        centers = std::move(next);

        const double sse = cluster_sse(x, r.assignments, centers);
        if (sse > prev_sse + 1e-12 * (prev_sse + magnitude))
            fail(ErrorCode::domain, "k-means SSE increased from " + format_double(prev_sse) + " to " + format_double(sse));
        prev_sse = sse;
    }
    r.centers = std::move(centers);
    r.sse = cluster_sse(x, r.assignments, r.centers);
    return r;
}

}  // namespace detail

/// Best-of-restarts Lloyd iterations with k-means++ seeding. Restart i draws
/// from sub-seed (seed, "kmeans", i); the lowest SSE wins, earliest on ties.
inline KMeansResult kmeans(const Matrix& points, std::size_t k, std::size_t restarts, std::uint64_t seed,
                           int max_iterations = 300) {
    if (points.rows() == 0) fail(ErrorCode::empty_input, "k-means needs at least one point");
    if (k < 1 || k > points.rows())
        fail(ErrorCode::parameter, "k-means K = " + std::to_string(k) + " outside [1, " + std::to_string(points.rows()) + "]");
    if (restarts < 1) fail(ErrorCode::parameter, "k-means needs at least one restart");
    KMeansResult best;
    best.sse = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < restarts; ++r) {
        Rng rng(derive_seed(seed, "kmeans", r));
        auto run = detail::lloyd(points, detail::kmeans_pp_seeds(points, k, rng), max_iterations);
        if (run.sse < best.sse) best = std::move(run);
    }
    return best;
}

struct SilhouetteResult {
    std::vector<double> values;
    double mean = 0.0;
};

/// s(i) = (b - a) / max(a, b) with a the mean distance to the rest of the own
/// cluster and b the smallest mean distance to another cluster. Members of
/// singleton clusters score 0.
inline SilhouetteResult silhouette(const Matrix& points, std::span<const std::size_t> assignments) {
    const std::size_t m = points.rows();
    if (assignments.size() != m) fail(ErrorCode::parameter, "one assignment per point is required");
    std::size_t k = 0;
    for (auto a : assignments) k = std::max(k, a + 1);
    std::vector<std::size_t> size(k, 0);
    for (auto a : assignments) ++size[a];
    if (k < 2) fail(ErrorCode::undefined_silhouette, "silhouette needs at least two clusters");
    for (auto s : size)
        if (s == 0) fail(ErrorCode::undefined_silhouette, "silhouette needs every cluster non-empty");

    SilhouetteResult out;
    out.values.assign(m, 0.0);
    std::vector<double> sum(k);
    for (std::size_t i = 0; i < m; ++i) {
        const auto own = assignments[i];
        if (size[own] == 1) continue;
        std::fill(sum.begin(), sum.end(), 0.0);
        for (std::size_t j = 0; j < m; ++j)
            if (j != i) sum[assignments[j]] += euclidean(points.row(i), points.row(j));
        const double a = sum[own] / double(size[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c)
            if (c != own) b = std::min(b, sum[c] / double(size[c]));
        if (a < b) out.values[i] = 1.0 - a / b;
        else if (a > b) out.values[i] = b / a - 1.0;
    }
    for (double v : out.values) out.mean += v;
    out.mean /= double(m);
    return out;
}

struct ElbowResult {
    std::size_t k = 0;
    /// Distance of each (K, SSE) point from the chord, K = 1..K_max, on axes scaled to [0, 1].
    std::vector<double> distances;
    std::vector<std::string> warnings;
};

/// Elbow of an SSE curve given for K = 1..K_max: the interior K (at least
/// `k_min`) farthest from the chord joining the end points. Ties go to the
/// smaller K.
inline ElbowResult select_k_elbow(std::span<const double> sse_by_k, std::size_t k_min = 2) {
    const std::size_t kmax = sse_by_k.size();
    if (kmax < 3) fail(ErrorCode::parameter, "elbow selection needs SSE for at least K = 1..3");
    ElbowResult out;
    for (std::size_t i = 1; i < kmax; ++i)
        if (sse_by_k[i] > sse_by_k[i - 1] * (1.0 + 1e-9) + 1e-12)
            out.warnings.push_back("SSE increases from K = " + std::to_string(i) + " to K = " + std::to_string(i + 1));

    const double lo = *std::min_element(sse_by_k.begin(), sse_by_k.end());
    const double hi = *std::max_element(sse_by_k.begin(), sse_by_k.end());
    const double span = hi - lo;
    out.distances.assign(kmax, 0.0);
    if (span > 0.0) {
        const double x0 = 0.0, y0 = (sse_by_k.front() - lo) / span;
        const double x1 = 1.0, y1 = (sse_by_k.back() - lo) / span;
        const double len = std::hypot(x1 - x0, y1 - y0);
        for (std::size_t i = 0; i < kmax; ++i) {
            const double x = double(i) / double(kmax - 1), y = (sse_by_k[i] - lo) / span;
            out.distances[i] = std::abs((x1 - x0) * (y0 - y) - (x0 - x) * (y1 - y0)) / len;
        }
    } else {
        out.warnings.push_back("SSE curve is flat");
    }
    const std::size_t first = std::max<std::size_t>(k_min, 2);
    if (first > kmax - 1) fail(ErrorCode::parameter, "no interior K at or above k_min");
    out.k = first;
    for (std::size_t k = first; k <= kmax - 1; ++k)
        if (out.distances[k - 1] > out.distances[out.k - 1] + 1e-12) out.k = k;
    return out;
}

}  // namespace auricle
