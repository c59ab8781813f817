#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "auricle/analysis/dataset.hpp"
#include "auricle/analysis/kmeans.hpp"
#include "auricle/analysis/normalize.hpp"
#include "auricle/analysis/pca.hpp"

namespace auricle {

enum class Normalization { spatial, none };

struct PipelineOptions {
    std::size_t k_min = 2;
    std::size_t k_max = 8;
    std::size_t restarts = 10;
    std::uint64_t seed = 0;
    std::size_t components = 3;
    Normalization normalization = Normalization::spatial;
    bool scale = false;
    /// Cluster the normalized rows instead of the PCA scores.
    bool cluster_raw = false;
};

struct ClusterReport {
    std::vector<std::string> labels;
    std::vector<double> explained_variance_ratio;
    Matrix scores;
    std::vector<double> sse_by_k;  // K = 1..k_max
    std::vector<double> elbow_distance;
    std::size_t k = 0;
    std::vector<std::size_t> assignments;  // cluster 0 is the largest
    Matrix centers;
    double sse = 0.0;
    std::vector<double> silhouette;
    double mean_silhouette = 0.0;
    std::vector<std::string> warnings;

    double total_explained() const {
        return std::accumulate(explained_variance_ratio.begin(), explained_variance_ratio.end(), 0.0);
    }
};

namespace detail {

// Renumbers clusters by decreasing size, ties by first appearance.
inline void relabel_by_size(KMeansResult& r) {
    const std::size_t k = r.centers.rows();
    std::vector<std::size_t> size(k, 0), first(k, r.assignments.size());
    for (std::size_t i = 0; i < r.assignments.size(); ++i) {
        ++size[r.assignments[i]];
        first[r.assignments[i]] = std::min(first[r.assignments[i]], i);
    }
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
        return size[a] != size[b] ? size[a] > size[b] : first[a] < first[b];
    });
    std::vector<std::size_t> rank(k);
    Matrix centers(k, r.centers.cols());
    for (std::size_t i = 0; i < k; ++i) {
        rank[order[i]] = i;
        std::copy(r.centers.row(order[i]).begin(), r.centers.row(order[i]).end(), centers.row(i).begin());
    }
    for (auto& a : r.assignments) a = rank[a];
    r.centers = std::move(centers);
}

}  // namespace detail

/// normalize -> PCA -> SSE over K = 1..k_max -> elbow K* in [k_min, k_max)
/// (or K* = k_min when k_min == k_max) -> k-means at K* -> silhouette.
inline ClusterReport cluster_pipeline(const AESRMatrix& data, const PipelineOptions& options = {}) {
    data.validate();
    const std::size_t m = data.rows();
    if (m < 3) fail(ErrorCode::parameter, "clustering needs at least three datasets");
    if (options.k_min < 2 || options.k_min > options.k_max || options.k_max > m - 1)
        fail(ErrorCode::parameter, "k range [" + std::to_string(options.k_min) + ", " + std::to_string(options.k_max) +
                                       "] must lie within [2, " + std::to_string(m - 1) + "]");

    const AESRMatrix normalized = options.normalization == Normalization::spatial ? normalize_spatial(data) : data;
    const std::size_t k_pc = std::min({options.components, m - 1, data.cols()});
    const auto reduced = pca(normalized.values, k_pc, PCAOptions{options.scale});

    ClusterReport report;
    report.labels = data.labels;
    report.explained_variance_ratio = reduced.explained_variance_ratio;
    report.scores = reduced.scores;
    const Matrix& points = options.cluster_raw ? normalized.values : reduced.scores;

    std::vector<KMeansResult> runs;
    for (std::size_t k = 1; k <= options.k_max; ++k) {
        runs.push_back(kmeans(points, k, options.restarts, derive_seed(options.seed, "sse", k)));
        report.sse_by_k.push_back(runs.back().sse);
    }
    if (options.k_min == options.k_max) {
        report.k = options.k_min;
    } else {
        const auto elbow = select_k_elbow(report.sse_by_k, options.k_min);
        report.k = elbow.k;
        report.elbow_distance = elbow.distances;
        report.warnings = elbow.warnings;
    }
    auto final_run = runs[report.k - 1];
    detail::relabel_by_size(final_run);
    report.assignments = final_run.assignments;
    report.centers = final_run.centers;
    report.sse = final_run.sse;
    const auto sil = silhouette(points, report.assignments);
    report.silhouette = sil.values;
    report.mean_silhouette = sil.mean;
    return report;
}

struct ConcordanceResult {
    double fraction = 0.0;
    std::size_t subjects = 0;
    std::size_t matched = 0;
    Matrix match;  // rows: left-ear cluster, columns: right-ear cluster
};

/// Subject and side of a "<subject>-<L|R>[-...]" label.
inline std::pair<std::string, char> subject_side(const std::string& label) {
    const auto parts = split(label, '-');
    if (parts.size() < 2 || parts[1].size() != 1 || (parts[1][0] != 'L' && parts[1][0] != 'R'))
        fail(ErrorCode::label, "label '" + label + "' does not name a subject and side (e.g. S01-L)");
    return {std::string(parts[0]), parts[1][0]};
}

inline bool has_side_labels(const std::vector<std::string>& labels) {
    for (const auto& l : labels) {
        const auto parts = split(l, '-');
        if (parts.size() < 2 || (parts[1] != "L" && parts[1] != "R")) return false;
    }
    return !labels.empty();
}

inline ConcordanceResult concordance(const ClusterReport& report) {
    std::map<std::string, std::pair<long, long>> ears;
    for (std::size_t i = 0; i < report.labels.size(); ++i) {
        const auto [subject, side] = subject_side(report.labels[i]);
        auto [it, fresh] = ears.try_emplace(subject, -1, -1);
        long& slot = side == 'L' ? it->second.first : it->second.second;
        if (slot >= 0) fail(ErrorCode::label, "subject " + subject + " has two " + side + " ears");
        slot = static_cast<long>(report.assignments[i]);
    }
    ConcordanceResult out;
    out.match = Matrix(report.k, report.k);
    for (const auto& [subject, lr] : ears) {
        if (lr.first < 0 || lr.second < 0) fail(ErrorCode::label, "subject " + subject + " is missing an ear");
        out.match(std::size_t(lr.first), std::size_t(lr.second)) += 1.0;
        if (lr.first == lr.second) ++out.matched;
    }
    out.subjects = ears.size();
    out.fraction = out.subjects ? double(out.matched) / double(out.subjects) : 0.0;
    return out;
}

}  // namespace auricle
