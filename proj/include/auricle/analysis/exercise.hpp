#pragma once

#include <string>
#include <vector>

#include "auricle/acquisition/session.hpp"
#include "auricle/analysis/dataset.hpp"
#include "auricle/analysis/normalize.hpp"
#include "auricle/analysis/statistics.hpp"

namespace auricle {

/// Baseline-normalized AESR of the given periods of each session, one row per
/// (session, period), labelled "<subject>-<test>-<period>".
inline AESRMatrix period_matrix(const std::vector<SessionRecord>& sessions, const std::vector<std::size_t>& periods) {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> rows;
    for (const auto& s : sessions) {
        const auto norm = normalize_temporal(s);
        for (auto p : periods) {
            if (p >= 4) fail(ErrorCode::parameter, "period index out of range");
            labels.push_back(s.label(p));
            rows.push_back(norm[p]);
        }
    }
    if (rows.empty()) fail(ErrorCode::empty_input, "no sessions");
    return AESRMatrix::from_rows(std::move(labels), rows);
}

enum class Vital { hr, bp };

struct ExerciseCorrelation {
    CorrelationResult result;
    std::size_t excluded = 0;
};

/// Correlation across cycling sessions between the period-II AESR drop at one
/// AP (1 - II/I) and the period-II rise of HR or BP (II/I - 1). Sessions whose
/// normalized AESR leaves the exclusion bounds in any period are dropped first.
inline ExerciseCorrelation exercise_correlation(const std::vector<SessionRecord>& sessions, std::size_t ap, Vital vital,
                                                std::size_t permutations, std::uint64_t seed,
                                                const ExclusionBounds& bounds = {}) {
    std::vector<std::vector<double>> flat;
    std::vector<const SessionRecord*> cycling;
    for (const auto& s : sessions) {
        if (!s.cycling()) continue;
        if (ap >= s.aesr[0].size()) fail(ErrorCode::parameter, "AP index out of range");
        const auto norm = normalize_temporal(s);
        std::vector<double> all;
        for (const auto& v : norm) all.insert(all.end(), v.begin(), v.end());
        flat.push_back(std::move(all));
        cycling.push_back(&s);
    }
    const auto keep = normal_rows(flat, bounds);
    std::vector<double> x, y;
    for (auto i : keep) {
        const auto& s = *cycling[i];
        x.push_back(1.0 - s.aesr[1][ap] / s.aesr[0][ap]);
        y.push_back(vital == Vital::hr ? s.hr[1] / s.hr[0] - 1.0 : s.bp[1] / s.bp[0] - 1.0);
    }
    return {correlation(x, y, permutations, seed), cycling.size() - keep.size()};
}

}  // namespace auricle
