#pragma once

#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "auricle/acquisition/session.hpp"
#include "auricle/analysis/dataset.hpp"
#include "auricle/core/error.hpp"

namespace auricle {

inline std::vector<double> normalize_spatial(std::span<const double> row, std::size_t ref_index = 0) {
    if (ref_index >= row.size()) fail(ErrorCode::parameter, "reference AP index out of range");
    for (double v : row)
        if (!(v > 0.0)) fail(ErrorCode::domain, "spatial normalization needs positive entries");
    std::vector<double> out(row.size());
    const double ref = row[ref_index];
    for (std::size_t i = 0; i < row.size(); ++i) out[i] = i == ref_index ? 1.0 : row[i] / ref;
    return out;
}

inline AESRMatrix normalize_spatial(const AESRMatrix& m, std::size_t ref_index = 0) {
    AESRMatrix out = m;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const auto n = normalize_spatial(m.values.row(r), ref_index);
        std::copy(n.begin(), n.end(), out.values.row(r).begin());
    }
    return out;
}

/// Each period's AESR divided pointwise by period I.
inline std::array<std::vector<double>, 4> normalize_temporal(const SessionRecord& s) {
    const auto& base = s.aesr[0];
    for (double v : base)
        if (!(v > 0.0)) fail(ErrorCode::domain, "temporal normalization needs a positive period-I baseline");
    std::array<std::vector<double>, 4> out;
    for (std::size_t p = 0; p < 4; ++p) {
        if (s.aesr[p].size() != base.size()) fail(ErrorCode::format, "period vectors differ in length");
        out[p].resize(base.size());
        for (std::size_t j = 0; j < base.size(); ++j) out[p][j] = p == 0 ? 1.0 : s.aesr[p][j] / base[j];
    }
    return out;
}

}  // namespace auricle
