#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "auricle/core/error.hpp"
#include "auricle/core/rng.hpp"

namespace auricle {

/// A population-level AESR distribution: the expected AESR at each AP
/// relative to AP1.
struct Archetype {
    std::string name;
    std::vector<double> trend;
};

struct CohortConfig {
    std::vector<Archetype> archetypes;
    /// Ears per archetype. The total must be even (two ears per subject).
    std::vector<std::size_t> sizes;
    double noise_sigma = 0.0;  // relative per-reading noise
    /// Fraction of subjects whose two ears share one archetype.
    double concordance = 0.8;
    double base_ohm = 1.0e6;

    std::size_t ap_count() const { return archetypes.empty() ? 0 : archetypes.front().trend.size(); }

    void validate() const {
        if (archetypes.empty()) fail(ErrorCode::config, "archetypes: at least one archetype is required");
        if (sizes.size() != archetypes.size()) fail(ErrorCode::config, "sizes: one size per archetype is required");
        const auto n = ap_count();
        if (n == 0) fail(ErrorCode::config, "archetypes: trend vectors must not be empty");
        for (const auto& a : archetypes) {
            if (a.trend.size() != n) fail(ErrorCode::config, "archetypes: trend '" + a.name + "' has the wrong length");
            for (double v : a.trend)
                if (!(v > 0.0 && std::isfinite(v)))
                    fail(ErrorCode::config, "archetypes: trend '" + a.name + "' must be positive");
        }
        std::size_t total = 0;
        for (auto s : sizes) {
            if (s == 0) fail(ErrorCode::config, "sizes: every archetype needs at least one ear");
            total += s;
        }
        if (total % 2 != 0) fail(ErrorCode::config, "sizes: total ear count must be even");
        if (!(noise_sigma >= 0.0 && noise_sigma < 1.0)) fail(ErrorCode::config, "noise_sigma: must lie in [0, 1)");
        if (!(concordance >= 0.0 && concordance <= 1.0)) fail(ErrorCode::config, "concordance: must lie in [0, 1]");
        if (!(base_ohm > 0.0)) fail(ErrorCode::config, "base_ohm: must be positive");
    }
};

/// Four illustrative 10-AP archetypes with 35/17/5/3 ears and 0.8 concordance.
inline CohortConfig default_cohort_config() {
    CohortConfig c;
    c.archetypes = {
        {"A", {1.0, 1.2, 1.5, 1.8, 1.6, 1.4, 1.3, 1.2, 1.1, 1.0}},
        {"B", {1.0, 1.2, 1.4, 1.6, 1.3, 1.0, 0.9, 0.8, 0.8, 0.8}},
        {"C", {1.0, 2.0, 2.5, 2.6, 2.1, 1.6, 1.3, 1.2, 1.1, 1.0}},
        {"D", {1.0, 1.2, 1.4, 1.7, 1.7, 1.8, 2.0, 2.1, 2.1, 1.9}},
    };
    c.sizes = {35, 17, 5, 3};
    c.noise_sigma = 0.035;
    c.concordance = 0.8;
    return c;
}

struct CohortRow {
    std::string label;  // "S07-L-B": subject, side, true archetype
    std::size_t subject = 0;
    char side = 'L';
    std::size_t archetype = 0;
    std::vector<double> aesr;  // ohm
};

struct Cohort {
    std::vector<CohortRow> rows;
    /// Concordant subjects / subjects actually realised. Equals the configured
    /// value rounded to whole subjects unless the archetype sizes forbid it.
    double concordance = 0.0;
};

namespace detail {

// Chooses how many ears of each archetype go to discordant subjects: counts
// share the parity of the archetype size (the rest pair up among themselves),
// sum to 2*d, and none exceeds d so that a half-shift pairing never matches an
// archetype with itself.
inline bool discordant_quota(const std::vector<std::size_t>& sizes, std::size_t d, std::vector<std::size_t>& quota) {
    quota.assign(sizes.size(), 0);
    std::size_t used = 0;
    for (std::size_t a = 0; a < sizes.size(); ++a) {
        quota[a] = sizes[a] % 2;
        used += quota[a];
    }
    if (used > 2 * d) return false;
    for (auto q : quota)
        if (q > d) return false;
    while (used < 2 * d) {
        std::size_t best = sizes.size();
        for (std::size_t a = 0; a < sizes.size(); ++a) {
            if (quota[a] + 2 > sizes[a] || quota[a] + 2 > d) continue;
            if (best == sizes.size() || quota[a] < quota[best] || (quota[a] == quota[best] && sizes[a] > sizes[best]))
                best = a;
        }
        if (best == sizes.size()) return false;
        quota[best] += 2;
        used += 2;
    }
    return true;
}

}  // namespace detail

/// Synthetic ear cohort. Every ear's AESR row is base_ohm * trend * (1 + eps)
/// with independent Gaussian eps per AP. Subjects are assembled so that the
/// archetype sizes are exact and round(concordance * subjects) subjects have
/// both ears in the same archetype.
inline Cohort simulate_cohort(const CohortConfig& config, std::uint64_t seed) {
    config.validate();
    const std::size_t total = std::accumulate(config.sizes.begin(), config.sizes.end(), std::size_t{0});
    const std::size_t subjects = total / 2;
    const auto target_concordant = static_cast<std::size_t>(std::llround(config.concordance * double(subjects)));

    // Prefer the configured discordant count, then the nearest feasible one.
    std::vector<std::size_t> quota;
    std::size_t d = subjects - target_concordant;
    bool ok = detail::discordant_quota(config.sizes, d, quota);
    for (std::size_t step = 1; !ok && step <= subjects; ++step) {
        if (d + step <= subjects && detail::discordant_quota(config.sizes, d + step, quota)) {
            d += step;
            ok = true;
        } else if (step <= d && detail::discordant_quota(config.sizes, d - step, quota)) {
            d -= step;
            ok = true;
        }
    }
    if (!ok) fail(ErrorCode::config, "sizes: no subject pairing is possible for these archetype sizes");

    Rng rng(derive_seed(seed, "cohort-pairing"));
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<std::size_t> loose;
    for (std::size_t a = 0; a < config.sizes.size(); ++a) {
        for (std::size_t i = 0; i < quota[a]; ++i) loose.push_back(a);
        for (std::size_t i = 0; i < (config.sizes[a] - quota[a]) / 2; ++i) pairs.emplace_back(a, a);
    }
    for (std::size_t i = 0; i < d; ++i) pairs.emplace_back(loose[i], loose[i + d]);
    rng.shuffle(pairs.begin(), pairs.end());
    for (auto& p : pairs)
        if (rng.below(2) == 1) std::swap(p.first, p.second);

    Cohort cohort;
    cohort.concordance = subjects ? double(subjects - d) / double(subjects) : 0.0;
    const std::size_t n = config.ap_count();
    const int width = subjects >= 100 ? 3 : 2;
    for (std::size_t s = 0; s < subjects; ++s) {
        for (int side = 0; side < 2; ++side) {
            CohortRow row;
            row.subject = s + 1;
            row.side = side == 0 ? 'L' : 'R';
            row.archetype = side == 0 ? pairs[s].first : pairs[s].second;
            std::string id = std::to_string(row.subject);
            id.insert(0, static_cast<std::size_t>(std::max(0, width - int(id.size()))), '0');
            row.label = "S" + id + "-" + row.side + "-" + config.archetypes[row.archetype].name;
            Rng ear(derive_seed(seed, "ear", 2 * s + static_cast<std::size_t>(side)));
            const auto& trend = config.archetypes[row.archetype].trend;
            row.aesr.resize(n);
            for (std::size_t j = 0; j < n; ++j) {
                double v = config.base_ohm * trend[j];
                if (config.noise_sigma > 0.0) v *= std::max(1.0 + config.noise_sigma * ear.normal(), 1e-3);
                row.aesr[j] = v;
            }
            cohort.rows.push_back(std::move(row));
        }
    }
    return cohort;
}

}  // namespace auricle
