#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "auricle/core/error.hpp"
#include "auricle/core/rng.hpp"

namespace auricle {

inline constexpr std::array<std::string_view, 4> period_names{"I", "II", "III", "IV"};

/// One test of one volunteer: AESR at N APs, HR and BP in each of four periods
/// (before exercise, then shortly, later and long after it).
struct SessionRecord {
    std::size_t subject = 0;
    std::string test;  // A1..A3 cycling, B1..B2 control
    std::array<std::vector<double>, 4> aesr;
    std::array<double, 4> hr{};
    std::array<double, 4> bp{};

    bool cycling() const { return !test.empty() && test.front() == 'A'; }
    std::string label(std::size_t period) const {
        return std::to_string(subject) + "-" + test + "-" + std::string(period_names.at(period));
    }
};

inline bool is_cycling_test(std::string_view test) { return test == "A1" || test == "A2" || test == "A3"; }
inline bool is_control_test(std::string_view test) { return test == "B1" || test == "B2"; }

/// Physiological response to one bout of cycling.
///
/// The strength of a session's response varies. A latent standard-normal
/// factor z is shared by every responsive AP and by HR and BP; each also has
/// an independent part. Multiplier m at a responsive AP becomes
/// m^exp(s (c z + sqrt(1 - c^2) z_ap)) with c = aesr_coherence, and the HR and
/// BP rises scale by exp(s (w z + sqrt(1 - w^2) z_own)) with w the coupling.
/// The AESR-HR correlation across sessions is then close to c * w_hr.
struct ExerciseResponse {
    std::size_t ap_count = 13;
    /// Period-II multipliers of the responsive APs (AP1, AP2, ...).
    std::vector<double> drop = {0.392, 0.332, 0.446, 0.351, 0.422, 0.487};
    /// Period-II multipliers of the remaining APs are drawn uniformly here.
    double other_min = 0.765;
    double other_max = 0.95;
    /// Fraction of the period-II change still present in period III.
    /// Default: the responsive APs sit at 67.7% of baseline on average.
    double period3_residual = 0.0;
    double hr_multiplier = 1.429;
    double bp_multiplier = 1.16;
    double baseline_ohm = 1.0e6;
    double baseline_spread = 0.3;  // sd of log baseline across APs
    double hr_baseline_bpm = 75.0;
    double bp_baseline_mmhg = 120.0;
    double noise_sigma = 0.03;     // relative AESR reading noise
    double vital_noise_sigma = 0.01;
    double intensity_sd = 0.15;
    double aesr_coherence = 0.7;
    double hr_coupling = 0.9;
    double bp_coupling = 0.9;

    /// All variability switched off: periods follow the multipliers exactly.
    static ExerciseResponse noiseless() {
        ExerciseResponse r;
        r.noise_sigma = 0.0;
        r.vital_noise_sigma = 0.0;
        r.intensity_sd = 0.0;
        r.other_max = r.other_min;
        return r;
    }

    double residual() const {
        if (period3_residual > 0.0) return period3_residual;
        const double mean = std::accumulate(drop.begin(), drop.end(), 0.0) / double(drop.size());
        return (1.0 - 0.677) / (1.0 - mean);
    }

    void validate() const {
        if (ap_count == 0) fail(ErrorCode::config, "ap_count: must be positive");
        if (drop.empty() || drop.size() > ap_count) fail(ErrorCode::config, "drop: needs 1..ap_count multipliers");
        for (double m : drop)
            if (!(m > 0.0)) fail(ErrorCode::config, "drop: multipliers must be positive");
        if (!(other_min > 0.0 && other_min <= other_max)) fail(ErrorCode::config, "other_min: need 0 < other_min <= other_max");
        if (!(period3_residual >= 0.0 && period3_residual <= 1.0))
            fail(ErrorCode::config, "period3_residual: must lie in [0, 1]");
        if (!(hr_multiplier > 0.0)) fail(ErrorCode::config, "hr_multiplier: must be positive");
        if (!(bp_multiplier > 0.0)) fail(ErrorCode::config, "bp_multiplier: must be positive");
        if (!(baseline_ohm > 0.0)) fail(ErrorCode::config, "baseline_ohm: must be positive");
        if (!(baseline_spread >= 0.0)) fail(ErrorCode::config, "baseline_spread: must be non-negative");
        if (!(hr_baseline_bpm > 0.0)) fail(ErrorCode::config, "hr_baseline_bpm: must be positive");
        if (!(bp_baseline_mmhg > 0.0)) fail(ErrorCode::config, "bp_baseline_mmhg: must be positive");
        if (!(noise_sigma >= 0.0 && noise_sigma < 0.3)) fail(ErrorCode::config, "noise_sigma: must lie in [0, 0.3)");
        if (!(vital_noise_sigma >= 0.0 && vital_noise_sigma < 0.3))
            fail(ErrorCode::config, "vital_noise_sigma: must lie in [0, 0.3)");
        if (!(intensity_sd >= 0.0)) fail(ErrorCode::config, "intensity_sd: must be non-negative");
        if (!(std::abs(aesr_coherence) <= 1.0)) fail(ErrorCode::config, "aesr_coherence: must lie in [-1, 1]");
        if (!(std::abs(hr_coupling) <= 1.0)) fail(ErrorCode::config, "hr_coupling: must lie in [-1, 1]");
        if (!(std::abs(bp_coupling) <= 1.0)) fail(ErrorCode::config, "bp_coupling: must lie in [-1, 1]");
    }
};

inline SessionRecord simulate_exercise_session(const ExerciseResponse& response, std::size_t subject,
                                               const std::string& test, std::uint64_t seed) {
    response.validate();
    const bool cycling = is_cycling_test(test);
    if (!cycling && !is_control_test(test))
        fail(ErrorCode::config, "test: '" + test + "' is not one of A1, A2, A3, B1, B2");

    Rng rng(derive_seed(seed, "session"));
    const std::size_t n = response.ap_count;
    std::vector<double> baseline(n);
    for (auto& b : baseline) b = response.baseline_ohm * std::exp(response.baseline_spread * rng.normal());

    const double z = rng.normal();
    const double z_hr = rng.normal(), z_bp = rng.normal();
    auto loading = [&](double coupling, double own) {
        return std::exp(response.intensity_sd * (coupling * z + std::sqrt(1.0 - coupling * coupling) * own));
    };
    const double g_hr = loading(response.hr_coupling, z_hr);
    const double g_bp = loading(response.bp_coupling, z_bp);

    std::vector<double> m2(n, 1.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double other = rng.uniform(response.other_min, response.other_max);
        const double g = loading(response.aesr_coherence, rng.normal());
        if (!cycling) continue;
        m2[j] = j < response.drop.size() ? std::pow(response.drop[j], g) : other;
    }
    const double f = response.residual();

    SessionRecord rec;
    rec.subject = subject;
    rec.test = test;
    const std::array<double, 4> change{0.0, 1.0, f, 0.0};
    for (std::size_t p = 0; p < 4; ++p) {
        rec.aesr[p].resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double level = 1.0 - change[p] * (1.0 - m2[j]);
            double v = baseline[j] * level;
            if (response.noise_sigma > 0.0) v *= 1.0 + response.noise_sigma * rng.normal();
            rec.aesr[p][j] = v;
        }
        const double hr_rise = cycling ? (response.hr_multiplier - 1.0) * g_hr : 0.0;
        const double bp_rise = cycling ? (response.bp_multiplier - 1.0) * g_bp : 0.0;
        double hr = response.hr_baseline_bpm * (1.0 + change[p] * hr_rise);
        double bp = response.bp_baseline_mmhg * (1.0 + change[p] * bp_rise);
        if (response.vital_noise_sigma > 0.0) {
            hr *= 1.0 + response.vital_noise_sigma * rng.normal();
            bp *= 1.0 + response.vital_noise_sigma * rng.normal();
        }
        rec.hr[p] = hr;
        rec.bp[p] = bp;
    }
    return rec;
}

inline constexpr std::array<std::string_view, 5> study_tests{"A1", "A2", "A3", "B1", "B2"};

/// Five tests (three cycling, two control) for each of `volunteers` subjects.
/// Session (v, t) uses sub-seed (seed, "study", 5 v + t).
inline std::vector<SessionRecord> simulate_study(const ExerciseResponse& response, std::size_t volunteers,
                                                 std::uint64_t seed) {
    std::vector<SessionRecord> out;
    out.reserve(volunteers * study_tests.size());
    for (std::size_t v = 0; v < volunteers; ++v)
        for (std::size_t t = 0; t < study_tests.size(); ++t)
            out.push_back(simulate_exercise_session(response, v + 1, std::string(study_tests[t]),
                                                    derive_seed(seed, "study", v * study_tests.size() + t)));
    return out;
}

}  // namespace auricle
