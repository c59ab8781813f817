#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "auricle/acquisition/calibration.hpp"
#include "auricle/acquisition/channel.hpp"
#include "auricle/acquisition/cohort.hpp"
#include "auricle/acquisition/mux.hpp"
#include "auricle/acquisition/repeatability.hpp"
#include "auricle/acquisition/session.hpp"
#include "auricle/analysis/statistics.hpp"

using namespace auricle;

namespace {

ChannelModel megohm() {
    ChannelModel c;
    c.skin_ohm = 700000.0;
    c.contact_ohm = 200000.0;
    c.series_ohm = 100000.0;
    return c;
}

double sample_cv(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= double(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / double(v.size() - 1)) / m;
}

}  // namespace

TEST(MeasureResistance, ReferenceTemperatureIsExact) {
    EXPECT_EQ(measure_resistance(megohm(), 25.0, 1), 1000000.0);
}

TEST(MeasureResistance, TemperatureDrift) {
    EXPECT_DOUBLE_EQ(measure_resistance(megohm(), 35.0, 1), 1000026.0);
    const auto c = megohm();
    for (double t1 : {0.0, 12.5, 25.0, 40.0})
        for (double t2 : {5.0, 33.0, 60.0})
            EXPECT_NEAR(measure_resistance(c, t2, 3) - measure_resistance(c, t1, 3), 2.6 * (t2 - t1), 1e-9);
}

TEST(MeasureResistance, DeterministicAndSeedSensitive) {
    auto c = megohm();
    c.noise_sigma = 0.05;
    EXPECT_EQ(measure_resistance(c, 30.0, 42), measure_resistance(c, 30.0, 42));
    EXPECT_NE(measure_resistance(c, 30.0, 42), measure_resistance(c, 30.0, 43));
}

TEST(MeasureResistance, RejectsOutOfRangeTemperature) {
    EXPECT_THROW(measure_resistance(megohm(), -1.0, 0), Error);
    EXPECT_THROW(measure_resistance(megohm(), 60.5, 0), Error);
    auto bad = megohm();
    bad.contact_ohm = -1.0;
    EXPECT_THROW(measure_resistance(bad, 25.0, 0), Error);
}

TEST(MeasureResistance, NoiseHasRequestedSpread) {
    auto c = megohm();
    c.noise_sigma = 0.02;
    std::vector<double> r;
    for (std::uint64_t s = 0; s < 4000; ++s) r.push_back(measure_resistance(c, 25.0, s));
    EXPECT_NEAR(sample_cv(r), 0.02, 0.002);
}

TEST(ImpedanceSweep, EndpointsAreExact) {
    const auto sweep = impedance_sweep(megohm());
    ASSERT_GE(sweep.size(), 2u);
    EXPECT_EQ(sweep.front().frequency_hz, 4.0);
    EXPECT_EQ(sweep.back().frequency_hz, 4000.0);
    for (std::size_t i = 1; i < sweep.size(); ++i) {
        EXPECT_GT(sweep[i].frequency_hz, sweep[i - 1].frequency_hz);
        EXPECT_LE(sweep[i].magnitude_ohm, sweep[i - 1].magnitude_ohm);
    }
    const double ratio = sweep[1].frequency_hz / sweep[0].frequency_hz;
    EXPECT_NEAR(sweep[2].frequency_hz / sweep[1].frequency_hz, ratio, 1e-12);
}

TEST(ImpedanceSweep, NegligibleCapacitanceIsResistive) {
    auto c = megohm();
    c.skin_capacitance_f = 1e-15;
    for (const auto& s : impedance_sweep(c, 4.0, 4000.0, 9))
        EXPECT_NEAR(s.magnitude_ohm, 1000000.0, 1e-4 * 1000000.0);
}

TEST(ImpedanceSweep, RejectsBadRange) {
    EXPECT_THROW(impedance_sweep(megohm(), 0.0, 10.0, 5), Error);
    EXPECT_THROW(impedance_sweep(megohm(), 10.0, 10.0, 5), Error);
    EXPECT_THROW(impedance_sweep(megohm(), 4.0, 10.0, 1), Error);
}

TEST(Mux, ScanReadsEachChannelInIsolation) {
    std::vector<ChannelModel> channels(13);
    for (std::size_t i = 0; i < channels.size(); ++i) channels[i].skin_ohm = 1.0e5 * double(i + 1);
    MuxState mux;
    const auto r = scan_all(mux, channels, 25.0, 9);
    ASSERT_EQ(r.size(), 13u);
    for (std::size_t i = 0; i < r.size(); ++i) EXPECT_EQ(r[i], 1.0e5 * double(i + 1));
    const auto& log = mux.log();
    ASSERT_EQ(log.size(), 13u);
    for (std::size_t i = 0; i < log.size(); ++i) {
        EXPECT_EQ(log[i].channel, i);
        EXPECT_LT(log[i].on_us, log[i].off_us);
        if (i) {
            EXPECT_LT(log[i - 1].off_us, log[i].on_us);
        }
    }
    EXPECT_FALSE(mux.active());
}

TEST(Mux, CapacityIsEnforced) {
    std::vector<ChannelModel> channels(17);
    MuxState mux;
    try {
        scan_all(mux, channels, 25.0, 0);
        FAIL() << "expected a capacity error";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::capacity);
    }
    EXPECT_THROW(mux.activate(16), Error);
}

TEST(Mux, BreakBeforeMake) {
    MuxState mux(4);
    mux.activate(1);
    EXPECT_THROW(mux.activate(2), Error);
    mux.advance(10);
    mux.release();
    mux.activate(2);
    mux.advance(5);
    mux.release();
    ASSERT_EQ(mux.log().size(), 2u);
    EXPECT_EQ(mux.log()[0].off_us, 10);
    EXPECT_EQ(mux.log()[1].on_us, 10);
}

TEST(Mux, RandomSchedulesNeverOverlap) {
    Rng rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        MuxState mux(16, 1 + std::int64_t(rng.below(100)), std::int64_t(rng.below(20)));
        for (int step = 0; step < 60; ++step) {
            const auto op = rng.below(3);
            if (op == 0) {
                if (!mux.active()) mux.activate(rng.below(16));
            } else if (op == 1) {
                mux.release();
            } else {
                mux.advance(std::int64_t(rng.below(50)));
            }
        }
        mux.release();
        const auto& log = mux.log();
        for (std::size_t i = 1; i < log.size(); ++i) EXPECT_LE(log[i - 1].off_us, log[i].on_us);
    }
}

TEST(Mux, ScanIsDeterministicPerChannelSeed) {
    std::vector<ChannelModel> channels(8, megohm());
    for (auto& c : channels) c.noise_sigma = 0.03;
    MuxState a, b;
    EXPECT_EQ(scan_all(a, channels, 28.0, 5), scan_all(b, channels, 28.0, 5));
    // Reading i depends only on its own sub-seed, not on how many channels precede it.
    MuxState c;
    const std::vector<ChannelModel> tail(channels.begin(), channels.begin() + 3);
    const auto full = scan_all(a, channels, 28.0, 6);
    const auto part = scan_all(c, tail, 28.0, 6);
    for (std::size_t i = 0; i < part.size(); ++i) EXPECT_EQ(full[i], part[i]);
}

TEST(Calibrate, NoiselessIsExact) {
    const std::vector<double> refs{0.5e6, 1e6, 5e6, 10e6};
    const auto rep = calibrate(refs, 0.0, 1);
    ASSERT_EQ(rep.points.size(), 4u);
    EXPECT_EQ(rep.max_relative_error, 0.0);
    EXPECT_TRUE(calibrate(std::vector<double>{}, 0.01, 1).points.empty());
}

TEST(Calibrate, OnePercentNoiseStaysWithinFivePercent) {
    const std::vector<double> refs{0.5e6, 1e6, 2e6, 5e6, 10e6};
    for (std::uint64_t s = 0; s < 10; ++s) EXPECT_LT(calibrate(refs, 0.01, s).max_relative_error, 0.05);
}

TEST(Calibrate, RejectsUnsortedOrNonPositive) {
    EXPECT_THROW(calibrate(std::vector<double>{2e6, 1e6}, 0.0, 0), Error);
    EXPECT_THROW(calibrate(std::vector<double>{0.0, 1e6}, 0.0, 0), Error);
}

TEST(Sped, ZeroPressureVariationGivesEqualReadings) {
    const auto r = sped_model(0.0, 50, 1e6, 3);
    for (double v : r) EXPECT_NEAR(v, 1e6, 1e-6);
}

TEST(Sped, ReachesTargetCv) {
    EXPECT_NEAR(sample_cv(sped_model(0.35, 1000, 1e6, 11)), 0.35, 0.05);
    EXPECT_NEAR(sample_cv(sped_model(0.049, 1000, 1e6, 11)), 0.049, 0.01);
    EXPECT_THROW(sped_model(-0.1, 10, 1e6, 0), Error);
}

TEST(ConformalReplicates, TriplicateCvMatchesTuning) {
    std::vector<ChannelModel> channels(400, megohm());
    for (auto& c : channels) c.noise_sigma = default_conformal_noise_sigma;
    const auto rep = repeatability_cv(conformal_replicates(channels, 3, 2024));
    EXPECT_NEAR(rep.mean_cv, 0.049, 0.01);
}

TEST(Cohort, DefaultSizesAndLabels) {
    const auto cfg = default_cohort_config();
    const auto cohort = simulate_cohort(cfg, 7);
    ASSERT_EQ(cohort.rows.size(), 60u);
    std::vector<std::size_t> count(4, 0);
    for (const auto& r : cohort.rows) {
        ++count[r.archetype];
        EXPECT_EQ(r.aesr.size(), 10u);
        for (double v : r.aesr) EXPECT_GT(v, 0.0);
    }
    EXPECT_EQ(count, (std::vector<std::size_t>{35, 17, 5, 3}));
    EXPECT_EQ(cohort.rows[0].label.substr(0, 6), "S01-L-");
    EXPECT_EQ(cohort.rows[1].label.substr(0, 6), "S01-R-");
    EXPECT_DOUBLE_EQ(cohort.concordance, 0.8);
    std::size_t same = 0;
    for (std::size_t s = 0; s < 30; ++s) same += cohort.rows[2 * s].archetype == cohort.rows[2 * s + 1].archetype;
    EXPECT_EQ(same, 24u);
}

TEST(Cohort, Deterministic) {
    const auto a = simulate_cohort(default_cohort_config(), 3);
    const auto b = simulate_cohort(default_cohort_config(), 3);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        EXPECT_EQ(a.rows[i].label, b.rows[i].label);
        EXPECT_EQ(a.rows[i].aesr, b.rows[i].aesr);
    }
}

TEST(Cohort, NoiselessSingleArchetypeRowsIdentical) {
    CohortConfig cfg;
    cfg.archetypes = {{"A", {1.0, 2.0, 0.5}}};
    cfg.sizes = {8};
    cfg.noise_sigma = 0.0;
    const auto c = simulate_cohort(cfg, 1);
    ASSERT_EQ(c.rows.size(), 8u);
    for (const auto& r : c.rows) EXPECT_EQ(r.aesr, c.rows[0].aesr);
}

TEST(Cohort, FullConcordancePairsEarsWithinArchetype) {
    auto cfg = default_cohort_config();
    cfg.sizes = {34, 18, 6, 2};
    cfg.concordance = 1.0;
    const auto c = simulate_cohort(cfg, 5);
    for (std::size_t s = 0; s < 30; ++s) EXPECT_EQ(c.rows[2 * s].archetype, c.rows[2 * s + 1].archetype);
    EXPECT_EQ(c.concordance, 1.0);
}

TEST(Cohort, OddSizesLimitConcordance) {
    auto cfg = default_cohort_config();
    cfg.concordance = 1.0;  // 35 and 17 ears cannot all pair within their archetype
    const auto c = simulate_cohort(cfg, 5);
    EXPECT_NEAR(c.concordance, 28.0 / 30.0, 1e-12);
}

TEST(Cohort, InvalidConfigNamesField) {
    auto cfg = default_cohort_config();
    cfg.sizes = {35, 17, 5, 4};
    try {
        simulate_cohort(cfg, 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::config);
        EXPECT_NE(std::string(e.what()).find("sizes"), std::string::npos);
    }
}

TEST(Session, NoiselessControlIsFlat) {
    const auto s = simulate_exercise_session(ExerciseResponse::noiseless(), 1, "B1", 4);
    for (int p = 1; p < 4; ++p) {
        EXPECT_EQ(s.aesr[p], s.aesr[0]);
        EXPECT_EQ(s.hr[p], s.hr[0]);
        EXPECT_EQ(s.bp[p], s.bp[0]);
    }
}

TEST(Session, NoiselessCyclingFollowsMultipliers) {
    const auto r = ExerciseResponse::noiseless();
    const auto s = simulate_exercise_session(r, 3, "A2", 4);
    ASSERT_EQ(s.aesr[0].size(), 13u);
    EXPECT_DOUBLE_EQ(s.aesr[1][0], 0.392 * s.aesr[0][0]);
    for (std::size_t j = 0; j < 6; ++j) EXPECT_DOUBLE_EQ(s.aesr[1][j] / s.aesr[0][j], r.drop[j]);
    for (std::size_t j = 6; j < 13; ++j) EXPECT_GE(s.aesr[1][j] / s.aesr[0][j], 0.765 - 1e-12);
    EXPECT_EQ(s.aesr[3], s.aesr[0]);
    double mean3 = 0.0;
    for (std::size_t j = 0; j < 6; ++j) mean3 += s.aesr[2][j] / s.aesr[0][j] / 6.0;
    EXPECT_NEAR(mean3, 0.677, 1e-12);
    EXPECT_NEAR(s.hr[1] / s.hr[0], 1.429, 1e-12);
    EXPECT_NEAR(s.bp[1] / s.bp[0], 1.16, 1e-12);
    EXPECT_GT(s.hr[2], s.hr[0]);
    EXPECT_LT(s.hr[2], s.hr[1]);
    EXPECT_EQ(s.hr[3], s.hr[0]);
    EXPECT_EQ(s.label(1), "3-A2-II");
}

TEST(Session, RejectsUnknownTest) {
    EXPECT_THROW(simulate_exercise_session(ExerciseResponse{}, 1, "C1", 0), Error);
    ExerciseResponse bad;
    bad.drop = {0.4, -0.1};
    EXPECT_THROW(simulate_exercise_session(bad, 1, "A1", 0), Error);
}

TEST(Session, StudyIsDeterministicAndPositive) {
    const auto a = simulate_study(ExerciseResponse{}, 3, 99);
    const auto b = simulate_study(ExerciseResponse{}, 3, 99);
    ASSERT_EQ(a.size(), 15u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].aesr, b[i].aesr);
        EXPECT_EQ(a[i].hr, b[i].hr);
        for (const auto& v : a[i].aesr)
            for (double x : v) EXPECT_GT(x, 0.0);
    }
    EXPECT_EQ(a[4].test, "B2");
    EXPECT_EQ(a[5].subject, 2u);
}
