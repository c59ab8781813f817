#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "auricle/acquisition/channel.hpp"

namespace auricle {

struct CalibrationPoint {
    double reference_ohm;
    double measured_ohm;
    double relative_error;
};

struct CalibrationReport {
    std::vector<CalibrationPoint> points;
    double max_relative_error = 0.0;
};

/// Simulated bench calibration against precision reference resistors at the
/// reference temperature.
inline CalibrationReport calibrate(std::span<const double> references_ohm, double noise_sigma, std::uint64_t seed) {
    if (!std::is_sorted(references_ohm.begin(), references_ohm.end()))
        fail(ErrorCode::parameter, "calibration references must be sorted");
    CalibrationReport report;
    for (std::size_t i = 0; i < references_ohm.size(); ++i) {
        const double ref = references_ohm[i];
        if (!(ref > 0.0)) fail(ErrorCode::parameter, "calibration references must be positive");
        ChannelModel channel;
        channel.skin_ohm = ref;
        channel.noise_sigma = noise_sigma;
        const double measured = measure_resistance(channel, channel.reference_temp_c, derive_seed(seed, "calibration", i));
        const double err = std::abs(measured - ref) / ref;
        report.points.push_back({ref, measured, err});
        report.max_relative_error = std::max(report.max_relative_error, err);
    }
    return report;
}

}  // namespace auricle
