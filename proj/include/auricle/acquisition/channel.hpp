#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "auricle/core/error.hpp"
#include "auricle/core/rng.hpp"

namespace auricle {

/// Electrical model of one electrode channel. The DC reading is the series sum
/// of the resistive terms plus a linear temperature drift; the AC model puts
/// the skin and contact terms in parallel with the skin capacitance.
struct ChannelModel {
    double skin_ohm = 1.0e6;
    double contact_ohm = 0.0;
    double series_ohm = 0.0;
    double temp_coeff_ohm_per_c = 2.6;
    double reference_temp_c = 25.0;
    double noise_sigma = 0.0;  // relative, multiplicative
    double skin_capacitance_f = 1.0e-9;

    double total_ohm() const { return skin_ohm + contact_ohm + series_ohm; }

    void validate() const {
        if (!(skin_ohm >= 0.0 && contact_ohm >= 0.0 && series_ohm >= 0.0))
            fail(ErrorCode::parameter, "channel resistances must be non-negative");
        if (!(noise_sigma >= 0.0)) fail(ErrorCode::parameter, "channel noise sigma must be non-negative");
        if (!(skin_capacitance_f > 0.0)) fail(ErrorCode::parameter, "skin capacitance must be positive");
    }
};

inline constexpr double min_temperature_c = 0.0;
inline constexpr double max_temperature_c = 60.0;

/// One DC resistance reading. Bit-identical for identical arguments.
inline double measure_resistance(const ChannelModel& channel, double temperature_c, std::uint64_t seed) {
    channel.validate();
    if (!(temperature_c >= min_temperature_c && temperature_c <= max_temperature_c))
        fail(ErrorCode::parameter, "temperature outside [0, 60] C");
    const double drift = channel.temp_coeff_ohm_per_c * (temperature_c - channel.reference_temp_c);
    const double clean = channel.total_ohm() + drift;
    if (channel.noise_sigma == 0.0) return clean;
    Rng rng(derive_seed(seed, "measure"));
    return clean * (1.0 + channel.noise_sigma * rng.normal());
}

struct ImpedanceSample {
    double frequency_hz;
    double magnitude_ohm;
};

inline double impedance_magnitude(const ChannelModel& channel, double frequency_hz) {
    const double rp = channel.skin_ohm + channel.contact_ohm;
    const double wrc = 2.0 * std::numbers::pi * frequency_hz * rp * channel.skin_capacitance_f;
    return channel.series_ohm + rp / std::sqrt(1.0 + wrc * wrc);
}

/// |Z| sampled log-uniformly on [f_min, f_max], both endpoints included exactly.
inline std::vector<ImpedanceSample> impedance_sweep(const ChannelModel& channel, double f_min = 4.0,
                                                    double f_max = 4000.0, std::size_t n_points = 31) {
    channel.validate();
    if (!(f_min > 0.0 && f_min < f_max)) fail(ErrorCode::parameter, "sweep needs 0 < f_min < f_max");
    if (n_points < 2) fail(ErrorCode::parameter, "sweep needs at least two points");
    std::vector<ImpedanceSample> out;
    out.reserve(n_points);
    const double ratio = std::log(f_max / f_min);
    for (std::size_t i = 0; i < n_points; ++i) {
        double f = f_min * std::exp(ratio * static_cast<double>(i) / static_cast<double>(n_points - 1));
        if (i == 0) f = f_min;
        if (i + 1 == n_points) f = f_max;
        out.push_back({f, impedance_magnitude(channel, f)});
    }
    return out;
}

}  // namespace auricle
