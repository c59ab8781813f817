#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "auricle/acquisition/channel.hpp"
#include "auricle/core/linalg.hpp"

namespace auricle {

/// Expected sample CV of three Gaussian replicates is c4(3) * sigma with
/// c4(3) = sqrt(pi)/2; the default conformal-sensor noise is chosen so that
/// triplicate measurements average a 4.9% CV.
inline constexpr double triplicate_c4 = 0.88622692545275801365;
inline constexpr double default_conformal_noise_sigma = 0.049 / triplicate_c4;

/// Replicate readings (rows) of one channel per AP (columns) under the
/// multiplicative noise model.
inline Matrix conformal_replicates(const std::vector<ChannelModel>& channels, std::size_t replicates,
                                   std::uint64_t seed, double temperature_c = 25.0) {
    Matrix out(replicates, channels.size());
    for (std::size_t r = 0; r < replicates; ++r)
        for (std::size_t c = 0; c < channels.size(); ++c)
            out(r, c) = measure_resistance(channels[c], temperature_c,
                                           derive_seed(seed, "replicate", r * channels.size() + c));
    return out;
}

struct SpedOptions {
    /// Share of the true resistance that sits in the pressure-sensitive contact term.
    double contact_fraction = 0.5;
};

/// Hand-held single-probe readings: the contact term is scaled by a mean-one
/// lognormal pressure factor sized so that the reading CV equals `pressure_cv`.
inline std::vector<double> sped_model(double pressure_cv, std::size_t readings, double true_ohm, std::uint64_t seed,
                                      const SpedOptions& options = {}) {
    if (!(pressure_cv >= 0.0)) fail(ErrorCode::parameter, "pressure CV must be non-negative");
    if (!(true_ohm > 0.0)) fail(ErrorCode::parameter, "true resistance must be positive");
    if (!(options.contact_fraction > 0.0 && options.contact_fraction <= 1.0))
        fail(ErrorCode::parameter, "contact fraction must lie in (0, 1]");
    const double contact = options.contact_fraction * true_ohm;
    const double factor_cv = pressure_cv / options.contact_fraction;
    const double s2 = std::log1p(factor_cv * factor_cv);
    const double s = std::sqrt(s2);
    const double mu = -0.5 * s2;
    Rng rng(derive_seed(seed, "sped"));
    std::vector<double> out(readings);
    for (auto& r : out) r = true_ohm - contact + contact * std::exp(mu + s * rng.normal());
    return out;
}

}  // namespace auricle
