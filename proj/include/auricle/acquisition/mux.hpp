#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "auricle/acquisition/channel.hpp"
#include "auricle/core/error.hpp"
#include "auricle/core/rng.hpp"

namespace auricle {

/// One activation interval [on_us, off_us) of a multiplexer channel.
struct SwitchEvent {
    std::size_t channel;
    std::int64_t on_us;
    std::int64_t off_us;
};

/// Break-before-make analogue multiplexer: at most one channel conducts at a
/// time and the previous channel is released before the next one closes.
class MuxState {
public:
    explicit MuxState(std::size_t channel_count = 16, std::int64_t dwell_us = 5000, std::int64_t settle_us = 50)
        : channel_count_(channel_count), dwell_us_(dwell_us), settle_us_(settle_us) {
        if (channel_count == 0) fail(ErrorCode::parameter, "multiplexer needs at least one channel");
        if (dwell_us <= 0 || settle_us < 0) fail(ErrorCode::parameter, "invalid multiplexer timing");
    }

    std::size_t channel_count() const { return channel_count_; }
    std::int64_t dwell_us() const { return dwell_us_; }
    std::int64_t settle_us() const { return settle_us_; }
    std::int64_t now_us() const { return clock_us_; }
    std::optional<std::size_t> active() const { return active_; }
    const std::vector<SwitchEvent>& log() const { return log_; }

    void activate(std::size_t channel) {
        if (channel >= channel_count_)
            fail(ErrorCode::capacity, "channel " + std::to_string(channel) + " exceeds the " +
                                          std::to_string(channel_count_) + "-channel multiplexer");
        if (active_) fail(ErrorCode::parameter, "activate while channel " + std::to_string(*active_) + " is closed");
        active_ = channel;
        on_us_ = clock_us_;
    }

    void release() {
        if (!active_) return;
        log_.push_back({*active_, on_us_, clock_us_});
        active_.reset();
    }

    void advance(std::int64_t us) {
        if (us < 0) fail(ErrorCode::parameter, "time cannot run backwards");
        clock_us_ += us;
    }

private:
    std::size_t channel_count_;
    std::int64_t dwell_us_;
    std::int64_t settle_us_;
    std::int64_t clock_us_ = 0;
    std::int64_t on_us_ = 0;
    std::optional<std::size_t> active_;
    std::vector<SwitchEvent> log_;
};

/// Reads every channel in order, each while it alone is connected. Channel i
/// draws its noise from the sub-seed (seed, "channel", i).
inline std::vector<double> scan_all(MuxState& mux, std::span<const ChannelModel> channels, double temperature_c,
                                    std::uint64_t seed) {
    if (channels.size() > mux.channel_count())
        fail(ErrorCode::capacity, std::to_string(channels.size()) + " channels exceed the " +
                                      std::to_string(mux.channel_count()) + "-channel multiplexer");
    mux.release();
    std::vector<double> readings;
    readings.reserve(channels.size());
    for (std::size_t i = 0; i < channels.size(); ++i) {
        mux.activate(i);
        readings.push_back(measure_resistance(channels[i], temperature_c, derive_seed(seed, "channel", i)));
        mux.advance(mux.dwell_us());
        mux.release();
        mux.advance(mux.settle_us());
    }
    return readings;
}

}  // namespace auricle
