#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace auricle {

enum class ErrorCode {
    io,
    format,
    unsupported_topology,
    empty_input,
    placement,
    zero_area,
    unreachable_target,
    non_monotone,
    parameter,
    domain,
    undefined_silhouette,
    undefined_correlation,
    capacity,
    label,
    config,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::io: return "io";
        case ErrorCode::format: return "format";
        case ErrorCode::unsupported_topology: return "unsupported-topology";
        case ErrorCode::empty_input: return "empty-input";
        case ErrorCode::placement: return "placement";
        case ErrorCode::zero_area: return "zero-area";
        case ErrorCode::unreachable_target: return "unreachable-target";
        case ErrorCode::non_monotone: return "non-monotone";
        case ErrorCode::parameter: return "parameter";
        case ErrorCode::domain: return "domain";
        case ErrorCode::undefined_silhouette: return "undefined-silhouette";
        case ErrorCode::undefined_correlation: return "undefined-correlation";
        case ErrorCode::capacity: return "capacity";
        case ErrorCode::label: return "label";
        case ErrorCode::config: return "config";
    }
    return "unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace auricle
