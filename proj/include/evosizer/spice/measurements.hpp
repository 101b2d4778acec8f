#pragma once

#include <string>
#include <string_view>

#include "evosizer/circuit/performance.hpp"
#include "evosizer/core/errors.hpp"

namespace evosizer::spice {

/// Simulator output lacks a marker or carries an unreadable value.
class MeasurementParseError : public BackendError {
public:
    using BackendError::BackendError;
};

/// Parse `name = value` marker lines into a report.
///
/// Markers: av_db (dB), f3db and ugb (Hz), pm (deg), sr (V/us), power (W),
/// noise (V/rtHz) and vsat_<device> (V) for every device of the topology.
/// A marker repeated later in the output overrides the earlier value. Area and
/// constraint margins are left for the caller.
[[nodiscard]] circuit::PerformanceReport parse_measurements(std::string_view raw, circuit::Topology topology);

/// Marker text for a report, the inverse of parse_measurements.
[[nodiscard]] std::string render_measurements(const circuit::PerformanceReport& report);

} // namespace evosizer::spice
