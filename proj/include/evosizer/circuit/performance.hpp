#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evosizer/circuit/problem.hpp"

namespace evosizer::circuit {

struct DeviceMargin {
    std::string device;
    double margin = 0.0; ///< V_DS - V_ov at the worst checked operating point, V
};

struct ConstraintMargin {
    Metric metric = Metric::GainDb;
    double margin = 0.0; ///< positive when satisfied, in the metric's canonical unit
};

/// Evaluated specifications of one sizing.
struct PerformanceReport {
    Topology topology = Topology::TwoStageMiller;
    double gain_db = 0.0;
    double f3db = 0.0;      ///< Hz
    double ugb = 0.0;       ///< Hz
    double pm = 0.0;        ///< degrees
    double sr = 0.0;        ///< V/us
    double power = 0.0;     ///< W
    double noise_psd = 0.0; ///< V/sqrt(Hz), input-referred
    double area = 0.0;      ///< m^2
    bool saturation_ok = false;
    std::vector<DeviceMargin> device_margins;
    std::vector<ConstraintMargin> constraint_margins;

    [[nodiscard]] double metric(Metric m) const;
};

/// Sum of W_i * L_i over physical devices.
[[nodiscard]] double area_fitness(std::span<const double> widths, std::span<const double> lengths);

/// Physical device widths (matched pairs expanded) for a decision vector.
/// Two-stage: M1..M8; folded cascode: M1, M2, M3, M4, Mbp, Mbn, M5, M6..M11.
[[nodiscard]] std::vector<double> expand_widths(Topology t, std::span<const double> position);
[[nodiscard]] std::vector<std::string> device_names(Topology t);

/// Fill `constraint_margins` from the spec's constraints.
void annotate_margins(PerformanceReport& report, const ProblemSpec& spec);

/// Objective value of a report under the spec's objective.
[[nodiscard]] double objective_value(const PerformanceReport& report, Objective objective);

} // namespace evosizer::circuit
