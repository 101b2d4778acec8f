#include "evosizer/circuit/performance.hpp"

#include <fmt/format.h>

#include "evosizer/core/errors.hpp"

namespace evosizer::circuit {

double PerformanceReport::metric(Metric m) const
{
    switch (m) {
    case Metric::GainDb: return gain_db;
    case Metric::F3db: return f3db;
    case Metric::Ugb: return ugb;
    case Metric::PhaseMargin: return pm;
    case Metric::SlewRate: return sr;
    case Metric::Power: return power;
    case Metric::Noise: return noise_psd;
    case Metric::Area: return area;
    }
    return 0.0;
}

double area_fitness(std::span<const double> widths, std::span<const double> lengths)
{
    require(widths.size() == lengths.size(),
            fmt::format("area_fitness: {} widths but {} lengths", widths.size(), lengths.size()));
    double area = 0.0;
    for (std::size_t i = 0; i < widths.size(); ++i) {
        area += widths[i] * lengths[i];
    }
    return area;
}

std::vector<double> expand_widths(Topology t, std::span<const double> x)
{
    require(x.size() == decision_dimension(t),
            fmt::format("{}: position has {} variables, expected {}", to_string(t), x.size(), decision_dimension(t)));
    if (t == Topology::TwoStageMiller) {
        // [W12, W34, W58, W6, W7, I]
        return {x[0], x[0], x[1], x[1], x[2], x[3], x[4], x[2]};
    }
    // [W12, W34bp, Wbn5, W67, W89, W1011, I]
    return {x[0], x[0], x[1], x[1], x[1], x[2], x[2], x[3], x[3], x[4], x[4], x[5], x[5]};
}

std::vector<std::string> device_names(Topology t)
{
    if (t == Topology::TwoStageMiller) {
        return {"m1", "m2", "m3", "m4", "m5", "m6", "m7", "m8"};
    }
    return {"m1", "m2", "m3", "m4", "mbp", "mbn", "m5", "m6", "m7", "m8", "m9", "m10", "m11"};
}

void annotate_margins(PerformanceReport& report, const ProblemSpec& spec)
{
    report.constraint_margins.clear();
    for (const auto& c : spec.constraints) {
        const double value = report.metric(c.metric);
        const double margin = c.direction == Direction::AtLeast ? value - c.threshold : c.threshold - value;
        report.constraint_margins.push_back({c.metric, margin});
    }
}

double objective_value(const PerformanceReport& report, Objective objective)
{
    switch (objective) {
    case Objective::Area: return report.area;
    case Objective::Noise: return report.noise_psd;
    case Objective::Power: return report.power;
    }
    return report.area;
}

} // namespace evosizer::circuit
