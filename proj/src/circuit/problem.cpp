#include "evosizer/circuit/problem.hpp"

#include <array>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "evosizer/circuit/technology.hpp"
#include "evosizer/core/errors.hpp"

namespace evosizer::circuit {

namespace {

constexpr std::array<std::pair<Metric, std::string_view>, 8> kMetricNames{{
    {Metric::GainDb, "gain_db"},
    {Metric::F3db, "f3db"},
    {Metric::Ugb, "ugb"},
    {Metric::PhaseMargin, "pm"},
    {Metric::SlewRate, "sr"},
    {Metric::Power, "power"},
    {Metric::Noise, "noise"},
    {Metric::Area, "area"},
}};

void positive(double v, std::string_view what)
{
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ConfigError(fmt::format("{} must be positive and finite (got {})", what, v));
    }
}

} // namespace

void TechnologyCard::validate() const
{
    positive(vdd, "vdd");
    positive(l_fixed, "l_fixed");
    positive(kp_n, "kp_n");
    positive(kp_p, "kp_p");
    positive(vth_n, "vth_n");
    positive(vth_p, "vth_p");
    positive(lambda_n, "lambda_n");
    positive(lambda_p, "lambda_p");
    positive(cox, "cox");
    positive(temperature, "temperature");
    if (vth_n >= vdd || vth_p >= vdd) {
        throw ConfigError(fmt::format("technology {}: threshold voltage must be below vdd", name));
    }
}

std::optional<double> ProblemSpec::threshold(Metric m, Direction d) const
{
    for (const auto& c : constraints) {
        if (c.metric == m && c.direction == d) {
            return c.threshold;
        }
    }
    return std::nullopt;
}

void ProblemSpec::validate() const
{
    positive(cl, "cl");
    if (topology == Topology::TwoStageMiller) {
        positive(cc, "cc");
    }
    positive(aspect_ratio_min, "aspect_ratio_min");
    positive(ibias_min, "ibias_min");
    positive(vov_min, "vov_min");
    if (!(aspect_ratio_min < aspect_ratio_max)) {
        throw ConfigError("aspect_ratio_min must be below aspect_ratio_max");
    }
    if (!(ibias_min < ibias_max)) {
        throw ConfigError("ibias_min must be below ibias_max");
    }
    if (!(icmr_min < icmr_max)) {
        throw ConfigError("icmr_min must be below icmr_max");
    }
    if (!(vout_min < vout_max)) {
        throw ConfigError("vout_min must be below vout_max");
    }
    if (cascode_headroom < 0.0) {
        throw ConfigError("cascode_headroom must be non-negative");
    }
    for (const auto& c : constraints) {
        if (!std::isfinite(c.threshold)) {
            throw ConfigError(fmt::format("constraint on {} has a non-finite threshold", to_string(c.metric)));
        }
    }
}

std::string_view to_string(Topology t)
{
    return t == Topology::TwoStageMiller ? "two_stage_miller" : "folded_cascode";
}

std::string_view to_string(Objective o)
{
    switch (o) {
    case Objective::Area: return "area";
    case Objective::Noise: return "noise";
    case Objective::Power: return "power";
    }
    return "area";
}

std::string_view to_string(Metric m)
{
    for (const auto& [metric, name] : kMetricNames) {
        if (metric == m) {
            return name;
        }
    }
    return "unknown";
}

std::string_view to_string(Direction d)
{
    return d == Direction::AtLeast ? ">=" : "<=";
}

std::optional<Topology> topology_from_string(std::string_view s)
{
    if (s == "two_stage_miller" || s == "two_stage") {
        return Topology::TwoStageMiller;
    }
    if (s == "folded_cascode") {
        return Topology::FoldedCascode;
    }
    return std::nullopt;
}

std::optional<Objective> objective_from_string(std::string_view s)
{
    if (s == "area") {
        return Objective::Area;
    }
    if (s == "noise") {
        return Objective::Noise;
    }
    if (s == "power") {
        return Objective::Power;
    }
    return std::nullopt;
}

std::optional<Metric> metric_from_string(std::string_view s)
{
    for (const auto& [metric, name] : kMetricNames) {
        if (name == s) {
            return metric;
        }
    }
    // Long-form aliases accepted in spec files.
    if (s == "phase_margin") {
        return Metric::PhaseMargin;
    }
    if (s == "slew_rate") {
        return Metric::SlewRate;
    }
    return std::nullopt;
}

std::size_t decision_dimension(Topology t)
{
    return t == Topology::TwoStageMiller ? 6 : 7;
}

std::vector<std::string> decision_names(Topology t)
{
    if (t == Topology::TwoStageMiller) {
        return {"w12", "w34", "w58", "w6", "w7", "ibias"};
    }
    return {"w12", "w34bp", "wbn5", "w67", "w89", "w1011", "ibias"};
}

} // namespace evosizer::circuit
