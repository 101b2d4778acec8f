#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace evosizer::circuit {

enum class Topology { TwoStageMiller, FoldedCascode };
enum class Objective { Area, Noise, Power };

/// Performance metrics a constraint can refer to. Canonical units:
/// gain dB, frequencies Hz, phase degrees, slew rate V/us, power W,
/// noise V/sqrt(Hz), area m^2.
enum class Metric { GainDb, F3db, Ugb, PhaseMargin, SlewRate, Power, Noise, Area };
enum class Direction { AtLeast, AtMost };

struct Constraint {
    Metric metric = Metric::GainDb;
    Direction direction = Direction::AtLeast;
    double threshold = 0.0;

    friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// Sizing task: topology, specification constraints, objective and the
/// fixed circuit environment. All values SI except where `Metric` says otherwise.
struct ProblemSpec {
    std::string name;
    Topology topology = Topology::TwoStageMiller;
    Objective objective = Objective::Area;
    std::vector<Constraint> constraints;

    double cl = 0.0;          ///< load capacitance, F
    double cc = 0.0;          ///< Miller capacitance, F (two-stage only)
    double icmr_min = 0.0;    ///< V
    double icmr_max = 0.0;    ///< V
    double vout_min = 0.0;    ///< V, lowest output level that must keep devices saturated
    double vout_max = 0.0;    ///< V
    double aspect_ratio_min = 0.0;
    double aspect_ratio_max = 0.0;
    double ibias_min = 0.0;   ///< A, problem box for the bias current
    double ibias_max = 0.0;   ///< A
    double vov_min = 0.05;    ///< V, smallest overdrive treated as strong inversion
    double cascode_headroom = 0.1; ///< V, drain-source headroom the cascode bias leaves above V_ov
    double noise_frequency = 1e6;  ///< Hz; the thermal model is flat so this is carried for reporting

    [[nodiscard]] std::optional<double> threshold(Metric m, Direction d) const;

    /// Throws ConfigError on inconsistent settings.
    void validate() const;

    friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

[[nodiscard]] std::string_view to_string(Topology t);
[[nodiscard]] std::string_view to_string(Objective o);
[[nodiscard]] std::string_view to_string(Metric m);
[[nodiscard]] std::string_view to_string(Direction d);
[[nodiscard]] std::optional<Topology> topology_from_string(std::string_view s);
[[nodiscard]] std::optional<Objective> objective_from_string(std::string_view s);
[[nodiscard]] std::optional<Metric> metric_from_string(std::string_view s);

/// Number of optimizer-visible variables (matched pairs collapsed, plus I_bias).
[[nodiscard]] std::size_t decision_dimension(Topology t);
/// Names of the decision variables in position-vector order.
[[nodiscard]] std::vector<std::string> decision_names(Topology t);

} // namespace evosizer::circuit
