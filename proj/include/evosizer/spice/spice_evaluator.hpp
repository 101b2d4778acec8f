#pragma once

#include "evosizer/circuit/performance.hpp"
#include "evosizer/circuit/spec_file.hpp"
#include "evosizer/core/evaluator.hpp"
#include "evosizer/spice/netlist.hpp"
#include "evosizer/spice/simulator.hpp"

namespace evosizer::spice {

/// Survivability test backed by an external circuit simulator.
class SpiceEvaluator final : public core::Evaluator {
public:
    /// Throws ConfigError on a bad problem, template or config, and
    /// SimulatorNotFound when the executable cannot be resolved.
    SpiceEvaluator(circuit::CircuitProblem problem, SimulatorConfig config);
    SpiceEvaluator(circuit::CircuitProblem problem, SimulatorConfig config, NetlistTemplate tmpl);

    [[nodiscard]] std::string name() const override;
    [[nodiscard]] const core::SearchSpace& search_space() const override { return space_; }
    [[nodiscard]] const core::DerivedBounds& derived_bounds() const override { return bounds_; }
    core::Assessment evaluate(std::span<const double> position, core::EvaluationBudget& budget) const override;
    using core::Evaluator::evaluate;

    /// Simulate and parse; area and margins filled in.
    [[nodiscard]] circuit::PerformanceReport report(std::span<const double> position,
                                                    core::EvaluationBudget& budget) const;

private:
    circuit::CircuitProblem problem_;
    SimulatorConfig config_;
    NetlistTemplate template_;
    core::SearchSpace space_;
    core::DerivedBounds bounds_;
};

} // namespace evosizer::spice
