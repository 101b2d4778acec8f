#pragma once

#include "evosizer/circuit/performance.hpp"
#include "evosizer/circuit/spec_file.hpp"
#include "evosizer/core/evaluator.hpp"

namespace evosizer::circuit {

/// Survivability test backed by the first-order amplifier models.
class AnalyticCircuitEvaluator final : public core::PureEvaluator {
public:
    /// Validates the problem and derives its bounds; throws ConfigError.
    explicit AnalyticCircuitEvaluator(CircuitProblem problem);

    [[nodiscard]] std::string name() const override;
    [[nodiscard]] const core::SearchSpace& search_space() const override { return space_; }
    [[nodiscard]] const core::DerivedBounds& derived_bounds() const override { return bounds_; }
    [[nodiscard]] core::Assessment assess(std::span<const double> position) const override;

    [[nodiscard]] PerformanceReport report(std::span<const double> position) const;
    [[nodiscard]] const CircuitProblem& problem() const noexcept { return problem_; }

private:
    CircuitProblem problem_;
    core::SearchSpace space_;
    core::DerivedBounds bounds_;
};

} // namespace evosizer::circuit
