#pragma once

#include <span>
#include <string>
#include <vector>

#include "evosizer/core/box.hpp"
#include "evosizer/core/budget.hpp"
#include "evosizer/core/candidate.hpp"

namespace evosizer::core {

/// Outcome of one survivability test.
struct Assessment {
    double fitness = 0.0;
    bool feasible = false;
    /// Names of the failed constraints, empty when feasible.
    std::vector<std::string> violations;
};

/// The extension point every optimizer runs against.
///
/// An evaluator exposes the problem's search space, the derived feasible
/// bounds used for candidate generation and repair, and the survivability
/// test itself. `evaluate` must call `budget.record()` exactly once per
/// evaluation it actually performs; a backend that fails before doing any
/// work (e.g. a missing simulator) must not record.
class Evaluator {
public:
    virtual ~Evaluator() = default;

    [[nodiscard]] virtual std::string name() const = 0;
    [[nodiscard]] virtual const SearchSpace& search_space() const = 0;
    [[nodiscard]] virtual const DerivedBounds& derived_bounds() const = 0;
    virtual Assessment evaluate(std::span<const double> position, EvaluationBudget& budget) const = 0;

    [[nodiscard]] std::size_t dimension() const { return search_space().dimension(); }

    /// Evaluate in place: sets fitness and feasibility.
    void evaluate(Candidate& candidate, EvaluationBudget& budget) const;
};

/// Base for deterministic, side-effect-free evaluators: records one budget
/// unit and forwards to `assess`.
class PureEvaluator : public Evaluator {
public:
    using Evaluator::evaluate;
    Assessment evaluate(std::span<const double> position, EvaluationBudget& budget) const final
    {
        budget.record();
        return assess(position);
    }
    [[nodiscard]] virtual Assessment assess(std::span<const double> position) const = 0;
};

} // namespace evosizer::core
