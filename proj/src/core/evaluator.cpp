#include "evosizer/core/evaluator.hpp"

#include <fmt/format.h>

#include "evosizer/core/errors.hpp"

namespace evosizer::core {

void Evaluator::evaluate(Candidate& candidate, EvaluationBudget& budget) const
{
    require(candidate.position.size() == dimension(),
            fmt::format("{}: candidate has {} variables, expected {}", name(), candidate.position.size(), dimension()));
    const Assessment a = evaluate(std::span<const double>(candidate.position), budget);
    candidate.fitness = a.fitness;
    candidate.feasible = a.feasible;
}

} // namespace evosizer::core
