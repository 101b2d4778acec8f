#include "evosizer/circuit/analytic_evaluator.hpp"

#include "evosizer/circuit/amplifiers.hpp"
#include "evosizer/circuit/bounds.hpp"
#include "evosizer/circuit/survivability.hpp"

namespace evosizer::circuit {

AnalyticCircuitEvaluator::AnalyticCircuitEvaluator(CircuitProblem problem)
    : problem_(std::move(problem)),
      space_(circuit::search_space(problem_.spec, problem_.technology)),
      bounds_(derive_bounds(problem_.spec, problem_.technology))
{
}

std::string AnalyticCircuitEvaluator::name() const
{
    return "analytic:" + problem_.spec.name;
}

PerformanceReport AnalyticCircuitEvaluator::report(std::span<const double> position) const
{
    return evaluate_circuit(position, problem_.spec, problem_.technology);
}

core::Assessment AnalyticCircuitEvaluator::assess(std::span<const double> position) const
{
    const auto r = report(position);
    const auto verdict = survivability_test(r, problem_.spec);
    core::Assessment a;
    a.fitness = objective_value(r, problem_.spec.objective);
    a.feasible = verdict.pass;
    for (const auto& v : verdict.violations) {
        a.violations.push_back(v.name);
    }
    return a;
}

} // namespace evosizer::circuit
