#include "evosizer/spice/spice_evaluator.hpp"

#include "evosizer/circuit/bounds.hpp"
#include "evosizer/circuit/survivability.hpp"
#include "evosizer/spice/measurements.hpp"

namespace evosizer::spice {

SpiceEvaluator::SpiceEvaluator(circuit::CircuitProblem problem, SimulatorConfig config)
    : SpiceEvaluator(problem, std::move(config), NetlistTemplate::builtin(problem.spec.topology))
{
}

SpiceEvaluator::SpiceEvaluator(circuit::CircuitProblem problem, SimulatorConfig config, NetlistTemplate tmpl)
    : problem_(std::move(problem)),
      config_(std::move(config)),
      template_(std::move(tmpl)),
      space_(circuit::search_space(problem_.spec, problem_.technology)),
      bounds_(circuit::derive_bounds(problem_.spec, problem_.technology))
{
    config_.validate();
    if (template_.topology() != problem_.spec.topology) {
        throw ConfigError("simulator backend: template topology does not match the problem");
    }
    if (!simulator_available(config_)) {
        throw SimulatorNotFound("simulator '" + config_.executable + "' not found (set " + kSimulatorEnv +
                                " to its path)");
    }
}

std::string SpiceEvaluator::name() const
{
    return "simulator:" + problem_.spec.name;
}

circuit::PerformanceReport SpiceEvaluator::report(std::span<const double> position,
                                                  core::EvaluationBudget& budget) const
{
    const auto netlist = emit_netlist(position, template_, problem_, config_.model_include);
    auto r = parse_measurements(run_simulation(netlist, config_, budget), problem_.spec.topology);
    const auto widths = circuit::expand_widths(problem_.spec.topology, position);
    const std::vector<double> lengths(widths.size(), problem_.technology.l_fixed);
    r.area = circuit::area_fitness(widths, lengths);
    circuit::annotate_margins(r, problem_.spec);
    return r;
}

core::Assessment SpiceEvaluator::evaluate(std::span<const double> position, core::EvaluationBudget& budget) const
{
    const auto r = report(position, budget);
    const auto verdict = circuit::survivability_test(r, problem_.spec);
    core::Assessment a;
    a.fitness = circuit::objective_value(r, problem_.spec.objective);
    a.feasible = verdict.pass;
    for (const auto& v : verdict.violations) {
        a.violations.push_back(v.name);
    }
    return a;
}

} // namespace evosizer::spice
