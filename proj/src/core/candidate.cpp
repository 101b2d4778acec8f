#include "evosizer/core/candidate.hpp"

#include "evosizer/core/errors.hpp"

namespace evosizer::core {

double Candidate::fitness_value() const
{
    require(fitness.has_value(), "Candidate: fitness read before evaluation");
    return *fitness;
}

bool better_than(const Candidate& a, const Candidate& b)
{
    return a.fitness_value() < b.fitness_value();
}

bool ranks_before(const Candidate& a, std::size_t index_a, const Candidate& b, std::size_t index_b)
{
    const bool a_ok = a.evaluated() && a.feasible;
    const bool b_ok = b.evaluated() && b.feasible;
    if (a_ok != b_ok) {
        return a_ok;
    }
    if (a.evaluated() && b.evaluated() && *a.fitness != *b.fitness) {
        return *a.fitness < *b.fitness;
    }
    if (a.evaluated() != b.evaluated()) {
        return a.evaluated();
    }
    return index_a < index_b;
}

std::optional<std::size_t> best_feasible_index(const std::vector<Candidate>& population)
{
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < population.size(); ++i) {
        const auto& c = population[i];
        if (!c.evaluated() || !c.feasible) {
            continue;
        }
        if (!best || *c.fitness < *population[*best].fitness) {
            best = i;
        }
    }
    return best;
}

} // namespace evosizer::core
