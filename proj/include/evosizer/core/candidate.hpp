#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace evosizer::core {

/// One member of a population: food source, individual, search agent or particle.
struct Candidate {
    std::vector<double> position;
    /// Unset until the candidate has been evaluated.
    std::optional<double> fitness;
    bool feasible = false;
    /// Exhaustion counter used by the bee colony scout phase.
    int trial = 0;

    Candidate() = default;
    explicit Candidate(std::vector<double> pos) : position(std::move(pos)) {}

    [[nodiscard]] bool evaluated() const noexcept { return fitness.has_value(); }
    /// Throws ContractViolation when unevaluated.
    [[nodiscard]] double fitness_value() const;
    /// Forget the evaluation (after the position changed).
    void invalidate() noexcept
    {
        fitness.reset();
        feasible = false;
    }
};

/// Strict minimization order. Both candidates must be evaluated.
[[nodiscard]] bool better_than(const Candidate& a, const Candidate& b);

/// Ranking used for leader and survivor selection: feasible before infeasible,
/// then lower fitness, then lower index. Unevaluated candidates rank last.
[[nodiscard]] bool ranks_before(const Candidate& a, std::size_t index_a, const Candidate& b, std::size_t index_b);

/// Index of the best feasible candidate (ties to the lowest index), or nullopt.
[[nodiscard]] std::optional<std::size_t> best_feasible_index(const std::vector<Candidate>& population);

} // namespace evosizer::core
