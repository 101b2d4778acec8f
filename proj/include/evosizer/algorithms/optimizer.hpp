#pragma once

#include <cstdint>
#include <vector>

#include "evosizer/algorithms/params.hpp"
#include "evosizer/core/budget.hpp"
#include "evosizer/core/candidate.hpp"
#include "evosizer/core/evaluator.hpp"
#include "evosizer/core/parallel.hpp"
#include "evosizer/core/rng.hpp"

namespace evosizer::algorithms {

struct IterationRecord {
    double best_fitness = 0.0; ///< best feasible so far
    double mean_fitness = 0.0; ///< over evaluated population members
    std::uint64_t evaluations = 0; ///< cumulative
};

struct OptimizerResult {
    core::Candidate best;
    std::vector<IterationRecord> history;
    core::EvaluationBudget budget;
    double elapsed = 0.0; ///< wall seconds
};

struct RunOptions {
    /// Pool for per-candidate work inside an iteration; null runs inline.
    core::WorkerPool* pool = nullptr;
    /// Draws allowed per member when building the initial feasible population.
    int init_attempts = 100000;
};

/// Scout move for an exhausted food source: A crosses it with the best source,
/// B crosses two distinct random members; each is redrawn up to `attempts`
/// times until it passes, and the better passing one is returned with trial 0.
/// If neither passes, the exhausted source comes back unchanged (trial 0).
[[nodiscard]] core::Candidate abco_scout_replacement(const core::Candidate& exhausted, const core::Candidate& best,
                                                     const std::vector<core::Candidate>& population,
                                                     const core::Evaluator& problem, const core::Box& repair_box,
                                                     core::EvaluationBudget& budget, int attempts,
                                                     core::RngStream& rng);

/// Modified artificial bee colony: scheduled limit and update width, crossover scouts.
[[nodiscard]] OptimizerResult run_mabco(const core::Evaluator& problem, const AbcoParams& params, std::uint64_t seed,
                                        const RunOptions& options = {});
/// Modified GA: alpha-windowed mutation, 3N offspring pooled with the parents.
[[nodiscard]] OptimizerResult run_mga(const core::Evaluator& problem, const GaParams& params, std::uint64_t seed,
                                      const RunOptions& options = {});
/// Modified grey wolf optimizer with survivability retry and upper-corner fallback.
[[nodiscard]] OptimizerResult run_mgwo(const core::Evaluator& problem, const GwoParams& params, std::uint64_t seed,
                                       const RunOptions& options = {});
/// PSO with linearly decreasing inertia, retry, and PGF regeneration.
[[nodiscard]] OptimizerResult run_mpso(const core::Evaluator& problem, const PsoParams& params, std::uint64_t seed,
                                       const RunOptions& options = {});

/// Same loops with the modifications switched off: uniform initialization,
/// clamping to the problem box, no retry loops, constant limit / inertia,
/// single-dimension bee moves, random scouts, full-box mutation.
[[nodiscard]] OptimizerResult run_standard_variant(Family family, const core::Evaluator& problem,
                                                   const AlgorithmParams& params, std::uint64_t seed,
                                                   const RunOptions& options = {});

[[nodiscard]] OptimizerResult run_algorithm(Algorithm algorithm, const core::Evaluator& problem,
                                            const AlgorithmParams& params, std::uint64_t seed,
                                            const RunOptions& options = {});

} // namespace evosizer::algorithms
