#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "evosizer/core/evaluator.hpp"
#include "evosizer/harness/config.hpp"

namespace evosizer::harness {

struct RunRecord {
    int run = 0;
    std::uint64_t seed = 0;
    double best_fitness = 0.0;
    bool feasible = false;
    std::vector<double> best_position;
    std::uint64_t evaluations = 0;
    double seconds = 0.0;
    std::vector<double> best_by_iteration;
};

/// Spread of run bests. `stdev` divides by n.
struct Summary {
    double mean = 0.0;
    double best = 0.0;
    double worst = 0.0;
    double stdev = 0.0;
};

[[nodiscard]] Summary summarize(std::span<const double> values);

struct CheckpointStatistics {
    int iteration = 0;
    Summary fitness;
    double cspr = 0.0; ///< mean evaluations per run up to this iteration
};

struct RunStatistics {
    Summary fitness;
    double mrt = 0.0;  ///< mean wall seconds per run
    double cspr = 0.0; ///< total evaluations / runs
    std::uint64_t total_evaluations = 0;
    std::vector<CheckpointStatistics> checkpoints;
    std::vector<RunRecord> runs;
};

/// Per iteration, the mean and (population) stdev across runs of the best-so-far fitness.
struct ConvergenceTrace {
    std::vector<double> mean;
    std::vector<double> stdev;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::string evaluator;
    RunStatistics stats;
    ConvergenceTrace trace;
};

/// Seed of run r: the first draw of spawn_rng_stream(master_seed, r).
[[nodiscard]] std::uint64_t run_seed(std::uint64_t master_seed, int run);

/// Execute `config.runs` independent runs on `config.workers` threads and aggregate.
/// Results do not depend on the worker count.
[[nodiscard]] ExperimentResult run_experiment(const ExperimentConfig& config);
[[nodiscard]] ExperimentResult run_experiment(const ExperimentConfig& config, const core::Evaluator& evaluator);

} // namespace evosizer::harness
