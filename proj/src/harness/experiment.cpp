#include "evosizer/harness/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "evosizer/algorithms/optimizer.hpp"
#include "evosizer/core/parallel.hpp"
#include "evosizer/core/rng.hpp"

namespace evosizer::harness {

Summary summarize(std::span<const double> values)
{
    require(!values.empty(), "summarize: no values");
    Summary s;
    const double n = static_cast<double>(values.size());
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    s.best = *lo;
    s.worst = *hi;
    double ss = 0.0;
    for (double v : values) {
        ss += (v - s.mean) * (v - s.mean);
    }
    s.stdev = std::sqrt(ss / n);
    // Rounding can push the mean a hair outside [best, worst].
    s.mean = std::clamp(s.mean, s.best, s.worst);
    return s;
}

std::uint64_t run_seed(std::uint64_t master_seed, int run)
{
    return core::spawn_rng_stream(master_seed, static_cast<std::uint64_t>(run)).next_u64();
}

ExperimentResult run_experiment(const ExperimentConfig& config)
{
    config.validate();
    const auto evaluator = make_evaluator(config);
    return run_experiment(config, *evaluator);
}

ExperimentResult run_experiment(const ExperimentConfig& config, const core::Evaluator& evaluator)
{
    config.validate();
    const auto params = config.effective_params();
    const auto runs = static_cast<std::size_t>(config.runs);

    std::vector<RunRecord> records(runs);
    std::vector<std::vector<std::uint64_t>> evaluations_by_iteration(runs);
    core::WorkerPool pool(static_cast<std::size_t>(config.workers));
    pool.parallel_for(runs, [&](std::size_t r) {
        RunRecord& rec = records[r];
        rec.run = static_cast<int>(r);
        rec.seed = run_seed(config.master_seed, rec.run);
        const auto result = algorithms::run_algorithm(config.algorithm, evaluator, params, rec.seed);
        rec.best_fitness = result.best.fitness_value();
        rec.feasible = result.best.feasible;
        rec.best_position = result.best.position;
        rec.evaluations = result.budget.evaluations();
        rec.seconds = result.elapsed;
        for (const auto& h : result.history) {
            rec.best_by_iteration.push_back(h.best_fitness);
            evaluations_by_iteration[r].push_back(h.evaluations);
        }
    });

    ExperimentResult out;
    out.config = config;
    out.evaluator = evaluator.name();
    auto& stats = out.stats;
    std::vector<double> bests;
    double seconds = 0.0;
    for (const auto& rec : records) {
        bests.push_back(rec.best_fitness);
        seconds += rec.seconds;
        stats.total_evaluations += rec.evaluations;
    }
    const double n = static_cast<double>(runs);
    stats.fitness = summarize(bests);
    stats.mrt = seconds / n;
    stats.cspr = static_cast<double>(stats.total_evaluations) / n;

    const std::size_t iterations = static_cast<std::size_t>(config.iterations);
    std::vector<double> column(runs);
    for (std::size_t it = 0; it < iterations; ++it) {
        for (std::size_t r = 0; r < runs; ++r) {
            const auto& series = records[r].best_by_iteration;
            require(series.size() == iterations, "run_experiment: history length differs from iterations");
            column[r] = series[it];
        }
        const auto s = summarize(column);
        out.trace.mean.push_back(s.mean);
        out.trace.stdev.push_back(s.stdev);
    }
    for (int c : config.effective_checkpoints()) {
        const auto it = static_cast<std::size_t>(c - 1);
        CheckpointStatistics cs;
        cs.iteration = c;
        std::uint64_t evals = 0;
        for (std::size_t r = 0; r < runs; ++r) {
            column[r] = records[r].best_by_iteration[it];
            evals += evaluations_by_iteration[r][it];
        }
        cs.fitness = summarize(column);
        cs.cspr = static_cast<double>(evals) / n;
        stats.checkpoints.push_back(cs);
    }
    stats.runs = std::move(records);
    return out;
}

} // namespace evosizer::harness
