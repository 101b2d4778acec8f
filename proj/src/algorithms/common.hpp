#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "evosizer/algorithms/optimizer.hpp"
#include "evosizer/core/rng.hpp"

namespace evosizer::algorithms::detail {

// Stream keys: every random draw is addressed by (iteration, phase, index).
enum Phase : std::uint64_t {
    kInit = 1,
    kEmployed,
    kOnlooker,
    kScout,
    kCrossover,
    kMutateChild,
    kMutateParent,
    kMove,
    kRegenerate,
};

class RunContext {
public:
    RunContext(const core::Evaluator& problem, Variant variant, std::uint64_t seed, const RunOptions& options);

    [[nodiscard]] const core::Evaluator& problem() const noexcept { return problem_; }
    [[nodiscard]] bool modified() const noexcept { return variant_ == Variant::Modified; }
    [[nodiscard]] std::size_t dimension() const noexcept { return problem_.dimension(); }
    /// Derived bounds for modified variants, the problem box otherwise.
    [[nodiscard]] const core::Box& working_box() const noexcept;
    [[nodiscard]] core::EvaluationBudget& budget() noexcept { return budget_; }

    [[nodiscard]] core::RngStream stream(std::uint64_t iteration, Phase phase, std::uint64_t index) const
    {
        return core::RngStream(seed_, {iteration, phase, index});
    }

    [[nodiscard]] std::vector<double> repair(std::vector<double> position) const;
    [[nodiscard]] core::Candidate evaluated(std::vector<double> position);

    /// Sample the working box until the survivability test passes.
    [[nodiscard]] core::Candidate feasible_sample(core::RngStream& rng, int attempts, const std::string& what);
    /// N feasible members, drawn in parallel from per-member streams.
    [[nodiscard]] std::vector<core::Candidate> initial_population(int n);

    void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

    [[nodiscard]] const std::string& label() const noexcept { return label_; }
    [[nodiscard]] int init_attempts() const noexcept { return init_attempts_; }

private:
    const core::Evaluator& problem_;
    Variant variant_;
    std::uint64_t seed_;
    int init_attempts_;
    core::EvaluationBudget budget_;
    std::unique_ptr<core::WorkerPool> own_pool_;
    core::WorkerPool* pool_;
    std::string label_;
};

/// Best feasible candidate seen so far.
class BestTracker {
public:
    void offer(const core::Candidate& c);
    void offer(const std::vector<core::Candidate>& population);
    [[nodiscard]] bool has_value() const noexcept { return best_.has_value(); }
    [[nodiscard]] const core::Candidate& get() const;

private:
    std::optional<core::Candidate> best_;
};

/// c passes and beats the incumbent (any passing candidate beats a failing one).
[[nodiscard]] bool improves(const core::Candidate& c, const core::Candidate& incumbent);

void record_iteration(std::vector<IterationRecord>& history, const BestTracker& best,
                      const std::vector<core::Candidate>& population, const core::EvaluationBudget& budget);

[[nodiscard]] OptimizerResult finish(RunContext& ctx, const BestTracker& best, std::vector<IterationRecord> history);

OptimizerResult run_abco(const core::Evaluator& problem, const AbcoParams& params, Variant variant, std::uint64_t seed,
                         const RunOptions& options);
OptimizerResult run_ga(const core::Evaluator& problem, const GaParams& params, Variant variant, std::uint64_t seed,
                       const RunOptions& options);
OptimizerResult run_gwo(const core::Evaluator& problem, const GwoParams& params, Variant variant, std::uint64_t seed,
                        const RunOptions& options);
OptimizerResult run_pso(const core::Evaluator& problem, const PsoParams& params, Variant variant, std::uint64_t seed,
                        const RunOptions& options);

} // namespace evosizer::algorithms::detail
