#include "common.hpp"

#include <fmt/format.h>

#include "evosizer/core/errors.hpp"
#include "evosizer/core/sampling.hpp"

namespace evosizer::algorithms::detail {

RunContext::RunContext(const core::Evaluator& problem, Variant variant, std::uint64_t seed, const RunOptions& options)
    : problem_(problem), variant_(variant), seed_(seed), init_attempts_(options.init_attempts), pool_(options.pool)
{
    require(init_attempts_ > 0, "RunOptions: init_attempts must be positive");
    if (pool_ == nullptr) {
        own_pool_ = std::make_unique<core::WorkerPool>(1);
        pool_ = own_pool_.get();
    }
    require(problem.derived_bounds().dimension() == problem.dimension(),
            fmt::format("{}: derived bounds and search space differ in dimension", problem.name()));
    label_ = problem.name();
    budget_.restart_clock();
}

const core::Box& RunContext::working_box() const noexcept
{
    return modified() ? problem_.derived_bounds() : problem_.search_space();
}

std::vector<double> RunContext::repair(std::vector<double> position) const
{
    return core::clamp_to_nearest_bound(position, working_box());
}

core::Candidate RunContext::evaluated(std::vector<double> position)
{
    core::Candidate c(std::move(position));
    problem_.evaluate(c, budget_);
    return c;
}

core::Candidate RunContext::feasible_sample(core::RngStream& rng, int attempts, const std::string& what)
{
    for (int a = 0; a < attempts; ++a) {
        auto c = evaluated(core::sample_uniform(working_box(), rng));
        if (c.feasible) {
            return c;
        }
    }
    throw StarvationError(fmt::format("{}: {} found no feasible candidate in {} draws", label_, what, attempts));
}

std::vector<core::Candidate> RunContext::initial_population(int n)
{
    std::vector<core::Candidate> pop(static_cast<std::size_t>(n));
    parallel_for(pop.size(), [&](std::size_t i) {
        auto rng = stream(0, kInit, i);
        pop[i] = feasible_sample(rng, init_attempts_, fmt::format("initialization of member {}", i));
    });
    return pop;
}

void RunContext::parallel_for(std::size_t count, const std::function<void(std::size_t)>& body)
{
    pool_->parallel_for(count, body);
}

void BestTracker::offer(const core::Candidate& c)
{
    if (c.evaluated() && c.feasible && (!best_ || *c.fitness < *best_->fitness)) {
        best_ = c;
    }
}

void BestTracker::offer(const std::vector<core::Candidate>& population)
{
    for (const auto& c : population) {
        offer(c);
    }
}

const core::Candidate& BestTracker::get() const
{
    require(best_.has_value(), "no feasible candidate has been found");
    return *best_;
}

bool improves(const core::Candidate& c, const core::Candidate& incumbent)
{
    if (!c.evaluated() || !c.feasible) {
        return false;
    }
    if (!incumbent.evaluated() || !incumbent.feasible) {
        return true;
    }
    return *c.fitness < *incumbent.fitness;
}

void record_iteration(std::vector<IterationRecord>& history, const BestTracker& best,
                      const std::vector<core::Candidate>& population, const core::EvaluationBudget& budget)
{
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& c : population) {
        if (c.evaluated()) {
            sum += *c.fitness;
            ++n;
        }
    }
    IterationRecord r;
    r.best_fitness = best.get().fitness_value();
    r.mean_fitness = n > 0 ? sum / static_cast<double>(n) : r.best_fitness;
    r.evaluations = budget.evaluations();
    history.push_back(r);
}

OptimizerResult finish(RunContext& ctx, const BestTracker& best, std::vector<IterationRecord> history)
{
    OptimizerResult out;
    out.best = best.get();
    out.best.trial = 0;
    out.history = std::move(history);
    out.budget = ctx.budget();
    out.elapsed = ctx.budget().elapsed_seconds();
    return out;
}

} // namespace evosizer::algorithms::detail
