#include <fmt/format.h>

#include "common.hpp"
#include "evosizer/algorithms/operators.hpp"
#include "evosizer/core/errors.hpp"

namespace evosizer::algorithms {

namespace detail {

using core::Candidate;

OptimizerResult run_pso(const core::Evaluator& problem, const PsoParams& params, Variant variant, std::uint64_t seed,
                        const RunOptions& options)
{
    params.validate();
    RunContext ctx(problem, variant, seed, options);
    const bool modified = ctx.modified();
    const std::size_t n = static_cast<std::size_t>(params.population);
    const std::size_t dim = ctx.dimension();
    const int attempts = modified ? params.max_count : 1;

    auto swarm = ctx.initial_population(params.population);
    std::vector<std::vector<double>> velocity(n, std::vector<double>(dim, 0.0));
    auto pbest = swarm;
    BestTracker best;
    best.offer(swarm);
    std::vector<IterationRecord> history;

    for (int ite = 1; ite <= params.max_ite; ++ite) {
        const auto it = static_cast<std::uint64_t>(ite);
        const double w = modified ? pso_inertia_schedule(ite, params.max_ite, params.w_min, params.w_max)
                                  : params.w_max;
        const auto gbest = best.get().position;
        std::vector<Candidate> moved(n);
        std::vector<std::vector<double>> new_velocity(n);
        ctx.parallel_for(n, [&](std::size_t i) {
            auto rng = ctx.stream(it, kMove, i);
            for (int t = 0; t < attempts; ++t) {
                auto s = pso_update(swarm[i].position, velocity[i], pbest[i].position, gbest, w, params.c1,
                                    params.c2, rng);
                moved[i] = ctx.evaluated(ctx.repair(std::move(s.position)));
                new_velocity[i] = std::move(s.velocity);
                if (moved[i].feasible || !modified) {
                    return;
                }
            }
            if (params.regenerate_on_failure) {
                auto regen = ctx.stream(it, kRegenerate, i);
                moved[i] = ctx.feasible_sample(regen, ctx.init_attempts(),
                                               fmt::format("iteration {} regeneration of particle {}", ite, i));
                new_velocity[i].assign(dim, 0.0);
            } else {
                moved[i] = swarm[i];
                new_velocity[i] = velocity[i];
            }
        });
        swarm = std::move(moved);
        velocity = std::move(new_velocity);
        for (std::size_t i = 0; i < n; ++i) {
            if (improves(swarm[i], pbest[i])) {
                pbest[i] = swarm[i];
            }
        }
        best.offer(pbest);
        record_iteration(history, best, swarm, ctx.budget());
    }
    return finish(ctx, best, std::move(history));
}

} // namespace detail

OptimizerResult run_mpso(const core::Evaluator& problem, const PsoParams& params, std::uint64_t seed,
                         const RunOptions& options)
{
    return detail::run_pso(problem, params, Variant::Modified, seed, options);
}

} // namespace evosizer::algorithms
