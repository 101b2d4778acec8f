#include <algorithm>
#include <numeric>
#include <optional>

#include <fmt/format.h>

#include "common.hpp"
#include "evosizer/algorithms/operators.hpp"
#include "evosizer/core/errors.hpp"

namespace evosizer::algorithms {

namespace detail {

using core::Candidate;

OptimizerResult run_ga(const core::Evaluator& problem, const GaParams& params, Variant variant, std::uint64_t seed,
                       const RunOptions& options)
{
    params.validate();
    require(params.population >= 2, "GA: population must be at least 2");
    RunContext ctx(problem, variant, seed, options);
    const bool modified = ctx.modified();
    const std::size_t n = static_cast<std::size_t>(params.population);
    const std::size_t dim = ctx.dimension();
    const int cap = modified ? kStarvationFactor * params.max_count : 1;
    const core::Box& box = ctx.working_box();

    auto pop = ctx.initial_population(params.population);
    BestTracker best;
    best.offer(pop);
    std::vector<IterationRecord> history;

    for (int gen = 1; gen <= params.gen_max; ++gen) {
        const auto g = static_cast<std::uint64_t>(gen);
        const double alpha = ga_alpha_schedule(gen, params.gen_max, params.alpha_min, params.alpha_max);

        auto mutate = [&](std::vector<double> x, core::RngStream& rng) {
            const std::size_t count = rng.integer(1, dim);
            for (std::size_t d : rng.distinct_indices(dim, count)) {
                if (modified) {
                    const auto w = ga_mutation_bounds(x[d], alpha, box.upper(d), box.lower(d));
                    x[d] = rng.uniform(w.lower, w.upper);
                } else {
                    x[d] = rng.uniform(box.lower(d), box.upper(d));
                }
            }
            return ctx.repair(std::move(x));
        };
        // Redraw until the offspring passes; standard GA keeps the first draw.
        auto until_feasible = [&](auto&& make) -> std::optional<Candidate> {
            Candidate c;
            for (int t = 0; t < cap; ++t) {
                c = ctx.evaluated(make());
                if (c.feasible) {
                    return c;
                }
            }
            if (modified) {
                return std::nullopt;
            }
            return c;
        };

        const auto& parents = pop;
        std::vector<Candidate> offspring(3 * n);
        ctx.parallel_for(n, [&](std::size_t s) {
            auto rng_x = ctx.stream(g, kCrossover, s);
            auto child = until_feasible([&] {
                const auto pick = rng_x.distinct_indices(n, 2);
                return ctx.repair(single_point_crossover(parents[pick[0]].position, parents[pick[1]].position, rng_x));
            });
            if (!child) {
                throw StarvationError(fmt::format("{}: generation {} slot {}: no feasible crossover offspring in {} "
                                                  "attempts",
                                                  ctx.label(), gen, s, cap));
            }
            offspring[3 * s] = std::move(*child);

            // A mutation that keeps failing hands back its unmutated source.
            auto rng_c = ctx.stream(g, kMutateChild, s);
            const Candidate& source_c = offspring[3 * s];
            auto mutant = until_feasible([&] { return mutate(source_c.position, rng_c); });
            offspring[3 * s + 1] = mutant ? std::move(*mutant) : source_c;

            auto rng_p = ctx.stream(g, kMutateParent, s);
            const Candidate& source_p = parents[rng_p.index(n)];
            mutant = until_feasible([&] { return mutate(source_p.position, rng_p); });
            offspring[3 * s + 2] = mutant ? std::move(*mutant) : source_p;
        });

        std::vector<Candidate> pool = pop;
        pool.insert(pool.end(), std::make_move_iterator(offspring.begin()), std::make_move_iterator(offspring.end()));
        std::vector<std::size_t> order(pool.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return core::ranks_before(pool[a], a, pool[b], b);
        });
        std::vector<Candidate> next;
        next.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            next.push_back(std::move(pool[order[i]]));
        }
        pop = std::move(next);
        best.offer(pop);
        record_iteration(history, best, pop, ctx.budget());
    }
    return finish(ctx, best, std::move(history));
}

} // namespace detail

OptimizerResult run_mga(const core::Evaluator& problem, const GaParams& params, std::uint64_t seed,
                        const RunOptions& options)
{
    return detail::run_ga(problem, params, Variant::Modified, seed, options);
}

} // namespace evosizer::algorithms
