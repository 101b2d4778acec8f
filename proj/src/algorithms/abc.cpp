#include <cmath>

#include <fmt/format.h>

#include "common.hpp"
#include "evosizer/algorithms/operators.hpp"
#include "evosizer/core/errors.hpp"
#include "evosizer/core/sampling.hpp"

namespace evosizer::algorithms {

namespace {

using core::Candidate;

core::Candidate evaluate_repaired(std::vector<double> x, const core::Evaluator& problem, const core::Box& box,
                                  core::EvaluationBudget& budget)
{
    Candidate c(core::clamp_to_nearest_bound(x, box));
    problem.evaluate(c, budget);
    return c;
}

// Weight of a source in the onlooker roulette (minimization).
double roulette_weight(double f)
{
    return f >= 0.0 ? 1.0 / (1.0 + f) : 1.0 + std::abs(f);
}

std::size_t roulette(const std::vector<double>& cumulative, core::RngStream& rng)
{
    const double target = rng.uniform() * cumulative.back();
    for (std::size_t i = 0; i < cumulative.size(); ++i) {
        if (target < cumulative[i]) {
            return i;
        }
    }
    return cumulative.size() - 1;
}

std::size_t partner(std::size_t i, std::size_t n, core::RngStream& rng)
{
    const std::size_t k = rng.index(n - 1);
    return k >= i ? k + 1 : k;
}

} // namespace

core::Candidate abco_scout_replacement(const core::Candidate& exhausted, const core::Candidate& best,
                                       const std::vector<core::Candidate>& population, const core::Evaluator& problem,
                                       const core::Box& repair_box, core::EvaluationBudget& budget, int attempts,
                                       core::RngStream& rng)
{
    require(population.size() >= 2, "abco_scout_replacement: population needs at least two members");
    require(attempts >= 1, "abco_scout_replacement: attempts must be positive");

    Candidate a;
    for (int t = 0; t < attempts; ++t) {
        a = evaluate_repaired(single_point_crossover(exhausted.position, best.position, rng), problem, repair_box,
                              budget);
        if (a.feasible) {
            break;
        }
    }
    Candidate b;
    for (int t = 0; t < attempts; ++t) {
        const auto pick = rng.distinct_indices(population.size(), 2);
        b = evaluate_repaired(
            single_point_crossover(population[pick[0]].position, population[pick[1]].position, rng), problem,
            repair_box, budget);
        if (b.feasible) {
            break;
        }
    }

    Candidate out = exhausted;
    if (detail::improves(a, Candidate{}) || detail::improves(b, Candidate{})) {
        out = detail::improves(b, a) ? b : a;
    }
    out.trial = 0;
    return out;
}

namespace detail {

OptimizerResult run_abco(const core::Evaluator& problem, const AbcoParams& params, Variant variant, std::uint64_t seed,
                         const RunOptions& options)
{
    params.validate();
    require(params.population >= 2, "ABCO: population must be at least 2 (a neighbour needs k != i)");
    RunContext ctx(problem, variant, seed, options);
    const bool modified = ctx.modified();
    const std::size_t n = static_cast<std::size_t>(params.population);
    const std::size_t dim = ctx.dimension();
    const int attempts = modified ? params.max_count : 1;

    auto pop = ctx.initial_population(params.population);
    BestTracker best;
    best.offer(pop);
    std::vector<IterationRecord> history;

    // Neighbour search around source i against a snapshot of the population.
    auto explore = [&](const std::vector<Candidate>& snap, std::size_t i, std::size_t width, core::RngStream& rng) {
        Candidate c;
        for (int t = 0; t < attempts; ++t) {
            const std::size_t k = partner(i, n, rng);
            const auto dims = rng.distinct_indices(dim, width);
            c = ctx.evaluated(ctx.repair(abco_neighbor(snap[i].position, snap[k].position, dims, rng)));
            if (c.feasible) {
                break;
            }
        }
        return c;
    };

    for (int ite = 1; ite <= params.max_ite; ++ite) {
        const auto it = static_cast<std::uint64_t>(ite);
        const int limit = modified ? abco_limit_schedule(ite, params.max_ite, params.limit_min, params.limit_max)
                                   : params.limit_max;
        const std::size_t width = modified ? abco_dim_schedule(ite, params.max_ite, dim) : 1;

        // Employed bees.
        {
            const auto snap = pop;
            std::vector<Candidate> found(n);
            ctx.parallel_for(n, [&](std::size_t i) {
                auto rng = ctx.stream(it, kEmployed, i);
                found[i] = explore(snap, i, width, rng);
            });
            for (std::size_t i = 0; i < n; ++i) {
                if (improves(found[i], pop[i])) {
                    pop[i] = std::move(found[i]);
                    pop[i].trial = 0;
                } else {
                    ++pop[i].trial;
                }
            }
            best.offer(pop);
        }

        // Onlooker bees.
        {
            const auto snap = pop;
            std::vector<double> cumulative(n);
            double total = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                total += snap[i].evaluated() ? roulette_weight(*snap[i].fitness) : 0.0;
                cumulative[i] = total;
            }
            std::vector<std::size_t> source(n);
            std::vector<Candidate> found(n);
            ctx.parallel_for(n, [&](std::size_t o) {
                auto rng = ctx.stream(it, kOnlooker, o);
                source[o] = roulette(cumulative, rng);
                found[o] = explore(snap, source[o], width, rng);
            });
            for (std::size_t o = 0; o < n; ++o) {
                auto& target = pop[source[o]];
                if (improves(found[o], target)) {
                    target = std::move(found[o]);
                    target.trial = 0;
                }
            }
            best.offer(pop);
        }

        // Scouts.
        {
            std::vector<std::size_t> exhausted;
            for (std::size_t i = 0; i < n; ++i) {
                if (pop[i].trial >= limit) {
                    exhausted.push_back(i);
                }
            }
            const auto snap = pop;
            const Candidate leader = best.get();
            std::vector<Candidate> replacement(exhausted.size());
            ctx.parallel_for(exhausted.size(), [&](std::size_t e) {
                const std::size_t i = exhausted[e];
                auto rng = ctx.stream(it, kScout, i);
                if (modified) {
                    replacement[e] = abco_scout_replacement(snap[i], leader, snap, problem, ctx.working_box(),
                                                            ctx.budget(), attempts, rng);
                } else {
                    replacement[e] = ctx.evaluated(core::sample_uniform(ctx.working_box(), rng));
                }
            });
            for (std::size_t e = 0; e < exhausted.size(); ++e) {
                pop[exhausted[e]] = std::move(replacement[e]);
                pop[exhausted[e]].trial = 0;
            }
            best.offer(pop);
        }

        record_iteration(history, best, pop, ctx.budget());
    }
    return finish(ctx, best, std::move(history));
}

} // namespace detail

OptimizerResult run_mabco(const core::Evaluator& problem, const AbcoParams& params, std::uint64_t seed,
                          const RunOptions& options)
{
    return detail::run_abco(problem, params, Variant::Modified, seed, options);
}

} // namespace evosizer::algorithms
