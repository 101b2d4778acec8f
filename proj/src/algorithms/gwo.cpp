#include <algorithm>
#include <numeric>

#include "common.hpp"
#include "evosizer/algorithms/operators.hpp"
#include "evosizer/core/errors.hpp"

namespace evosizer::algorithms {

namespace detail {

using core::Candidate;

namespace {

// Alpha, beta, delta: the three best of the remembered leaders and the
// current pack. Remembered leaders come first so they win ties.
std::vector<Candidate> select_leaders(const std::vector<Candidate>& leaders, const std::vector<Candidate>& pack)
{
    std::vector<const Candidate*> all;
    for (const auto& c : leaders) {
        all.push_back(&c);
    }
    for (const auto& c : pack) {
        all.push_back(&c);
    }
    std::vector<std::size_t> order(all.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return core::ranks_before(*all[a], a, *all[b], b);
    });
    std::vector<Candidate> out;
    for (std::size_t idx : order) {
        const auto& c = *all[idx];
        const bool duplicate =
            std::any_of(out.begin(), out.end(), [&](const Candidate& o) { return o.position == c.position; });
        if (!duplicate) {
            out.push_back(c);
        }
        if (out.size() == 3) {
            break;
        }
    }
    // A pack of identical wolves still needs three leaders.
    while (out.size() < 3) {
        out.push_back(out.back());
    }
    return out;
}

} // namespace

OptimizerResult run_gwo(const core::Evaluator& problem, const GwoParams& params, Variant variant, std::uint64_t seed,
                        const RunOptions& options)
{
    params.validate();
    require(params.population >= 3, "GWO: population must be at least 3 (alpha, beta and delta)");
    RunContext ctx(problem, variant, seed, options);
    const bool modified = ctx.modified();
    const std::size_t n = static_cast<std::size_t>(params.population);
    const int attempts = modified ? params.max_count : 1;
    const auto& upper_corner = problem.search_space().upper();

    auto pack = ctx.initial_population(params.population);
    BestTracker best;
    best.offer(pack);
    auto leaders = select_leaders({}, pack);
    std::vector<IterationRecord> history;

    for (int ite = 1; ite <= params.max_ite; ++ite) {
        const auto it = static_cast<std::uint64_t>(ite);
        const double a = gwo_a_schedule(ite, params.max_ite);
        std::vector<Candidate> moved(n);
        ctx.parallel_for(n, [&](std::size_t i) {
            auto rng = ctx.stream(it, kMove, i);
            // Each retry moves on from the previous, failed position.
            std::vector<double> x = pack[i].position;
            for (int t = 0; t < attempts; ++t) {
                x = ctx.repair(
                    gwo_position_update(x, leaders[0].position, leaders[1].position, leaders[2].position, a, rng));
                moved[i] = ctx.evaluated(x);
                if (moved[i].feasible) {
                    return;
                }
            }
            if (modified) {
                // Retries exhausted: park the wolf at the upper corner, unevaluated.
                moved[i] = Candidate(upper_corner);
            }
        });
        pack = std::move(moved);
        leaders = select_leaders(leaders, pack);
        best.offer(pack);
        record_iteration(history, best, pack, ctx.budget());
    }
    return finish(ctx, best, std::move(history));
}

} // namespace detail

OptimizerResult run_mgwo(const core::Evaluator& problem, const GwoParams& params, std::uint64_t seed,
                         const RunOptions& options)
{
    return detail::run_gwo(problem, params, Variant::Modified, seed, options);
}

} // namespace evosizer::algorithms
