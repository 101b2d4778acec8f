#include <doctest.h>

#include <atomic>
#include <cmath>
#include <set>
#include <stdexcept>
#include <thread>

#include "evosizer/core/box.hpp"
#include "evosizer/core/budget.hpp"
#include "evosizer/core/candidate.hpp"
#include "evosizer/core/errors.hpp"
#include "evosizer/core/parallel.hpp"
#include "evosizer/core/rng.hpp"
#include "evosizer/core/sampling.hpp"
#include "evosizer/data.hpp"

using namespace evosizer;
using namespace evosizer::core;

TEST_CASE("clamp sends each coordinate to the nearest bound")
{
    const Box box({2.0, 0.0}, {10.0, 4.0});
    CHECK(clamp_to_nearest_bound(std::vector<double>{11.0, -3.0}, box) == std::vector<double>{10.0, 0.0});
    CHECK(clamp_to_nearest_bound(std::vector<double>{5.0, 1.5}, box) == std::vector<double>{5.0, 1.5});
}

TEST_CASE("clamp is idempotent")
{
    const Box box({-1.0, 0.0, 3.0}, {1.0, 0.0, 7.0});
    RngStream rng(7, {1});
    for (int i = 0; i < 1000; ++i) {
        std::vector<double> x{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 15)};
        const auto once = clamp_to_nearest_bound(x, box);
        CHECK(box.contains(once));
        CHECK(clamp_to_nearest_bound(once, box) == once);
    }
}

TEST_CASE("box rejects bad intervals")
{
    CHECK_THROWS_AS(Box({1.0}, {0.0}), ContractViolation);
    CHECK_THROWS_AS(Box({}, {}), ContractViolation);
    CHECK_THROWS_AS(Box({0.0}, {NAN}), ContractViolation);
    CHECK_NOTHROW(Box({1.0}, {1.0}));
    const Box inner({1.0, 1.0}, {2.0, 2.0});
    const Box outer({0.0, 0.0}, {3.0, 2.0});
    CHECK(inner.subset_of(outer));
    CHECK_FALSE(outer.subset_of(inner));
    CHECK_FALSE(inner.contains(std::vector<double>{1.5}));
}

TEST_CASE("rng streams are addressed by seed and key path")
{
    RngStream a(42, {1, 2, 3});
    RngStream b(42, {1, 2, 3});
    RngStream c(42, {1, 2, 4});
    RngStream d(43, {1, 2, 3});
    RngStream e(42, {1, 2});
    const auto first = a.next_u64();
    CHECK(first == b.next_u64());
    CHECK(first != c.next_u64());
    CHECK(first != d.next_u64());
    CHECK(first != e.next_u64());

    const auto sub1 = a.substream({9});
    const auto before = a.next_u64();
    RngStream a2(42, {1, 2, 3});
    a2.next_u64();
    CHECK(a2.next_u64() == before);
    // The seed leads the key path.
    CHECK(sub1.key_path() == std::vector<std::uint64_t>{42, 1, 2, 3, 9});
}

TEST_CASE("rng ranges")
{
    RngStream rng(1, {0});
    double lo = 1.0;
    double hi = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const double u = rng.uniform();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        const double v = rng.uniform(-2.0, 3.0);
        REQUIRE(v >= -2.0);
        REQUIRE(v <= 3.0);
        const auto k = rng.integer(3, 5);
        REQUIRE(k >= 3);
        REQUIRE(k <= 5);
    }
    CHECK(lo < 0.01);
    CHECK(hi > 0.99);
    CHECK(rng.uniform(4.0, 4.0) == 4.0);

    std::set<std::size_t> seen;
    for (int i = 0; i < 1000; ++i) {
        seen.insert(rng.index(7));
    }
    CHECK(seen.size() == 7);

    const auto picks = rng.distinct_indices(10, 10);
    CHECK(std::set<std::size_t>(picks.begin(), picks.end()).size() == 10);
}

TEST_CASE("spawned run streams differ")
{
    std::set<std::uint64_t> firsts;
    for (std::uint64_t r = 0; r < 100; ++r) {
        firsts.insert(spawn_rng_stream(5, r).next_u64());
    }
    CHECK(firsts.size() == 100);
}

TEST_CASE("uniform sampling stays in the box")
{
    const Box box({-1.0, 10.0, 5.0}, {1.0, 20.0, 5.0});
    RngStream rng(3, {});
    for (int i = 0; i < 1000; ++i) {
        const auto x = sample_uniform(box, rng);
        REQUIRE(box.contains(x));
        CHECK(x[2] == 5.0);
    }
}

TEST_CASE("budget counts every record across threads")
{
    EvaluationBudget budget;
    std::vector<std::thread> threads;
    for (int t = 0; t < 8; ++t) {
        threads.emplace_back([&] {
            for (int i = 0; i < 1000; ++i) {
                budget.record();
            }
        });
    }
    for (auto& t : threads) {
        t.join();
    }
    CHECK(budget.evaluations() == 8000);
    EvaluationBudget copy = budget;
    CHECK(copy.evaluations() == 8000);
    CHECK(record_evaluation(copy).evaluations() == 8001);
}

TEST_CASE("worker pool covers every index once")
{
    for (std::size_t workers : {1u, 3u, 8u}) {
        WorkerPool pool(workers);
        CHECK(pool.workers() == workers);
        std::vector<std::atomic<int>> hits(1000);
        pool.parallel_for(hits.size(), [&](std::size_t i) { hits[i].fetch_add(1); });
        for (auto& h : hits) {
            REQUIRE(h.load() == 1);
        }
        pool.parallel_for(0, [](std::size_t) { FAIL("no iterations expected"); });
    }
}

TEST_CASE("worker pool rethrows the lowest failing index")
{
    WorkerPool pool(4);
    try {
        pool.parallel_for(200, [](std::size_t i) {
            if (i % 50 == 17) {
                throw std::runtime_error(std::to_string(i));
            }
        });
        FAIL("expected a throw");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()) == "17");
    }
    int n = 0;
    pool.parallel_for(5, [&](std::size_t) {});
    pool.parallel_for(1, [&](std::size_t) { ++n; });
    CHECK(n == 1);
}

TEST_CASE("candidate ordering")
{
    Candidate feasible_bad({0.0});
    feasible_bad.fitness = 5.0;
    feasible_bad.feasible = true;
    Candidate feasible_good({0.0});
    feasible_good.fitness = 1.0;
    feasible_good.feasible = true;
    Candidate infeasible({0.0});
    infeasible.fitness = 0.1;
    Candidate fresh({0.0});

    CHECK(better_than(feasible_good, feasible_bad));
    CHECK(ranks_before(feasible_bad, 5, infeasible, 0));
    CHECK(ranks_before(feasible_good, 1, feasible_bad, 0));
    CHECK(ranks_before(infeasible, 1, fresh, 0));
    CHECK(ranks_before(feasible_good, 0, feasible_good, 1));
    CHECK_THROWS_AS((void)fresh.fitness_value(), ContractViolation);

    std::vector<Candidate> pop{infeasible, feasible_bad, fresh, feasible_good};
    CHECK(best_feasible_index(pop) == 3u);
    CHECK_FALSE(best_feasible_index({infeasible, fresh}).has_value());

    feasible_good.invalidate();
    CHECK_FALSE(feasible_good.evaluated());
    CHECK_FALSE(feasible_good.feasible);
}

TEST_CASE("embedded data files")
{
    CHECK(data::find("presets/two_stage_65n.spec").has_value());
    CHECK(data::find("templates/folded_cascode.cir").has_value());
    CHECK_FALSE(data::find("presets/nope.spec").has_value());
    CHECK(data::list().size() == 5);
}
