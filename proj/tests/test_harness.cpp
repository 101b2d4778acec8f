#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "evosizer/circuit/analytic_evaluator.hpp"
#include "evosizer/circuit/survivability.hpp"
#include "evosizer/core/errors.hpp"
#include "evosizer/harness/benchmarks.hpp"
#include "evosizer/harness/compare.hpp"
#include "evosizer/harness/config.hpp"
#include "evosizer/harness/experiment.hpp"
#include "evosizer/harness/report.hpp"

using namespace evosizer;
using namespace evosizer::harness;
using algorithms::Algorithm;
using nlohmann::json;

namespace {

ExperimentConfig sphere_config(Algorithm alg, int workers)
{
    ExperimentConfig c;
    c.algorithm = alg;
    c.backend = parse_backend("benchmark:sphere");
    c.dimension = 4;
    c.population = 10;
    c.iterations = 60;
    c.runs = 5;
    c.master_seed = 77;
    c.workers = workers;
    c.checkpoints = {20, 40, 60};
    c.params = default_params(c);
    return c;
}

ExperimentConfig two_stage_config(Algorithm alg, int n, int k, int runs)
{
    ExperimentConfig c;
    c.algorithm = alg;
    c.problem = "two_stage_65n";
    c.population = n;
    c.iterations = k;
    c.runs = runs;
    c.master_seed = 2024;
    c.workers = 4;
    c.params = default_params(c);
    return c;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("population statistics")
{
    const std::vector<double> v{1, 2, 3};
    const auto s = summarize(v);
    CHECK(s.mean == 2.0);
    CHECK(s.best == 1.0);
    CHECK(s.worst == 3.0);
    CHECK(s.stdev == doctest::Approx(std::sqrt(2.0 / 3.0)));
    const auto one = summarize(std::vector<double>{4.5});
    CHECK(one.stdev == 0.0);
    CHECK(one.best == one.mean);
    CHECK(one.mean == one.worst);
}

TEST_CASE("benchmarks have their known optima")
{
    auto f = [](const char* name, std::vector<double> x) {
        const auto ev = benchmark_evaluator(name, x.size());
        auto* pure = dynamic_cast<const core::PureEvaluator*>(ev.get());
        REQUIRE(pure != nullptr);
        return pure->assess(x);
    };
    CHECK(f("sphere", {0, 0, 0}).fitness == 0.0);
    CHECK(f("rosenbrock", {1, 1, 1, 1}).fitness == 0.0);
    const auto at = f("constrained_sphere", {1, 0});
    CHECK(at.fitness == 1.0);
    CHECK(at.feasible);
    CHECK_FALSE(f("constrained_sphere", {0.5, 0}).feasible);
    CHECK_THROWS_AS((void)benchmark_evaluator("ackley", 2), ConfigError);
    CHECK_THROWS_AS((void)benchmark_evaluator("sphere", 0), ConfigError);

    // Brute-force grid over the feasible half-plane.
    const auto cs = benchmark_evaluator("constrained_sphere", 2);
    auto* pure = dynamic_cast<const core::PureEvaluator*>(cs.get());
    double best = 1e9;
    std::vector<double> arg;
    for (int i = 0; i <= 100; ++i) {
        for (int j = 0; j <= 100; ++j) {
            const std::vector<double> x{-5.0 + 0.1 * i, -5.0 + 0.1 * j};
            const auto a = pure->assess(x);
            if (a.feasible && a.fitness < best) {
                best = a.fitness;
                arg = x;
            }
        }
    }
    CHECK(best == doctest::Approx(1.0));
    CHECK(arg[0] == doctest::Approx(1.0));
    CHECK(arg[1] == doctest::Approx(0.0));
}

TEST_CASE("backend strings")
{
    CHECK(parse_backend("analytic").kind == BackendKind::Analytic);
    CHECK(parse_backend("simulator").kind == BackendKind::Simulator);
    CHECK(parse_backend("benchmark:rosenbrock").benchmark == "rosenbrock");
    CHECK(to_string(parse_backend("benchmark:sphere")) == "benchmark:sphere");
    CHECK_THROWS_AS((void)parse_backend("benchmark:nope"), ConfigError);
    CHECK_THROWS_AS((void)parse_backend("spice"), ConfigError);
}

TEST_CASE("config JSON")
{
    const auto c = config_from_json(json::parse(R"({
        "algorithm": "MPSO", "problem": "folded_cascode_180n", "backend": "analytic",
        "population": 30, "iterations": 200, "runs": 4, "seed": 9, "workers": 2,
        "checkpoints": [100, 200], "params": {"c1": 1.5}
    })"));
    CHECK(c.algorithm == Algorithm::Mpso);
    CHECK(c.params.pso.w_min == 0.3);
    CHECK(c.params.pso.w_max == 0.8);
    CHECK(c.params.pso.c1 == 1.5);
    CHECK(c.effective_params().pso.population == 30);
    CHECK(c.effective_params().pso.max_ite == 200);
    const auto back = config_from_json(config_to_json(c));
    CHECK(config_to_json(back) == config_to_json(c));

    CHECK(config_from_json(json::parse(R"({"algorithm": "MPSO"})")).params.pso.w_min == 0.5);
    CHECK_THROWS_AS((void)config_from_json(json::parse(R"({"algoritm": "MPSO"})")), ConfigError);
    CHECK_THROWS_AS((void)config_from_json(json::parse(R"({"runs": 0})")), ConfigError);
    CHECK_THROWS_AS((void)config_from_json(json::parse(R"({"runs": "ten"})")), ConfigError);
    CHECK_THROWS_AS((void)config_from_json(json::parse(R"({"algorithm": "MABCO", "params": {"w_min": 1}})")),
                    ConfigError);
    CHECK_THROWS_AS((void)config_from_json(json::parse(R"({"problem": "nope"})")), ConfigError);
    CHECK_THROWS_AS((void)load_config_file("/no/such/config.json"), ConfigError);
}

TEST_CASE("checkpoints outside the run are dropped")
{
    ExperimentConfig c;
    c.iterations = 150;
    c.checkpoints = {300, 100, 100, 200};
    CHECK(c.effective_checkpoints() == std::vector<int>{100});
}

TEST_CASE("an unavailable simulator is a configuration error")
{
    ExperimentConfig c;
    c.backend = parse_backend("simulator");
    c.simulator.executable = "/no/such/ngspice";
    CHECK_THROWS_AS((void)make_evaluator(c), ConfigError);
    CHECK_THROWS_AS((void)run_experiment(c), ConfigError);
}

TEST_CASE("experiment statistics")
{
    const auto r = run_experiment(sphere_config(Algorithm::Mgwo, 2));
    const auto& st = r.stats;
    REQUIRE(st.runs.size() == 5);
    CHECK(st.fitness.best <= st.fitness.mean);
    CHECK(st.fitness.mean <= st.fitness.worst);
    CHECK(st.fitness.stdev >= 0.0);
    std::uint64_t total = 0;
    for (const auto& run : st.runs) {
        total += run.evaluations;
        CHECK(run.seed == run_seed(77, run.run));
    }
    CHECK(st.total_evaluations == total);
    CHECK(st.cspr == static_cast<double>(total) / 5.0);

    REQUIRE(r.trace.mean.size() == 60);
    for (std::size_t i = 1; i < r.trace.mean.size(); ++i) {
        CHECK(r.trace.mean[i] <= r.trace.mean[i - 1]);
    }
    REQUIRE(st.checkpoints.size() == 3);
    CHECK(st.checkpoints[0].iteration == 20);
    CHECK(st.checkpoints[1].fitness.mean == r.trace.mean[39]);
    CHECK(st.checkpoints[2].fitness.mean == st.fitness.mean);
    CHECK(st.checkpoints[2].cspr == st.cspr);
    CHECK(st.checkpoints[0].cspr < st.checkpoints[1].cspr);
}

TEST_CASE("reports are identical across worker counts")
{
    for (Algorithm alg : {Algorithm::Mabco, Algorithm::Sga, Algorithm::Mpso}) {
        std::vector<std::string> jsons;
        std::vector<std::string> csvs;
        for (int workers : {1, 4, 8}) {
            const auto r = run_experiment(sphere_config(alg, workers));
            jsons.push_back(report_json(r, false).dump(2));
            csvs.push_back(render_summary_csv(r, false) + render_runs_csv(r, false) + render_trace_csv(r.trace) +
                           render_table(r, false));
        }
        CHECK(jsons[0] == jsons[1]);
        CHECK(jsons[0] == jsons[2]);
        CHECK(csvs[0] == csvs[1]);
        CHECK(csvs[0] == csvs[2]);
    }
}

TEST_CASE("report files")
{
    auto c = sphere_config(Algorithm::Mabco, 1);
    c.iterations = 300;
    c.checkpoints = {100, 200, 300};
    const auto r = run_experiment(c);
    const auto dir = std::filesystem::temp_directory_path() / "evosizer-report-test";
    std::filesystem::remove_all(dir);

    const auto files = emit_report(r, dir, {ReportFormat::Csv, true});
    CHECK(files.size() == 3);
    const auto trace = slurp(dir / "trace.csv");
    CHECK(trace.rfind("iteration,mean,stdev\n", 0) == 0);
    CHECK(std::count(trace.begin(), trace.end(), '\n') == 301);
    CHECK(slurp(dir / "summary.csv").rfind("iteration,mean,best,worst,stdev,mrt,cspr\n", 0) == 0);
    emit_report(r, dir, {ReportFormat::Csv, true});
    CHECK(slurp(dir / "trace.csv") == trace);

    emit_report(r, dir, {ReportFormat::Json, false});
    const auto parsed = json::parse(slurp(dir / "report.json"));
    CHECK(parsed == report_json(r, false));
    CHECK(parsed.at("stdev_convention") == "population");
    CHECK_FALSE(parsed.at("statistics").contains("mrt"));
    CHECK(report_json(r, true).at("statistics").contains("mrt"));

    emit_report(r, dir, {ReportFormat::Table, true});
    const auto table = slurp(dir / "report.txt");
    const auto header = table.find("Iteration");
    REQUIRE(header != std::string::npos);
    const auto line = table.substr(header, table.find('\n', header) - header);
    CHECK(line.find("Mean") < line.find("Best"));
    CHECK(line.find("Best") < line.find("Worst"));
    CHECK(line.find("Worst") < line.find("STDEV"));
    CHECK(line.find("STDEV") < line.find("MRT"));
    CHECK(line.find("MRT") < line.find("CSPR"));

    std::filesystem::remove_all(dir);
    CHECK_THROWS_AS(emit_report(r, "/proc/evosizer-cannot-write"), IoError);
}

TEST_CASE("self-comparison has zero difference")
{
    const auto c = sphere_config(Algorithm::Mga, 4);
    const auto cmp = compare_variants(c, c);
    CHECK(cmp.mean_difference == 0.0);
    CHECK(cmp.ties == 5);
    CHECK(render_comparison(cmp).find("MGA vs MGA") != std::string::npos);
}

TEST_CASE("mismatched comparisons are rejected")
{
    auto a = sphere_config(Algorithm::Mabco, 1);
    auto b = sphere_config(Algorithm::Sabco, 1);
    b.master_seed = 1;
    CHECK_THROWS_AS((void)compare_variants(a, b), ConfigError);
    b = sphere_config(Algorithm::Sabco, 1);
    b.backend = parse_backend("benchmark:rosenbrock");
    CHECK_THROWS_AS((void)compare_variants(a, b), ConfigError);
    b = sphere_config(Algorithm::Sabco, 1);
    b.population = 20;
    CHECK_THROWS_AS((void)compare_variants(a, b), ConfigError);
}

TEST_CASE("modified bee colony beats the standard one on the two-stage problem")
{
    const auto cmp = compare_variants(two_stage_config(Algorithm::Mabco, 10, 100, 10),
                                      two_stage_config(Algorithm::Sabco, 10, 100, 10));
    CHECK(cmp.modified.stats.fitness.mean <= cmp.standard.stats.fitness.mean);
    CHECK(cmp.mean_difference <= 0.0);
}

TEST_CASE("modified grey wolf is more consistent than the standard one")
{
    const auto cmp = compare_variants(two_stage_config(Algorithm::Mgwo, 10, 100, 10),
                                      two_stage_config(Algorithm::Sgwo, 10, 100, 10));
    CHECK(cmp.modified.stats.fitness.stdev <= cmp.standard.stats.fitness.stdev);
}

TEST_CASE("MABCO finals on the two-stage preset survive re-evaluation")
{
    const auto r = run_experiment(two_stage_config(Algorithm::Mabco, 20, 200, 10));
    const circuit::AnalyticCircuitEvaluator check(circuit::load_preset("two_stage_65n"));
    for (const auto& run : r.stats.runs) {
        CHECK(circuit::survivability_test(check.report(run.best_position), check.problem().spec).pass);
    }
}
