#include "evosizer/harness/compare.hpp"

#include <fmt/format.h>

#include "evosizer/algorithms/params.hpp"

namespace evosizer::harness {

namespace {

void check_pairable(const ExperimentConfig& a, const ExperimentConfig& b)
{
    auto mismatch = [](const char* what) {
        throw ConfigError(fmt::format("compare: configs differ in {}", what));
    };
    if (a.backend != b.backend) {
        mismatch("backend");
    }
    if (a.backend.kind == BackendKind::Benchmark ? a.dimension != b.dimension : a.problem != b.problem) {
        mismatch("problem");
    }
    if (a.population != b.population) {
        mismatch("population");
    }
    if (a.iterations != b.iterations) {
        mismatch("iterations");
    }
    if (a.runs != b.runs) {
        mismatch("runs");
    }
    if (a.master_seed != b.master_seed) {
        mismatch("seed");
    }
}

} // namespace

PairedComparison compare_results(ExperimentResult modified, ExperimentResult standard)
{
    check_pairable(modified.config, standard.config);
    PairedComparison c;
    const auto& m = modified.stats.runs;
    const auto& s = standard.stats.runs;
    double sum = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double d = m[i].best_fitness - s[i].best_fitness;
        sum += d;
        if (d < 0.0) {
            ++c.modified_wins;
        } else if (d > 0.0) {
            ++c.standard_wins;
        } else {
            ++c.ties;
        }
    }
    c.mean_difference = sum / static_cast<double>(m.size());
    c.modified = std::move(modified);
    c.standard = std::move(standard);
    return c;
}

PairedComparison compare_variants(const ExperimentConfig& modified, const ExperimentConfig& standard)
{
    check_pairable(modified, standard);
    auto m = run_experiment(modified);
    auto s = run_experiment(standard);
    return compare_results(std::move(m), std::move(s));
}

std::string render_comparison(const PairedComparison& c)
{
    const auto& m = c.modified;
    const auto& s = c.standard;
    const double scale = m.config.backend.kind == BackendKind::Benchmark ? 1.0 : 1e12;
    std::string out = fmt::format("{} vs {} on {} ({} paired runs, population {}, {} iterations)\n",
                                  algorithms::to_string(m.config.algorithm), algorithms::to_string(s.config.algorithm),
                                  m.evaluator, m.config.runs, m.config.population, m.config.iterations);
    out += fmt::format("{:>8} {:>12} {:>12} {:>12} {:>12} {:>12}\n", "", "Mean", "Best", "Worst", "STDEV", "CSPR");
    for (const auto* r : {&m, &s}) {
        const auto& f = r->stats.fitness;
        out += fmt::format("{:>8} {:>12.6g} {:>12.6g} {:>12.6g} {:>12.4g} {:>12.1f}\n",
                           algorithms::to_string(r->config.algorithm), f.mean * scale, f.best * scale,
                           f.worst * scale, f.stdev * scale, r->stats.cspr);
    }
    out += fmt::format("mean difference {:.6g}, wins {} / {} / ties {}\n", c.mean_difference * scale, c.modified_wins,
                       c.standard_wins, c.ties);
    return out;
}

nlohmann::json comparison_json(const PairedComparison& c)
{
    return {{"modified", std::string(algorithms::to_string(c.modified.config.algorithm))},
            {"standard", std::string(algorithms::to_string(c.standard.config.algorithm))},
            {"mean_difference", c.mean_difference},
            {"modified_wins", c.modified_wins},
            {"standard_wins", c.standard_wins},
            {"ties", c.ties},
            {"modified_stats",
             {{"mean", c.modified.stats.fitness.mean}, {"stdev", c.modified.stats.fitness.stdev},
              {"cspr", c.modified.stats.cspr}}},
            {"standard_stats",
             {{"mean", c.standard.stats.fitness.mean}, {"stdev", c.standard.stats.fitness.stdev},
              {"cspr", c.standard.stats.cspr}}}};
}

} // namespace evosizer::harness
