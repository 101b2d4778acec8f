// evosizer: run sizing experiments and modified-vs-standard comparisons.
//
//   evosizer optimize --algorithm MABCO --problem two_stage_65n --backend analytic --out results/
//   evosizer compare --modified mabco.json --standard sabco.json
//
// Exit codes: 0 ok, 2 configuration error, 3 backend failure, 1 anything else.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "evosizer/harness/compare.hpp"
#include "evosizer/harness/experiment.hpp"
#include "evosizer/harness/report.hpp"

namespace {

using namespace evosizer;

constexpr int kExitConfig = 2;
constexpr int kExitBackend = 3;

struct OptimizeArgs {
    std::string algorithm;
    std::string problem = "two_stage_65n";
    std::string backend = "analytic";
    std::size_t dimension = 6;
    int population = 20;
    int iterations = 300;
    int runs = 10;
    std::uint64_t seed = 1;
    int workers = 1;
    std::string out;
    std::vector<int> checkpoints{100, 200, 300};
    std::string format = "table";
    bool no_timing = false;
};

harness::ReportOptions report_options(const std::string& format, bool no_timing)
{
    const auto f = harness::report_format_from_string(format);
    if (!f) {
        throw ConfigError(fmt::format("unknown format '{}' (csv, json or table)", format));
    }
    return {*f, !no_timing};
}

int optimize(const OptimizeArgs& a)
{
    harness::ExperimentConfig c;
    const auto alg = algorithms::algorithm_from_string(a.algorithm);
    if (!alg) {
        throw ConfigError(fmt::format("unknown algorithm '{}'", a.algorithm));
    }
    c.algorithm = *alg;
    c.problem = a.problem;
    c.backend = harness::parse_backend(a.backend);
    c.dimension = a.dimension;
    c.population = a.population;
    c.iterations = a.iterations;
    c.runs = a.runs;
    c.master_seed = a.seed;
    c.workers = a.workers;
    c.checkpoints = a.checkpoints;
    c.params = harness::default_params(c);
    const auto options = report_options(a.format, a.no_timing);
    c.validate();

    const auto result = harness::run_experiment(c);
    harness::emit_report(result, a.out, options);
    std::cout << harness::render_table(result, options.include_timing);
    return 0;
}

int compare(const std::string& modified, const std::string& standard, const std::string& out,
            const std::string& format, bool no_timing)
{
    const auto options = report_options(format, no_timing);
    const auto cmp = harness::compare_variants(harness::load_config_file(modified), harness::load_config_file(standard));
    std::cout << harness::render_comparison(cmp);
    if (!out.empty()) {
        namespace fs = std::filesystem;
        harness::emit_report(cmp.modified, fs::path(out) / "modified", options);
        harness::emit_report(cmp.standard, fs::path(out) / "standard", options);
        std::ofstream(fs::path(out) / "comparison.json") << harness::comparison_json(cmp).dump(2) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Constrained evolutionary sizing of op-amps"};
    app.require_subcommand(1);

    OptimizeArgs opt;
    auto* run = app.add_subcommand("optimize", "Run one algorithm for several seeds and report statistics");
    run->add_option("--algorithm", opt.algorithm, "MABCO, MGA, MGWO, MPSO, SABCO, SGA, SGWO or SPSO")->required();
    run->add_option("--problem", opt.problem, "Preset name or spec file")->capture_default_str();
    run->add_option("--backend", opt.backend, "analytic, simulator or benchmark:<name>")->capture_default_str();
    run->add_option("--dimension", opt.dimension, "Benchmark dimension")->capture_default_str();
    run->add_option("--population", opt.population)->capture_default_str();
    run->add_option("--iterations", opt.iterations)->capture_default_str();
    run->add_option("--runs", opt.runs)->capture_default_str();
    run->add_option("--seed", opt.seed, "Master seed")->capture_default_str();
    run->add_option("--workers", opt.workers)->capture_default_str();
    run->add_option("--out", opt.out, "Output directory")->required();
    run->add_option("--checkpoints", opt.checkpoints)->delimiter(',')->capture_default_str();
    run->add_option("--format", opt.format, "csv, json or table")->capture_default_str();
    run->add_flag("--no-timing", opt.no_timing, "Leave wall-clock fields out of the report");

    std::string modified;
    std::string standard;
    std::string cmp_out;
    std::string cmp_format = "table";
    bool cmp_no_timing = false;
    auto* cmp = app.add_subcommand("compare", "Paired-seed comparison of two experiment configs (JSON)");
    cmp->add_option("--modified", modified)->required()->check(CLI::ExistingFile);
    cmp->add_option("--standard", standard)->required()->check(CLI::ExistingFile);
    cmp->add_option("--out", cmp_out, "Also write both reports and comparison.json here");
    cmp->add_option("--format", cmp_format)->capture_default_str();
    cmp->add_flag("--no-timing", cmp_no_timing);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        if (run->parsed()) {
            return optimize(opt);
        }
        return compare(modified, standard, cmp_out, cmp_format, cmp_no_timing);
    } catch (const ConfigError& e) {
        fmt::print(stderr, "configuration error: {}\n", e.what());
        return kExitConfig;
    } catch (const BackendError& e) {
        fmt::print(stderr, "backend failure: {}\n", e.what());
        return kExitBackend;
    } catch (const StarvationError& e) {
        fmt::print(stderr, "backend failure: {}\n", e.what());
        return kExitBackend;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }
}
