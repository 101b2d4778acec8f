#include "evosizer/harness/report.hpp"

#include <fstream>

#include <fmt/format.h>

#include "evosizer/algorithms/params.hpp"

namespace evosizer::harness {

using nlohmann::json;

namespace {

bool is_area(const ExperimentResult& r)
{
    return r.config.backend.kind != BackendKind::Benchmark;
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    out.close();
    if (!out) {
        throw IoError(fmt::format("cannot write {}", path.string()));
    }
}

json summary_json(const Summary& s)
{
    return {{"mean", s.mean}, {"best", s.best}, {"worst", s.worst}, {"stdev", s.stdev}};
}

} // namespace

std::optional<ReportFormat> report_format_from_string(std::string_view s)
{
    if (s == "csv") {
        return ReportFormat::Csv;
    }
    if (s == "json") {
        return ReportFormat::Json;
    }
    if (s == "table") {
        return ReportFormat::Table;
    }
    return std::nullopt;
}

std::string render_trace_csv(const ConvergenceTrace& trace)
{
    std::string out = "iteration,mean,stdev\n";
    for (std::size_t i = 0; i < trace.mean.size(); ++i) {
        out += fmt::format("{},{},{}\n", i + 1, trace.mean[i], trace.stdev[i]);
    }
    return out;
}

std::string render_summary_csv(const ExperimentResult& r, bool include_timing)
{
    const auto& st = r.stats;
    std::string out = include_timing ? "iteration,mean,best,worst,stdev,mrt,cspr\n" : "iteration,mean,best,worst,stdev,cspr\n";
    for (const auto& c : st.checkpoints) {
        out += fmt::format("{},{},{},{},{}", c.iteration, c.fitness.mean, c.fitness.best, c.fitness.worst,
                           c.fitness.stdev);
        out += include_timing ? fmt::format(",,{}\n", c.cspr) : fmt::format(",{}\n", c.cspr);
    }
    out += fmt::format("final,{},{},{},{}", st.fitness.mean, st.fitness.best, st.fitness.worst, st.fitness.stdev);
    out += include_timing ? fmt::format(",{},{}\n", st.mrt, st.cspr) : fmt::format(",{}\n", st.cspr);
    return out;
}

std::string render_runs_csv(const ExperimentResult& r, bool include_timing)
{
    std::string out = include_timing ? "run,seed,best,feasible,evaluations,seconds\n" : "run,seed,best,feasible,evaluations\n";
    for (const auto& run : r.stats.runs) {
        out += fmt::format("{},{},{},{},{}", run.run, run.seed, run.best_fitness, run.feasible ? 1 : 0,
                           run.evaluations);
        out += include_timing ? fmt::format(",{}\n", run.seconds) : "\n";
    }
    return out;
}

json report_json(const ExperimentResult& r, bool include_timing)
{
    const auto& st = r.stats;
    json checkpoints = json::array();
    for (const auto& c : st.checkpoints) {
        auto j = summary_json(c.fitness);
        j["iteration"] = c.iteration;
        j["cspr"] = c.cspr;
        checkpoints.push_back(j);
    }
    json runs = json::array();
    for (const auto& run : st.runs) {
        json j{{"run", run.run},
               {"seed", run.seed},
               {"best", run.best_fitness},
               {"feasible", run.feasible},
               {"position", run.best_position},
               {"evaluations", run.evaluations}};
        if (include_timing) {
            j["seconds"] = run.seconds;
        }
        runs.push_back(j);
    }
    json stats = summary_json(st.fitness);
    stats["cspr"] = st.cspr;
    stats["total_evaluations"] = st.total_evaluations;
    if (include_timing) {
        stats["mrt"] = st.mrt;
    }
    // Worker count does not change results, so it stays out of the report.
    auto config = config_to_json(r.config);
    config.erase("workers");
    return {{"config", config},
            {"evaluator", r.evaluator},
            {"stdev_convention", "population"},
            {"statistics", stats},
            {"checkpoints", checkpoints},
            {"runs", runs},
            {"trace", {{"mean", r.trace.mean}, {"stdev", r.trace.stdev}}}};
}

std::string render_table(const ExperimentResult& r, bool include_timing)
{
    const bool area = is_area(r);
    const double scale = area ? 1e12 : 1.0;
    const auto& st = r.stats;
    std::string out = fmt::format("{} on {} (population {}, {} runs, seed {})\n", algorithms::to_string(r.config.algorithm),
                                  r.evaluator, r.config.population, r.config.runs, r.config.master_seed);
    out += fmt::format("fitness{}; STDEV is the population standard deviation\n", area ? " in um^2" : "");
    out += fmt::format("{:>9} {:>12} {:>12} {:>12} {:>12} {:>9} {:>12}\n", "Iteration", "Mean", "Best", "Worst",
                       "STDEV", "MRT (s)", "CSPR");
    auto row = [&](const std::string& label, const Summary& s, const std::string& mrt, double cspr) {
        out += fmt::format("{:>9} {:>12.6g} {:>12.6g} {:>12.6g} {:>12.4g} {:>9} {:>12.1f}\n", label, s.mean * scale,
                           s.best * scale, s.worst * scale, s.stdev * scale, mrt, cspr);
    };
    for (const auto& c : st.checkpoints) {
        row(std::to_string(c.iteration), c.fitness, "-", c.cspr);
    }
    row("final", st.fitness, include_timing ? fmt::format("{:.3f}", st.mrt) : "-", st.cspr);
    return out;
}

std::vector<std::filesystem::path> emit_report(const ExperimentResult& result, const std::filesystem::path& dir,
                                               const ReportOptions& options)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError(fmt::format("cannot create {}: {}", dir.string(), ec.message()));
    }
    std::vector<std::filesystem::path> files;
    auto emit = [&](const char* name, const std::string& text) {
        files.push_back(dir / name);
        write_file(files.back(), text);
    };
    emit("trace.csv", render_trace_csv(result.trace));
    switch (options.format) {
    case ReportFormat::Csv:
        emit("summary.csv", render_summary_csv(result, options.include_timing));
        emit("runs.csv", render_runs_csv(result, options.include_timing));
        break;
    case ReportFormat::Json:
        emit("report.json", report_json(result, options.include_timing).dump(2) + "\n");
        break;
    case ReportFormat::Table:
        emit("report.txt", render_table(result, options.include_timing));
        break;
    }
    return files;
}

} // namespace evosizer::harness
