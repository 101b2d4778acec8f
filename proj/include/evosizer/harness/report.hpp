#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "evosizer/harness/experiment.hpp"

namespace evosizer::harness {

enum class ReportFormat { Csv, Json, Table };

[[nodiscard]] std::optional<ReportFormat> report_format_from_string(std::string_view s);

struct ReportOptions {
    ReportFormat format = ReportFormat::Table;
    /// Wall-clock fields (MRT, per-run seconds) vary between executions; drop
    /// them to get byte-identical reports.
    bool include_timing = true;
};

/// `iteration,mean,stdev`, one row per iteration.
[[nodiscard]] std::string render_trace_csv(const ConvergenceTrace& trace);
/// One row for the final result, one per checkpoint.
[[nodiscard]] std::string render_summary_csv(const ExperimentResult& result, bool include_timing);
[[nodiscard]] std::string render_runs_csv(const ExperimentResult& result, bool include_timing);
[[nodiscard]] nlohmann::json report_json(const ExperimentResult& result, bool include_timing);
/// Columns: Iteration, Mean, Best, Worst, STDEV, MRT, CSPR.
[[nodiscard]] std::string render_table(const ExperimentResult& result, bool include_timing);

/// Write the report into `dir` (created if needed) and return the files
/// written. trace.csv is always written. Throws std::filesystem::filesystem_error
/// or IoError on failure.
std::vector<std::filesystem::path> emit_report(const ExperimentResult& result, const std::filesystem::path& dir,
                                               const ReportOptions& options = {});

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace evosizer::harness
