#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "evosizer/circuit/problem.hpp"
#include "evosizer/circuit/technology.hpp"

namespace evosizer::circuit {

/// A technology card together with the sizing task run on it.
struct CircuitProblem {
    TechnologyCard technology;
    ProblemSpec spec;

    friend bool operator==(const CircuitProblem&, const CircuitProblem&) = default;
};

/// Parse "<number> [unit]" into SI. `dimension` is the unit with SI prefixes
/// removed, e.g. "V/s" for "100 V/us" or "A/V^2" for "280 uA/V^2"; an empty
/// dimension means dimensionless. Throws ConfigError on mismatch.
[[nodiscard]] double parse_quantity(std::string_view text, std::string_view dimension);

/// Parse the key-value spec format:
///
///     [technology]
///     vdd = 1.1 V
///     [problem]
///     topology = two_stage_miller
///     [constraints]
///     gain_db >= 20 dB
///
/// `origin` is used in error messages. Throws ConfigError.
[[nodiscard]] CircuitProblem parse_problem_text(std::string_view text, std::string_view origin = "<text>");
[[nodiscard]] CircuitProblem load_problem_file(const std::filesystem::path& path);

/// Render in the same format; parse_problem_text(render_problem_text(p)) == p.
[[nodiscard]] std::string render_problem_text(const CircuitProblem& problem);

/// Built-in presets: two_stage_65n, two_stage_65n_p150, folded_cascode_180n.
[[nodiscard]] std::vector<std::string> preset_names();
[[nodiscard]] bool is_preset(std::string_view name);
[[nodiscard]] CircuitProblem load_preset(std::string_view name);
/// Preset name, or otherwise a path to a spec file.
[[nodiscard]] CircuitProblem load_problem(std::string_view preset_or_path);

} // namespace evosizer::circuit
