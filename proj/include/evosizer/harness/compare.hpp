#pragma once

#include <string>

#include <json.hpp>

#include "evosizer/harness/experiment.hpp"

namespace evosizer::harness {

/// Same seeds on both sides; run i of one side is paired with run i of the other.
struct PairedComparison {
    ExperimentResult modified;
    ExperimentResult standard;
    double mean_difference = 0.0; ///< mean over pairs of (modified - standard); negative favours modified
    int modified_wins = 0;
    int standard_wins = 0;
    int ties = 0;
};

/// Throws ConfigError unless the two configs share problem, backend,
/// population, iterations, runs and seed.
[[nodiscard]] PairedComparison compare_variants(const ExperimentConfig& modified, const ExperimentConfig& standard);
[[nodiscard]] PairedComparison compare_results(ExperimentResult modified, ExperimentResult standard);

[[nodiscard]] std::string render_comparison(const PairedComparison& c);
[[nodiscard]] nlohmann::json comparison_json(const PairedComparison& c);

} // namespace evosizer::harness
