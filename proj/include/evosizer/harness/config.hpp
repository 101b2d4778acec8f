#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "evosizer/algorithms/params.hpp"
#include "evosizer/core/evaluator.hpp"
#include "evosizer/spice/simulator.hpp"

namespace evosizer::harness {

enum class BackendKind { Analytic, Simulator, Benchmark };

struct Backend {
    BackendKind kind = BackendKind::Analytic;
    std::string benchmark; ///< benchmark function name when kind == Benchmark

    friend bool operator==(const Backend&, const Backend&) = default;
};

/// "analytic", "simulator" or "benchmark:<name>". Throws ConfigError.
[[nodiscard]] Backend parse_backend(std::string_view text);
[[nodiscard]] std::string to_string(const Backend& backend);

struct ExperimentConfig {
    algorithms::Algorithm algorithm = algorithms::Algorithm::Mabco;
    std::string problem = "two_stage_65n"; ///< preset name or spec file path
    Backend backend;
    std::size_t dimension = 6; ///< benchmark backends only
    int population = 20;
    int iterations = 300;
    int runs = 10;
    std::uint64_t master_seed = 1;
    int workers = 1;
    std::vector<int> checkpoints{100, 200, 300};
    /// Population and iteration fields are overwritten from the fields above.
    algorithms::AlgorithmParams params;
    spice::SimulatorConfig simulator = spice::SimulatorConfig::from_environment();

    /// Params with population/iterations synced.
    [[nodiscard]] algorithms::AlgorithmParams effective_params() const;
    /// Checkpoints that fall inside the run, sorted and deduplicated.
    [[nodiscard]] std::vector<int> effective_checkpoints() const;

    /// Throws ConfigError.
    void validate() const;
};

/// Algorithm defaults for a problem: the folded cascode presets run PSO with w_min = 0.3.
[[nodiscard]] algorithms::AlgorithmParams default_params(const ExperimentConfig& config);

/// JSON form. Parsing starts from the defaults, then applies the given keys;
/// unknown keys are an error. Throws ConfigError.
[[nodiscard]] ExperimentConfig config_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json config_to_json(const ExperimentConfig& config);
[[nodiscard]] ExperimentConfig load_config_file(const std::filesystem::path& path);

/// Build the evaluator a config asks for. An unavailable backend (e.g. a
/// missing simulator) is a ConfigError.
[[nodiscard]] std::unique_ptr<core::Evaluator> make_evaluator(const ExperimentConfig& config);

} // namespace evosizer::harness
