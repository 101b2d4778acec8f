#pragma once

#include <filesystem>
#include <string>

#include "evosizer/core/budget.hpp"
#include "evosizer/core/errors.hpp"

namespace evosizer::spice {

/// Environment variable naming the simulator executable.
inline constexpr const char* kSimulatorEnv = "EVOSIZER_SIMULATOR";

class SimulatorNotFound : public BackendError {
public:
    using BackendError::BackendError;
};

class SimulationTimeout : public BackendError {
public:
    using BackendError::BackendError;
};

/// The simulator exited nonzero or was killed by a signal.
class SimulationFailed : public BackendError {
public:
    using BackendError::BackendError;
};

struct SimulatorConfig {
    std::string executable = "ngspice"; ///< path, or a name looked up on PATH
    std::string model_include;          ///< model card; empty for inline level-1 models
    double timeout_seconds = 60.0;
    std::filesystem::path working_directory = std::filesystem::temp_directory_path();
    bool keep_files = false;

    /// Defaults with `executable` taken from EVOSIZER_SIMULATOR when set.
    [[nodiscard]] static SimulatorConfig from_environment();

    /// Throws ConfigError.
    void validate() const;
};

/// Resolved executable path, or empty when it cannot be found.
[[nodiscard]] std::filesystem::path find_executable(const std::string& executable);
[[nodiscard]] bool simulator_available(const SimulatorConfig& config);

/// Run `<executable> -b circuit.cir` in a fresh subdirectory of the working
/// directory and return its combined stdout and stderr.
///
/// The budget is charged once the process has been launched, whatever the
/// outcome. On timeout the whole process group is killed.
[[nodiscard]] std::string run_simulation(const std::string& netlist, const SimulatorConfig& config,
                                         core::EvaluationBudget& budget);

} // namespace evosizer::spice
