#pragma once

#include <string>
#include <vector>

#include "evosizer/circuit/performance.hpp"
#include "evosizer/circuit/problem.hpp"

namespace evosizer::circuit {

struct Violation {
    std::string name; ///< metric name, or "saturation"
    double margin = 0.0;
};

struct SurvivabilityResult {
    bool pass = false;
    std::vector<Violation> violations;
};

/// Every spec constraint met and every device saturated. The saturation
/// violation carries the worst device margin in volts.
[[nodiscard]] SurvivabilityResult survivability_test(const PerformanceReport& report, const ProblemSpec& spec);

} // namespace evosizer::circuit
