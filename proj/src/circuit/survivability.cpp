#include "evosizer/circuit/survivability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "evosizer/core/errors.hpp"

namespace evosizer::circuit {

SurvivabilityResult survivability_test(const PerformanceReport& report, const ProblemSpec& spec)
{
    require(report.topology == spec.topology, "survivability_test: report and spec topologies differ");
    SurvivabilityResult out;
    for (const auto& c : spec.constraints) {
        const double value = report.metric(c.metric);
        const double margin = c.direction == Direction::AtLeast ? value - c.threshold : c.threshold - value;
        // NaN margins fail too.
        if (!(margin >= 0.0)) {
            out.violations.push_back({std::string(to_string(c.metric)), margin});
        }
    }
    if (!report.saturation_ok) {
        double worst = std::numeric_limits<double>::infinity();
        for (const auto& m : report.device_margins) {
            worst = std::min(worst, m.margin);
        }
        out.violations.push_back({"saturation", report.device_margins.empty() ? 0.0 : worst});
    }
    out.pass = out.violations.empty();
    return out;
}

} // namespace evosizer::circuit
