#pragma once

#include <string>
#include <vector>

#include "evosizer/circuit/problem.hpp"
#include "evosizer/circuit/technology.hpp"
#include "evosizer/core/box.hpp"
#include "evosizer/core/candidate.hpp"
#include "evosizer/core/errors.hpp"
#include "evosizer/core/rng.hpp"

namespace evosizer::circuit {

/// The specification admits no sizing for some variable.
class InfeasibleSpecError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Which constraint set each end of a derived interval.
struct BoundProvenance {
    std::string lower;
    std::string upper;
};

/// Problem box: aspect-ratio limits times L for widths, the bias-current box for I_bias.
[[nodiscard]] core::SearchSpace search_space(const ProblemSpec& spec, const TechnologyCard& tech);

/// Feasible intervals from the hand-design equations: bias current from slew
/// rate and power, then each width from its overdrive window through
/// W = 2*I*L / (kp * V_ov^2), intersected with the problem box.
///
/// Throws InfeasibleSpecError naming the variable and both constraints when an
/// interval comes out empty.
[[nodiscard]] core::DerivedBounds derive_bounds(const ProblemSpec& spec, const TechnologyCard& tech,
                                                std::vector<BoundProvenance>* provenance = nullptr);

/// Population generator: every variable uniform within its derived interval.
[[nodiscard]] core::Candidate generate_candidate_pgf(const core::DerivedBounds& bounds, core::RngStream& rng);

/// Clamp into the derived bounds; the evaluation is dropped only if the position moved.
[[nodiscard]] core::Candidate repair_bounds(core::Candidate candidate, const core::DerivedBounds& bounds);

} // namespace evosizer::circuit
