#pragma once

#include <span>

#include "evosizer/circuit/performance.hpp"
#include "evosizer/circuit/problem.hpp"
#include "evosizer/circuit/technology.hpp"

namespace evosizer::circuit {

/// First-order analytic model of the two-stage Miller op-amp.
///
/// Position: [W12, W34, W58, W6, W7, I_bias] in metres and amperes. NMOS input
/// pair M1/M2, PMOS mirror load M3/M4, NMOS tail M5 mirrored from the diode
/// M8 that carries I_bias, PMOS common-source M6 and NMOS sink M7. Branch
/// currents follow the mirror ratios; each device's V_ov, g_m and g_ds come
/// from `bias_at_current` at its DC drain-source voltage.
///
/// Saturation is checked at (ICMR_min, V_out,min) and (ICMR_max, V_out,max);
/// small-signal figures use the midpoint of both ranges.
[[nodiscard]] PerformanceReport evaluate_two_stage(std::span<const double> position, const ProblemSpec& spec,
                                                   const TechnologyCard& tech);

/// First-order analytic model of the NMOS-input folded cascode op-amp.
///
/// Position: [W12, W34bp, Wbn5, W67, W89, W1011, I_bias]. Mbn and Mbp are
/// diode references carrying I_bias; the tail M5 and the PMOS sources M3/M4
/// mirror them; cascode gates are biased so the device underneath sits
/// `cascode_headroom` above its V_ov. The non-dominant pole sits at the fold
/// node (M2/M4 drains, M11 source).
[[nodiscard]] PerformanceReport evaluate_folded_cascode(std::span<const double> position, const ProblemSpec& spec,
                                                        const TechnologyCard& tech);

/// Dispatch on spec.topology.
[[nodiscard]] PerformanceReport evaluate_circuit(std::span<const double> position, const ProblemSpec& spec,
                                                 const TechnologyCard& tech);

} // namespace evosizer::circuit
