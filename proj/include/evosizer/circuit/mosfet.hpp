#pragma once

#include <string>

#include "evosizer/circuit/technology.hpp"

namespace evosizer::circuit {

/// Square-law saturation model with channel-length modulation:
///
///     I_D = 1/2 * kp * (W/L) * V_ov^2 * (1 + lambda * V_DS),   V_ov = V_GS - V_th
///
/// Voltages are magnitudes (V_SG, V_SD for PMOS). V_DS below zero is treated
/// as zero inside the modulation factor; such a device fails the saturation
/// check anyway.
struct MosModel {
    double kp = 0.0;     ///< A/V^2
    double vth = 0.0;    ///< V
    double lambda = 0.0; ///< 1/V

    static MosModel from(const TechnologyCard& card, Polarity p)
    {
        return {card.kp(p), card.vth(p), card.lambda(p)};
    }
};

[[nodiscard]] double drain_current(const MosModel& m, double w_over_l, double vgs, double vds);

/// Small-signal operating point of a saturated device.
struct BiasPoint {
    double id = 0.0;  ///< A
    double vds = 0.0; ///< V
    double vov = 0.0; ///< V
    double vgs = 0.0; ///< V
    double gm = 0.0;  ///< S, dI_D/dV_GS
    double gds = 0.0; ///< S, dI_D/dV_DS

    [[nodiscard]] double ro() const noexcept { return 1.0 / gds; }
    /// V_DS - V_ov; non-negative means saturated.
    [[nodiscard]] double saturation_margin() const noexcept { return vds - vov; }
};

/// Bias a device at drain current `id` and drain-source voltage `vds`:
/// solves the model for V_ov and returns the exact partial derivatives.
[[nodiscard]] BiasPoint bias_at_current(const MosModel& m, double w_over_l, double id, double vds);

} // namespace evosizer::circuit
