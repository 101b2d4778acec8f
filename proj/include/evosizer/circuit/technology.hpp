#pragma once

#include <string>

namespace evosizer::circuit {

enum class Polarity { Nmos, Pmos };

/// Device-model constants of one process, in SI units.
///
/// Threshold voltages are stored as magnitudes for both polarities.
struct TechnologyCard {
    std::string name;
    double vdd = 0.0;         ///< V
    double l_fixed = 0.0;     ///< m
    double kp_n = 0.0;        ///< A/V^2 (mu_n * Cox)
    double kp_p = 0.0;        ///< A/V^2
    double vth_n = 0.0;       ///< V
    double vth_p = 0.0;       ///< V, magnitude
    double lambda_n = 0.0;    ///< 1/V
    double lambda_p = 0.0;    ///< 1/V
    double cox = 0.0;         ///< F/m^2
    double temperature = 300.0; ///< K

    [[nodiscard]] double kp(Polarity p) const noexcept { return p == Polarity::Nmos ? kp_n : kp_p; }
    [[nodiscard]] double vth(Polarity p) const noexcept { return p == Polarity::Nmos ? vth_n : vth_p; }
    [[nodiscard]] double lambda(Polarity p) const noexcept { return p == Polarity::Nmos ? lambda_n : lambda_p; }

    /// Throws ConfigError on non-positive constants or thresholds at or above the supply.
    void validate() const;

    friend bool operator==(const TechnologyCard&, const TechnologyCard&) = default;
};

} // namespace evosizer::circuit
