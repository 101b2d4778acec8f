#include "evosizer/circuit/mosfet.hpp"

#include <algorithm>
#include <cmath>

#include "evosizer/core/errors.hpp"

namespace evosizer::circuit {

double drain_current(const MosModel& m, double w_over_l, double vgs, double vds)
{
    const double vov = vgs - m.vth;
    if (vov <= 0.0) {
        return 0.0;
    }
    return 0.5 * m.kp * w_over_l * vov * vov * (1.0 + m.lambda * std::max(vds, 0.0));
}

BiasPoint bias_at_current(const MosModel& m, double w_over_l, double id, double vds)
{
    require(w_over_l > 0.0 && id > 0.0, "bias_at_current: W/L and I_D must be positive");
    const double clm = 1.0 + m.lambda * std::max(vds, 0.0);
    BiasPoint b;
    b.id = id;
    b.vds = vds;
    b.vov = std::sqrt(2.0 * id / (m.kp * w_over_l * clm));
    b.vgs = m.vth + b.vov;
    b.gm = 2.0 * id / b.vov;
    // Right-hand derivative when V_DS <= 0.
    b.gds = m.lambda * id / clm;
    return b;
}

} // namespace evosizer::circuit
