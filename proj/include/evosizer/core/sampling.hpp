#pragma once

#include <vector>

#include "evosizer/core/box.hpp"
#include "evosizer/core/rng.hpp"

namespace evosizer::core {

/// One point drawn uniformly from each interval of `box`, in dimension order.
[[nodiscard]] std::vector<double> sample_uniform(const Box& box, RngStream& rng);

} // namespace evosizer::core
