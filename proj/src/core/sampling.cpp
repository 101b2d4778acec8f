#include "evosizer/core/sampling.hpp"

namespace evosizer::core {

std::vector<double> sample_uniform(const Box& box, RngStream& rng)
{
    std::vector<double> x(box.dimension());
    for (std::size_t d = 0; d < x.size(); ++d) {
        x[d] = rng.uniform(box.lower(d), box.upper(d));
    }
    return x;
}

} // namespace evosizer::core
