#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "evosizer/algorithms/operators.hpp"
#include "evosizer/core/errors.hpp"

namespace evosizer::algorithms {

namespace {

void check_iteration(int ite, int ite_max, const char* who)
{
    require(ite_max >= 1 && ite >= 1 && ite <= ite_max,
            fmt::format("{}: iteration {} outside [1, {}]", who, ite, ite_max));
}

// (ite - 1) / (ite_max - 1), with a single iteration counting as the start.
double progress(int ite, int ite_max)
{
    return ite_max == 1 ? 0.0 : static_cast<double>(ite - 1) / static_cast<double>(ite_max - 1);
}

} // namespace

int abco_limit_schedule(int ite, int ite_max, int limit_min, int limit_max)
{
    check_iteration(ite, ite_max, "abco_limit_schedule");
    require(0 < limit_min && limit_min <= limit_max, "abco_limit_schedule: need 0 < limit_min <= limit_max");
    const long long span = static_cast<long long>(limit_max - limit_min) * (ite_max - ite);
    return limit_min + static_cast<int>(span / ite_max);
}

std::size_t abco_dim_schedule(int ite, int ite_max, std::size_t dimension)
{
    check_iteration(ite, ite_max, "abco_dim_schedule");
    require(dimension >= 1, "abco_dim_schedule: dimension must be positive");
    const auto remaining = static_cast<std::size_t>(ite_max - ite);
    const auto total = static_cast<std::size_t>(ite_max);
    return std::max<std::size_t>((dimension * remaining + total - 1) / total, 1);
}

double ga_alpha_schedule(int gen, int gen_max, double alpha_min, double alpha_max)
{
    check_iteration(gen, gen_max, "ga_alpha_schedule");
    require(0.0 < alpha_min && alpha_min <= alpha_max, "ga_alpha_schedule: need 0 < alpha_min <= alpha_max");
    if (gen == gen_max) {
        return alpha_min;
    }
    const double frac = 1.0 - static_cast<double>(gen) / static_cast<double>(gen_max);
    return alpha_min + frac * (alpha_max - alpha_min);
}

double gwo_a_schedule(int ite, int ite_max)
{
    check_iteration(ite, ite_max, "gwo_a_schedule");
    return 2.0 * (1.0 - progress(ite, ite_max));
}

double pso_inertia_schedule(int ite, int ite_max, double w_min, double w_max)
{
    check_iteration(ite, ite_max, "pso_inertia_schedule");
    require(0.0 <= w_min && w_min <= w_max, "pso_inertia_schedule: need 0 <= w_min <= w_max");
    if (ite == ite_max && ite_max > 1) {
        return w_min;
    }
    return w_max - (w_max - w_min) * progress(ite, ite_max);
}

} // namespace evosizer::algorithms
