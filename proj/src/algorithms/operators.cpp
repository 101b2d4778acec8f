#include "evosizer/algorithms/operators.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "evosizer/core/errors.hpp"

namespace evosizer::algorithms {

namespace {

void same_dimension(std::size_t a, std::size_t b, const char* who)
{
    require(a == b, fmt::format("{}: dimension mismatch ({} vs {})", who, a, b));
}

} // namespace

std::vector<double> abco_neighbor(std::span<const double> x_i, std::span<const double> x_k,
                                  std::span<const std::size_t> dims, core::RngStream& rng)
{
    same_dimension(x_i.size(), x_k.size(), "abco_neighbor");
    require(!dims.empty(), "abco_neighbor: no dimensions to update");
    std::vector<double> v(x_i.begin(), x_i.end());
    for (std::size_t d : dims) {
        require(d < v.size(), fmt::format("abco_neighbor: dimension index {} out of range", d));
        const double u = rng.uniform(-1.0, 1.0);
        v[d] = x_i[d] + u * (x_i[d] - x_k[d]);
    }
    return v;
}

std::vector<double> single_point_crossover(std::span<const double> first, std::span<const double> second,
                                           std::size_t point)
{
    same_dimension(first.size(), second.size(), "single_point_crossover");
    require(point <= first.size(), "single_point_crossover: point beyond the last gene");
    std::vector<double> child(first.begin(), first.begin() + static_cast<std::ptrdiff_t>(point));
    child.insert(child.end(), second.begin() + static_cast<std::ptrdiff_t>(point), second.end());
    return child;
}

std::vector<double> single_point_crossover(std::span<const double> first, std::span<const double> second,
                                           core::RngStream& rng)
{
    same_dimension(first.size(), second.size(), "single_point_crossover");
    if (first.size() < 2) {
        return {first.begin(), first.end()};
    }
    return single_point_crossover(first, second, rng.integer(1, first.size() - 1));
}

MutationWindow ga_mutation_bounds(double x, double alpha, double ub, double lb)
{
    require(lb <= ub, "ga_mutation_bounds: lb > ub");
    require(alpha >= 0.0, "ga_mutation_bounds: alpha must be non-negative");
    const double reach = alpha * std::abs(x);
    return {std::min(ub, x + reach), std::max(lb, x - reach)};
}

GwoCoefficients gwo_coefficients(double a, double r1, double r2)
{
    return {2.0 * a * r1 - a, 2.0 * r2};
}

GwoCoefficients gwo_coefficients(double a, core::RngStream& rng)
{
    require(a >= 0.0 && a <= 2.0, fmt::format("gwo_coefficients: a = {} outside [0, 2]", a));
    const double r1 = rng.uniform();
    const double r2 = rng.uniform();
    return gwo_coefficients(a, r1, r2);
}

std::vector<double> gwo_position_update(std::span<const double> x, std::span<const double> x_alpha,
                                        std::span<const double> x_beta, std::span<const double> x_delta, double a,
                                        std::span<const double> draws)
{
    same_dimension(x.size(), x_alpha.size(), "gwo_position_update");
    same_dimension(x.size(), x_beta.size(), "gwo_position_update");
    same_dimension(x.size(), x_delta.size(), "gwo_position_update");
    same_dimension(6 * x.size(), draws.size(), "gwo_position_update draws");
    const std::span<const double> leaders[3] = {x_alpha, x_beta, x_delta};
    std::vector<double> out(x.size());
    std::size_t k = 0;
    for (std::size_t d = 0; d < x.size(); ++d) {
        double sum = 0.0;
        for (const auto& leader : leaders) {
            const auto [A, C] = gwo_coefficients(a, draws[k], draws[k + 1]);
            k += 2;
            const double dist = std::abs(C * leader[d] - x[d]);
            sum += leader[d] - A * dist;
        }
        out[d] = sum / 3.0;
    }
    return out;
}

std::vector<double> gwo_position_update(std::span<const double> x, std::span<const double> x_alpha,
                                        std::span<const double> x_beta, std::span<const double> x_delta, double a,
                                        core::RngStream& rng)
{
    std::vector<double> draws(6 * x.size());
    for (double& r : draws) {
        r = rng.uniform();
    }
    return gwo_position_update(x, x_alpha, x_beta, x_delta, a, draws);
}

PsoState pso_update(std::span<const double> x, std::span<const double> v, std::span<const double> pbest,
                    std::span<const double> gbest, double w, double c1, double c2, std::span<const double> draws)
{
    same_dimension(x.size(), v.size(), "pso_update");
    same_dimension(x.size(), pbest.size(), "pso_update");
    same_dimension(x.size(), gbest.size(), "pso_update");
    same_dimension(2 * x.size(), draws.size(), "pso_update draws");
    PsoState s{std::vector<double>(x.size()), std::vector<double>(x.size())};
    for (std::size_t d = 0; d < x.size(); ++d) {
        const double r1 = draws[2 * d];
        const double r2 = draws[2 * d + 1];
        s.velocity[d] = w * v[d] + c1 * r1 * (pbest[d] - x[d]) + c2 * r2 * (gbest[d] - x[d]);
        s.position[d] = x[d] + s.velocity[d];
    }
    return s;
}

PsoState pso_update(std::span<const double> x, std::span<const double> v, std::span<const double> pbest,
                    std::span<const double> gbest, double w, double c1, double c2, core::RngStream& rng)
{
    std::vector<double> draws(2 * x.size());
    for (double& r : draws) {
        r = rng.uniform();
    }
    return pso_update(x, v, pbest, gbest, w, c1, c2, draws);
}

} // namespace evosizer::algorithms
