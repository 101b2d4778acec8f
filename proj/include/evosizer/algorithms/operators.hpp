#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "evosizer/core/rng.hpp"

namespace evosizer::algorithms {

// ---- schedules (iterations are 1-based)

/// floor(limit_min + (1 - ite/ite_max) * (limit_max - limit_min)), computed in integers.
[[nodiscard]] int abco_limit_schedule(int ite, int ite_max, int limit_min, int limit_max);

/// max(ceil(D * (1 - ite/ite_max)), 1).
[[nodiscard]] std::size_t abco_dim_schedule(int ite, int ite_max, std::size_t dimension);

/// alpha_min + (1 - gen/gen_max) * (alpha_max - alpha_min).
[[nodiscard]] double ga_alpha_schedule(int gen, int gen_max, double alpha_min, double alpha_max);

/// Linear from 2 at ite = 1 to 0 at ite = ite_max.
[[nodiscard]] double gwo_a_schedule(int ite, int ite_max);

/// Linear from w_max at ite = 1 to w_min at ite = ite_max.
[[nodiscard]] double pso_inertia_schedule(int ite, int ite_max, double w_min, double w_max);

// ---- variation operators

/// Bee neighbourhood move: v[d] = x_i[d] + u * (x_i[d] - x_k[d]) on `dims`,
/// u ~ U(-1, 1) drawn per dimension in the order given.
[[nodiscard]] std::vector<double> abco_neighbor(std::span<const double> x_i, std::span<const double> x_k,
                                                std::span<const std::size_t> dims, core::RngStream& rng);

/// Child takes genes [0, point) from `first` and [point, D) from `second`.
[[nodiscard]] std::vector<double> single_point_crossover(std::span<const double> first, std::span<const double> second,
                                                         std::size_t point);
/// Crossover at a point drawn from [1, D-1] (D = 1 copies `first`).
[[nodiscard]] std::vector<double> single_point_crossover(std::span<const double> first, std::span<const double> second,
                                                         core::RngStream& rng);

struct MutationWindow {
    double upper;
    double lower;
};

/// [x - alpha|x|, x + alpha|x|] intersected with [lb, ub].
[[nodiscard]] MutationWindow ga_mutation_bounds(double x, double alpha, double ub, double lb);

struct GwoCoefficients {
    double a_coef; ///< A
    double c_coef; ///< C
};

/// A = 2*a*r1 - a, C = 2*r2, with r1 then r2 drawn from the stream.
[[nodiscard]] GwoCoefficients gwo_coefficients(double a, core::RngStream& rng);
[[nodiscard]] GwoCoefficients gwo_coefficients(double a, double r1, double r2);

/// Mean of the three leader-guided moves. For each dimension, leaders are
/// visited alpha, beta, delta and each draws its own (A, C).
[[nodiscard]] std::vector<double> gwo_position_update(std::span<const double> x, std::span<const double> x_alpha,
                                                      std::span<const double> x_beta, std::span<const double> x_delta,
                                                      double a, core::RngStream& rng);
/// Same update fed explicit draws: (r1, r2) for alpha, beta, delta in turn,
/// dimension by dimension, 6*D values in all.
[[nodiscard]] std::vector<double> gwo_position_update(std::span<const double> x, std::span<const double> x_alpha,
                                                      std::span<const double> x_beta, std::span<const double> x_delta,
                                                      double a, std::span<const double> draws);

struct PsoState {
    std::vector<double> position;
    std::vector<double> velocity;
};

/// v' = w v + c1 r1 (pbest - x) + c2 r2 (gbest - x); x' = x + v'.
/// r1 then r2 are drawn per dimension.
[[nodiscard]] PsoState pso_update(std::span<const double> x, std::span<const double> v, std::span<const double> pbest,
                                  std::span<const double> gbest, double w, double c1, double c2, core::RngStream& rng);
/// Same update fed explicit draws (r1, r2 per dimension, 2*D values).
[[nodiscard]] PsoState pso_update(std::span<const double> x, std::span<const double> v, std::span<const double> pbest,
                                  std::span<const double> gbest, double w, double c1, double c2,
                                  std::span<const double> draws);

} // namespace evosizer::algorithms
