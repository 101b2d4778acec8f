#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "evosizer/core/evaluator.hpp"

namespace evosizer::harness {

/// Test functions with known optima on the box [-half_width, half_width]^D.
///
/// sphere: sum x^2, optimum 0 at the origin. rosenbrock: optimum 0 at all
/// ones. constrained_sphere: sphere subject to x0 >= 1, optimum 1 at
/// (1, 0, ..., 0); its derived bounds already encode x0 >= 1.
class BenchmarkEvaluator final : public core::PureEvaluator {
public:
    enum class Kind { Sphere, Rosenbrock, ConstrainedSphere };

    BenchmarkEvaluator(Kind kind, std::size_t dimension, double half_width = 5.0);

    [[nodiscard]] std::string name() const override;
    [[nodiscard]] const core::SearchSpace& search_space() const override { return space_; }
    [[nodiscard]] const core::DerivedBounds& derived_bounds() const override { return bounds_; }
    [[nodiscard]] core::Assessment assess(std::span<const double> position) const override;

private:
    Kind kind_;
    core::SearchSpace space_;
    core::DerivedBounds bounds_;
};

[[nodiscard]] std::vector<std::string> benchmark_names();

/// Throws ConfigError for an unknown name or D < 1.
[[nodiscard]] std::unique_ptr<core::Evaluator> benchmark_evaluator(std::string_view name, std::size_t dimension);

} // namespace evosizer::harness
