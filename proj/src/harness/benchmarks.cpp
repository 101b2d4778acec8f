#include "evosizer/harness/benchmarks.hpp"

#include <fmt/format.h>

#include "evosizer/core/errors.hpp"

namespace evosizer::harness {

namespace {

core::Box cube(std::size_t d, double half_width)
{
    return core::Box(std::vector<double>(d, -half_width), std::vector<double>(d, half_width));
}

} // namespace

BenchmarkEvaluator::BenchmarkEvaluator(Kind kind, std::size_t dimension, double half_width)
    : kind_(kind), space_(cube(dimension, half_width)), bounds_(space_)
{
    if (kind == Kind::ConstrainedSphere) {
        require(half_width >= 1.0, "constrained_sphere: box must reach x0 = 1");
        auto lo = space_.lower();
        lo[0] = 1.0;
        bounds_ = core::Box(lo, space_.upper());
    }
}

std::string BenchmarkEvaluator::name() const
{
    switch (kind_) {
    case Kind::Sphere: return "sphere";
    case Kind::Rosenbrock: return "rosenbrock";
    case Kind::ConstrainedSphere: return "constrained_sphere";
    }
    return "?";
}

core::Assessment BenchmarkEvaluator::assess(std::span<const double> x) const
{
    require(x.size() == space_.dimension(), fmt::format("{}: wrong dimension {}", name(), x.size()));
    core::Assessment a;
    a.feasible = true;
    if (kind_ == Kind::Rosenbrock) {
        for (std::size_t d = 0; d + 1 < x.size(); ++d) {
            const double t = x[d + 1] - x[d] * x[d];
            const double u = 1.0 - x[d];
            a.fitness += 100.0 * t * t + u * u;
        }
        return a;
    }
    for (double v : x) {
        a.fitness += v * v;
    }
    if (kind_ == Kind::ConstrainedSphere && !(x[0] >= 1.0)) {
        a.feasible = false;
        a.violations.push_back("x0 >= 1");
    }
    return a;
}

std::vector<std::string> benchmark_names()
{
    return {"sphere", "rosenbrock", "constrained_sphere"};
}

std::unique_ptr<core::Evaluator> benchmark_evaluator(std::string_view name, std::size_t dimension)
{
    if (dimension < 1) {
        throw ConfigError("benchmark dimension must be at least 1");
    }
    using K = BenchmarkEvaluator::Kind;
    if (name == "sphere") {
        return std::make_unique<BenchmarkEvaluator>(K::Sphere, dimension);
    }
    if (name == "rosenbrock") {
        return std::make_unique<BenchmarkEvaluator>(K::Rosenbrock, dimension);
    }
    if (name == "constrained_sphere") {
        return std::make_unique<BenchmarkEvaluator>(K::ConstrainedSphere, dimension);
    }
    throw ConfigError(fmt::format("unknown benchmark '{}' (expected sphere, rosenbrock or constrained_sphere)", name));
}

} // namespace evosizer::harness
