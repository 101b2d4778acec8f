#include "evosizer/core/box.hpp"

#include <cmath>

#include <fmt/format.h>

#include "evosizer/core/errors.hpp"

namespace evosizer::core {

Box::Box(std::vector<double> lower, std::vector<double> upper, std::vector<std::string> names)
    : lower_(std::move(lower)), upper_(std::move(upper)), names_(std::move(names))
{
    require(!lower_.empty(), "Box: dimension must be positive");
    require(lower_.size() == upper_.size(), "Box: lower/upper length mismatch");
    if (names_.empty()) {
        for (std::size_t d = 0; d < lower_.size(); ++d) {
            names_.push_back(fmt::format("x{}", d));
        }
    }
    require(names_.size() == lower_.size(), "Box: names length mismatch");
    for (std::size_t d = 0; d < lower_.size(); ++d) {
        require(std::isfinite(lower_[d]) && std::isfinite(upper_[d]),
                fmt::format("Box: non-finite bound for {}", names_[d]));
        require(lower_[d] <= upper_[d],
                fmt::format("Box: empty interval for {} [{}, {}]", names_[d], lower_[d], upper_[d]));
    }
}

bool Box::contains(std::span<const double> position) const
{
    if (position.size() != dimension()) {
        return false;
    }
    for (std::size_t d = 0; d < position.size(); ++d) {
        if (!(position[d] >= lower_[d] && position[d] <= upper_[d])) {
            return false;
        }
    }
    return true;
}

bool Box::subset_of(const Box& outer) const
{
    if (outer.dimension() != dimension()) {
        return false;
    }
    for (std::size_t d = 0; d < dimension(); ++d) {
        if (lower_[d] < outer.lower_[d] || upper_[d] > outer.upper_[d]) {
            return false;
        }
    }
    return true;
}

std::vector<double> clamp_to_nearest_bound(std::span<const double> position, const Box& bounds)
{
    require(position.size() == bounds.dimension(),
            fmt::format("clamp_to_nearest_bound: position has {} values, bounds have {}", position.size(),
                        bounds.dimension()));
    std::vector<double> out(position.begin(), position.end());
    for (std::size_t d = 0; d < out.size(); ++d) {
        if (out[d] < bounds.lower(d)) {
            out[d] = bounds.lower(d);
        } else if (out[d] > bounds.upper(d)) {
            out[d] = bounds.upper(d);
        }
    }
    return out;
}

} // namespace evosizer::core
