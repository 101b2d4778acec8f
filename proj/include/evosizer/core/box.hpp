#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace evosizer::core {

/// Axis-aligned box of per-variable closed intervals.
///
/// Used both for the problem's search space (aspect-ratio and current limits)
/// and for the tighter feasible intervals derived from circuit equations.
/// Every interval must be non-empty; degenerate intervals (lower == upper) are
/// allowed so a variable can be pinned.
class Box {
public:
    Box() = default;
    Box(std::vector<double> lower, std::vector<double> upper, std::vector<std::string> names = {});

    [[nodiscard]] std::size_t dimension() const noexcept { return lower_.size(); }
    [[nodiscard]] const std::vector<double>& lower() const noexcept { return lower_; }
    [[nodiscard]] const std::vector<double>& upper() const noexcept { return upper_; }
    [[nodiscard]] double lower(std::size_t d) const { return lower_.at(d); }
    [[nodiscard]] double upper(std::size_t d) const { return upper_.at(d); }
    [[nodiscard]] double width(std::size_t d) const { return upper_.at(d) - lower_.at(d); }
    [[nodiscard]] const std::string& name(std::size_t d) const { return names_.at(d); }
    [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }

    [[nodiscard]] bool contains(std::span<const double> position) const;
    /// True when every interval of `this` lies inside the matching interval of `outer`.
    [[nodiscard]] bool subset_of(const Box& outer) const;

    friend bool operator==(const Box&, const Box&) = default;

private:
    std::vector<double> lower_;
    std::vector<double> upper_;
    std::vector<std::string> names_;
};

/// The optimizer-facing search space: the problem's own variable limits.
using SearchSpace = Box;
/// Feasible intervals derived from the problem model (PGF / repair-bounds domain).
using DerivedBounds = Box;

/// Clamp each coordinate to its interval; out-of-range values go to the nearest bound.
[[nodiscard]] std::vector<double> clamp_to_nearest_bound(std::span<const double> position, const Box& bounds);

} // namespace evosizer::core
