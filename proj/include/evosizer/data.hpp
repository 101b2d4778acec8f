#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace evosizer::data {

/// Files under data/ compiled into the library, keyed by relative path
/// (e.g. "presets/two_stage_65n.spec").
[[nodiscard]] std::optional<std::string_view> find(std::string_view relative_path);
[[nodiscard]] std::vector<std::string_view> list();

} // namespace evosizer::data
