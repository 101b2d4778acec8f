#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evosizer/circuit/spec_file.hpp"
#include "evosizer/core/errors.hpp"

namespace evosizer::spice {

/// Bad netlist template: a missing, repeated or unknown placeholder.
class TemplateError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Netlist text with `{{name}}` placeholders.
///
/// Every decision variable of the topology appears exactly once. The
/// environment placeholders (l, vdd, vcm, cl, sweep_stop, noise_frequency,
/// model_include, plus cc or the two cascode biases) appear at least once.
class NetlistTemplate {
public:
    /// Validates the placeholders; throws TemplateError naming the offender.
    NetlistTemplate(circuit::Topology topology, std::string text);

    /// The shipped template for a topology.
    [[nodiscard]] static NetlistTemplate builtin(circuit::Topology topology);

    [[nodiscard]] circuit::Topology topology() const noexcept { return topology_; }
    [[nodiscard]] const std::string& text() const noexcept { return text_; }

private:
    circuit::Topology topology_;
    std::string text_;
};

[[nodiscard]] std::vector<std::string> required_placeholders(circuit::Topology topology);

/// Fill the template. Widths are written in nanometres and the bias current
/// in microamperes, each with the fewest digits that read back to the same
/// double; values with no such short form fall back to plain SI notation.
///
/// `model_include` is a model-card path; empty means inline level-1 models
/// built from the technology card.
[[nodiscard]] std::string emit_netlist(std::span<const double> position, const NetlistTemplate& tmpl,
                                       const circuit::CircuitProblem& problem,
                                       const std::string& model_include = {});

/// Read the decision variables back from the `.param` lines of an emitted netlist.
[[nodiscard]] std::vector<double> parse_netlist_parameters(std::string_view netlist, circuit::Topology topology);

/// SPICE number with an optional scale suffix (f p n u m k meg g t), case-insensitive.
/// Throws ConfigError.
[[nodiscard]] double parse_spice_number(std::string_view text);

} // namespace evosizer::spice
