#include "evosizer/spice/netlist.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "evosizer/data.hpp"

namespace evosizer::spice {

using circuit::Topology;

namespace {

constexpr std::string_view kOpen = "{{";
constexpr std::string_view kClose = "}}";

std::vector<std::string> environment_placeholders(Topology t)
{
    std::vector<std::string> names{"l", "vdd", "vcm", "cl", "sweep_stop", "noise_frequency", "model_include"};
    if (t == Topology::TwoStageMiller) {
        names.emplace_back("cc");
    } else {
        names.emplace_back("vbn_cascode");
        names.emplace_back("vbp_cascode");
    }
    return names;
}

std::map<std::string, int> count_placeholders(std::string_view text)
{
    std::map<std::string, int> counts;
    std::size_t pos = 0;
    while ((pos = text.find(kOpen, pos)) != std::string_view::npos) {
        const auto end = text.find(kClose, pos + kOpen.size());
        if (end == std::string_view::npos) {
            throw TemplateError(fmt::format("netlist template: unterminated placeholder at offset {}", pos));
        }
        ++counts[std::string(text.substr(pos + kOpen.size(), end - pos - kOpen.size()))];
        pos = end + kClose.size();
    }
    return counts;
}

std::string substitute(std::string_view text, const std::map<std::string, std::string>& values)
{
    std::string out;
    out.reserve(text.size() + 256);
    std::size_t pos = 0;
    for (;;) {
        const auto open = text.find(kOpen, pos);
        if (open == std::string_view::npos) {
            out.append(text.substr(pos));
            return out;
        }
        out.append(text.substr(pos, open - pos));
        const auto close = text.find(kClose, open);
        out.append(values.at(std::string(text.substr(open + kOpen.size(), close - open - kOpen.size()))));
        pos = close + kClose.size();
    }
}

double read_double(std::string_view s)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        return std::nan("");
    }
    return v;
}

// Fewest significant digits, without exponent notation, that read back as
// the same double; otherwise plain SI.
std::string scaled(double value, int exponent, std::string_view suffix)
{
    const double v = value * std::pow(10.0, -exponent);
    for (int digits = 1; digits <= 17; ++digits) {
        auto text = fmt::format("{:.{}g}", v, digits);
        if (text.find_first_of("eE") != std::string::npos) {
            continue;
        }
        text += suffix;
        if (parse_spice_number(text) == value) {
            return text;
        }
    }
    return fmt::format("{}", value);
}

std::string si(double value)
{
    return fmt::format("{}", value);
}

double square_law_vov(double current, double width, double length, double kp)
{
    return std::sqrt(2.0 * current * length / (kp * width));
}

std::string inline_models(const circuit::TechnologyCard& tech)
{
    return fmt::format(".model nch nmos level=1 vto={} kp={} lambda={}\n"
                       ".model pch pmos level=1 vto={} kp={} lambda={}",
                       si(tech.vth_n), si(tech.kp_n), si(tech.lambda_n), si(-tech.vth_p), si(tech.kp_p),
                       si(tech.lambda_p));
}

} // namespace

std::vector<std::string> required_placeholders(Topology topology)
{
    auto names = circuit::decision_names(topology);
    const auto env = environment_placeholders(topology);
    names.insert(names.end(), env.begin(), env.end());
    return names;
}

NetlistTemplate::NetlistTemplate(Topology topology, std::string text)
    : topology_(topology), text_(std::move(text))
{
    const auto counts = count_placeholders(text_);
    const auto decisions = circuit::decision_names(topology);
    const auto env = environment_placeholders(topology);
    const auto count_of = [&](const std::string& name) {
        const auto it = counts.find(name);
        return it == counts.end() ? 0 : it->second;
    };
    for (const auto& name : decisions) {
        const int n = count_of(name);
        if (n == 0) {
            throw TemplateError(fmt::format("netlist template: missing placeholder '{}'", name));
        }
        if (n > 1) {
            throw TemplateError(fmt::format("netlist template: placeholder '{}' appears {} times, expected once", name, n));
        }
    }
    for (const auto& name : env) {
        if (count_of(name) == 0) {
            throw TemplateError(fmt::format("netlist template: missing placeholder '{}'", name));
        }
    }
    for (const auto& [name, n] : counts) {
        if (std::find(decisions.begin(), decisions.end(), name) == decisions.end() &&
            std::find(env.begin(), env.end(), name) == env.end()) {
            throw TemplateError(fmt::format("netlist template: unknown placeholder '{}'", name));
        }
    }
}

NetlistTemplate NetlistTemplate::builtin(Topology topology)
{
    const char* path =
        topology == Topology::TwoStageMiller ? "templates/two_stage_miller.cir" : "templates/folded_cascode.cir";
    const auto text = data::find(path);
    require(text.has_value(), fmt::format("embedded template {} missing", path));
    return NetlistTemplate(topology, std::string(*text));
}

std::string emit_netlist(std::span<const double> position, const NetlistTemplate& tmpl,
                         const circuit::CircuitProblem& problem, const std::string& model_include)
{
    const Topology t = tmpl.topology();
    require(problem.spec.topology == t, "emit_netlist: template and problem topologies differ");
    const auto names = circuit::decision_names(t);
    if (position.size() != names.size()) {
        throw ContractViolation(fmt::format("emit_netlist: {} position has {} entries, expected {}",
                                            circuit::to_string(t), position.size(), names.size()));
    }
    for (double v : position) {
        require(std::isfinite(v) && v > 0.0, "emit_netlist: decision variables must be positive and finite");
    }

    const auto& spec = problem.spec;
    const auto& tech = problem.technology;
    std::map<std::string, std::string> values;
    for (std::size_t i = 0; i < names.size(); ++i) {
        values[names[i]] = names[i] == "ibias" ? scaled(position[i], -6, "u") : scaled(position[i], -9, "n");
    }
    values["l"] = scaled(tech.l_fixed, -9, "n");
    values["vdd"] = si(tech.vdd);
    values["vcm"] = si(0.5 * (spec.icmr_min + spec.icmr_max));
    values["cl"] = si(spec.cl);
    values["noise_frequency"] = si(spec.noise_frequency);
    values["model_include"] =
        model_include.empty() ? inline_models(tech) : fmt::format(".include \"{}\"", model_include);
    if (t == Topology::TwoStageMiller) {
        values["cc"] = si(spec.cc);
        values["sweep_stop"] = "10g";
    } else {
        values["sweep_stop"] = "1g";
        const double l = tech.l_fixed;
        const double ib = position[6];
        const double ic = 0.5 * ib;
        const double hr = spec.cascode_headroom;
        const double vbn = tech.vth_n + square_law_vov(ic, position[3], l, tech.kp_n) +
                           square_law_vov(ic, position[4], l, tech.kp_n) + hr;
        const double vbp = tech.vdd - (square_law_vov(ib, position[1], l, tech.kp_p) + hr) -
                           (tech.vth_p + square_law_vov(ic, position[5], l, tech.kp_p));
        values["vbn_cascode"] = si(vbn);
        values["vbp_cascode"] = si(vbp);
    }
    return substitute(tmpl.text(), values);
}

double parse_spice_number(std::string_view text)
{
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    std::size_t split = 0;
    while (split < text.size() && (std::isdigit(static_cast<unsigned char>(text[split])) || text[split] == '.' ||
                                   text[split] == '-' || text[split] == '+' ||
                                   ((text[split] == 'e' || text[split] == 'E') && split + 1 < text.size() &&
                                    (std::isdigit(static_cast<unsigned char>(text[split + 1])) ||
                                     text[split + 1] == '-' || text[split + 1] == '+')))) {
        ++split;
    }
    const auto mantissa_text = text.substr(0, split);
    const double mantissa = read_double(mantissa_text);
    std::string suffix(text.substr(split));
    std::transform(suffix.begin(), suffix.end(), suffix.begin(), [](unsigned char c) { return std::tolower(c); });
    static const std::map<std::string, int, std::less<>> kExponent{
        {"", 0}, {"f", -15}, {"p", -12}, {"n", -9}, {"u", -6}, {"m", -3}, {"k", 3}, {"meg", 6}, {"g", 9}, {"t", 12},
    };
    const auto it = kExponent.find(suffix);
    if (std::isnan(mantissa) || it == kExponent.end()) {
        throw ConfigError(fmt::format("not a SPICE number: '{}'", text));
    }
    if (it->second == 0) {
        return mantissa;
    }
    // "28.8u" means the decimal 28.8e-6, so read it as that literal.
    if (mantissa_text.find_first_of("eE") == std::string_view::npos) {
        return read_double(fmt::format("{}e{}", mantissa_text, it->second));
    }
    return mantissa * std::pow(10.0, it->second);
}

std::vector<double> parse_netlist_parameters(std::string_view netlist, Topology topology)
{
    const auto names = circuit::decision_names(topology);
    std::vector<double> out(names.size(), std::nan(""));
    std::istringstream in{std::string(netlist)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(".param ", 0) != 0) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            continue;
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const auto key = trim(line.substr(7, eq - 7));
        const auto it = std::find(names.begin(), names.end(), key);
        if (it != names.end()) {
            out[static_cast<std::size_t>(it - names.begin())] = parse_spice_number(trim(line.substr(eq + 1)));
        }
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (std::isnan(out[i])) {
            throw ConfigError(fmt::format("netlist has no .param line for '{}'", names[i]));
        }
    }
    return out;
}

} // namespace evosizer::spice
