#include "evosizer/circuit/spec_file.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "evosizer/core/errors.hpp"
#include "evosizer/data.hpp"

namespace evosizer::circuit {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

constexpr std::array<std::string_view, 12> kBaseUnits{"V", "A", "W", "F", "Hz", "m", "s", "K", "dB", "deg", "rtHz", "Ohm"};

std::optional<int> prefix_exponent(std::string_view prefix)
{
    if (prefix == "f") return -15;
    if (prefix == "p") return -12;
    if (prefix == "n") return -9;
    if (prefix == "u" || prefix == "\xC2\xB5") return -6;
    if (prefix == "m") return -3;
    if (prefix == "k") return 3;
    if (prefix == "M") return 6;
    if (prefix == "G") return 9;
    return std::nullopt;
}

// number * 10^exp10, correctly rounded for |exp10| <= 22 (powers of ten are
// exact doubles there), so "60 nm" parses to the same double as 60e-9.
double scaled(double number, int exp10)
{
    double p = 1.0;
    for (int i = 0; i < std::abs(exp10); ++i) {
        p *= 10.0;
    }
    return exp10 >= 0 ? number * p : number / p;
}

bool is_base(std::string_view s)
{
    for (auto b : kBaseUnits) {
        if (b == s) {
            return true;
        }
    }
    return false;
}

struct UnitPart {
    int exp10 = 0;
    std::string signature;
};

UnitPart parse_unit_factor(std::string_view token, std::string_view full)
{
    token = trim(token);
    if (token.empty() || token == "1") {
        return {};
    }
    int exponent = 1;
    if (const auto caret = token.find('^'); caret != std::string_view::npos) {
        const auto exp_text = token.substr(caret + 1);
        const auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
        if (ec != std::errc{} || ptr != exp_text.data() + exp_text.size()) {
            throw ConfigError(fmt::format("bad exponent in unit '{}'", full));
        }
        token = token.substr(0, caret);
    }
    int prefix = 0;
    std::string_view base = token;
    if (!is_base(token)) {
        // Longest prefix first so the two-byte micro sign wins over single chars.
        bool found = false;
        for (std::size_t plen : {std::size_t{2}, std::size_t{1}}) {
            if (token.size() <= plen) {
                continue;
            }
            const auto p = prefix_exponent(token.substr(0, plen));
            if (p && is_base(token.substr(plen))) {
                prefix = *p;
                base = token.substr(plen);
                found = true;
                break;
            }
        }
        if (!found) {
            throw ConfigError(fmt::format("unknown unit '{}'", full));
        }
    }
    UnitPart part;
    part.exp10 = prefix * exponent;
    part.signature = std::string(base);
    if (exponent != 1) {
        part.signature += fmt::format("^{}", exponent);
    }
    return part;
}

UnitPart parse_unit(std::string_view unit)
{
    unit = trim(unit);
    if (unit.empty()) {
        return {};
    }
    const auto slash = unit.find('/');
    const UnitPart num = parse_unit_factor(unit.substr(0, slash), unit);
    if (slash == std::string_view::npos) {
        return num;
    }
    const UnitPart den = parse_unit_factor(unit.substr(slash + 1), unit);
    UnitPart out;
    out.exp10 = num.exp10 - den.exp10;
    out.signature = (num.signature.empty() ? std::string("1") : num.signature) + "/" + den.signature;
    return out;
}

double parse_number(std::string_view text, std::string_view context)
{
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError(fmt::format("{}: malformed number '{}'", context, text));
    }
    return value;
}

// Canonical unit per metric: the dimension accepted in spec files and its
// decimal exponent relative to SI.
struct MetricUnit {
    std::string_view dimension;
    int canonical_exp10; // canonical unit = 10^canonical_exp10 SI units
};

MetricUnit metric_unit(Metric m)
{
    switch (m) {
    case Metric::GainDb: return {"dB", 0};
    case Metric::F3db:
    case Metric::Ugb: return {"Hz", 0};
    case Metric::PhaseMargin: return {"deg", 0};
    case Metric::SlewRate: return {"V/s", 6};
    case Metric::Power: return {"W", 0};
    case Metric::Noise: return {"V/rtHz", 0};
    case Metric::Area: return {"m^2", 0};
    }
    return {"", 0};
}

std::string_view canonical_unit_text(Metric m)
{
    switch (m) {
    case Metric::GainDb: return "dB";
    case Metric::F3db:
    case Metric::Ugb: return "Hz";
    case Metric::PhaseMargin: return "deg";
    case Metric::SlewRate: return "V/us";
    case Metric::Power: return "W";
    case Metric::Noise: return "V/rtHz";
    case Metric::Area: return "m^2";
    }
    return "";
}

using Fields = std::map<std::string, std::pair<std::string, int>, std::less<>>;

class FieldReader {
public:
    FieldReader(const Fields& fields, std::string_view section, std::string_view origin)
        : fields_(fields), section_(section), origin_(origin)
    {
    }

    [[nodiscard]] const std::pair<std::string, int>* find(std::string_view key) const
    {
        const auto it = fields_.find(key);
        return it == fields_.end() ? nullptr : &it->second;
    }

    [[nodiscard]] std::string text(std::string_view key) const
    {
        const auto* f = find(key);
        if (!f) {
            throw ConfigError(fmt::format("{}: [{}] is missing '{}'", origin_, section_, key));
        }
        return f->first;
    }

    [[nodiscard]] double quantity(std::string_view key, std::string_view dimension) const
    {
        const auto* f = find(key);
        if (!f) {
            throw ConfigError(fmt::format("{}: [{}] is missing '{}'", origin_, section_, key));
        }
        return checked(*f, key, dimension);
    }

    [[nodiscard]] double quantity_or(std::string_view key, std::string_view dimension, double fallback) const
    {
        const auto* f = find(key);
        return f ? checked(*f, key, dimension) : fallback;
    }

private:
    [[nodiscard]] double checked(const std::pair<std::string, int>& f, std::string_view key,
                                 std::string_view dimension) const
    {
        try {
            return parse_quantity(f.first, dimension);
        } catch (const ConfigError& e) {
            throw ConfigError(fmt::format("{}:{}: {}: {}", origin_, f.second, key, e.what()));
        }
    }

    const Fields& fields_;
    std::string_view section_;
    std::string_view origin_;
};

const std::array<std::string_view, 3> kPresets{"two_stage_65n", "two_stage_65n_p150", "folded_cascode_180n"};

} // namespace

namespace {

struct Quantity {
    double number = 0.0;
    int exp10 = 0;
};

Quantity parse_quantity_parts(std::string_view text, std::string_view dimension)
{
    text = trim(text);
    std::size_t split = 0;
    while (split < text.size() && (std::isdigit(static_cast<unsigned char>(text[split])) || text[split] == '.'
                                   || text[split] == '-' || text[split] == '+'
                                   || ((text[split] == 'e' || text[split] == 'E') && split > 0
                                       && split + 1 < text.size()
                                       && (std::isdigit(static_cast<unsigned char>(text[split + 1]))
                                           || text[split + 1] == '-' || text[split + 1] == '+')))) {
        ++split;
    }
    if (split == 0) {
        throw ConfigError(fmt::format("expected a number in '{}'", text));
    }
    const double number = parse_number(text.substr(0, split), text);
    const UnitPart unit = parse_unit(text.substr(split));
    // "1/V" and "/V" both normalise to "1/V".
    std::string expected(dimension);
    if (!expected.empty() && expected.front() == '/') {
        expected.insert(expected.begin(), '1');
    }
    if (unit.signature != expected) {
        throw ConfigError(fmt::format("'{}' has unit '{}', expected '{}'", text,
                                      unit.signature.empty() ? "(none)" : unit.signature,
                                      expected.empty() ? "(none)" : expected));
    }
    return {number, unit.exp10};
}

} // namespace

double parse_quantity(std::string_view text, std::string_view dimension)
{
    const Quantity q = parse_quantity_parts(text, dimension);
    return scaled(q.number, q.exp10);
}

CircuitProblem parse_problem_text(std::string_view text, std::string_view origin)
{
    std::map<std::string, Fields, std::less<>> sections;
    struct RawConstraint {
        std::string metric;
        Direction direction;
        std::string value;
        int line;
    };
    std::vector<RawConstraint> raw_constraints;

    std::string current;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = text.find('\n', pos);
        std::string_view line = text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
        pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError(fmt::format("{}:{}: malformed section header", origin, line_no));
            }
            current = std::string(trim(line.substr(1, line.size() - 2)));
            if (current != "technology" && current != "problem" && current != "constraints") {
                throw ConfigError(fmt::format("{}:{}: unknown section [{}]", origin, line_no, current));
            }
            continue;
        }
        if (current.empty()) {
            throw ConfigError(fmt::format("{}:{}: entry outside any section", origin, line_no));
        }
        if (current == "constraints") {
            const auto ge = line.find(">=");
            const auto le = line.find("<=");
            if ((ge == std::string_view::npos) == (le == std::string_view::npos)) {
                throw ConfigError(fmt::format("{}:{}: constraint needs exactly one of >= or <=", origin, line_no));
            }
            const auto at = ge != std::string_view::npos ? ge : le;
            raw_constraints.push_back({std::string(trim(line.substr(0, at))),
                                       ge != std::string_view::npos ? Direction::AtLeast : Direction::AtMost,
                                       std::string(trim(line.substr(at + 2))), line_no});
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(fmt::format("{}:{}: expected key = value", origin, line_no));
        }
        const std::string key(trim(line.substr(0, eq)));
        auto& fields = sections[current];
        if (fields.contains(key)) {
            throw ConfigError(fmt::format("{}:{}: duplicate key '{}'", origin, line_no, key));
        }
        fields.emplace(key, std::make_pair(std::string(trim(line.substr(eq + 1))), line_no));
    }

    const Fields empty;
    const auto section = [&](std::string_view name) -> const Fields& {
        const auto it = sections.find(name);
        return it == sections.end() ? empty : it->second;
    };

    CircuitProblem out;
    {
        const FieldReader r(section("technology"), "technology", origin);
        auto& t = out.technology;
        t.name = r.text("name");
        t.vdd = r.quantity("vdd", "V");
        t.l_fixed = r.quantity("l_fixed", "m");
        t.kp_n = r.quantity("kp_n", "A/V^2");
        t.kp_p = r.quantity("kp_p", "A/V^2");
        t.vth_n = r.quantity("vth_n", "V");
        t.vth_p = std::abs(r.quantity("vth_p", "V"));
        t.lambda_n = r.quantity("lambda_n", "1/V");
        t.lambda_p = r.quantity("lambda_p", "1/V");
        t.cox = r.quantity("cox", "F/m^2");
        t.temperature = r.quantity_or("temperature", "K", 300.0);
    }
    {
        const FieldReader r(section("problem"), "problem", origin);
        auto& s = out.spec;
        s.name = r.text("name");
        const auto topo = topology_from_string(r.text("topology"));
        if (!topo) {
            throw ConfigError(fmt::format("{}: unknown topology '{}'", origin, r.text("topology")));
        }
        s.topology = *topo;
        const auto obj = objective_from_string(r.find("objective") ? r.text("objective") : std::string("area"));
        if (!obj) {
            throw ConfigError(fmt::format("{}: unknown objective '{}'", origin, r.text("objective")));
        }
        s.objective = *obj;
        s.cl = r.quantity("cl", "F");
        s.cc = r.quantity_or("cc", "F", 0.0);
        s.icmr_min = r.quantity("icmr_min", "V");
        s.icmr_max = r.quantity("icmr_max", "V");
        s.vout_min = r.quantity("vout_min", "V");
        s.vout_max = r.quantity("vout_max", "V");
        s.aspect_ratio_min = r.quantity("aspect_ratio_min", "");
        s.aspect_ratio_max = r.quantity("aspect_ratio_max", "");
        s.ibias_min = r.quantity("ibias_min", "A");
        s.ibias_max = r.quantity("ibias_max", "A");
        s.vov_min = r.quantity_or("vov_min", "V", s.vov_min);
        s.cascode_headroom = r.quantity_or("cascode_headroom", "V", s.cascode_headroom);
        s.noise_frequency = r.quantity_or("noise_frequency", "Hz", s.noise_frequency);
    }
    for (const auto& rc : raw_constraints) {
        const auto metric = metric_from_string(rc.metric);
        if (!metric) {
            throw ConfigError(fmt::format("{}:{}: unknown metric '{}'", origin, rc.line, rc.metric));
        }
        const MetricUnit unit = metric_unit(*metric);
        double value = 0.0;
        try {
            const Quantity q = parse_quantity_parts(rc.value, unit.dimension);
            value = scaled(q.number, q.exp10 - unit.canonical_exp10);
        } catch (const ConfigError& e) {
            throw ConfigError(fmt::format("{}:{}: {}", origin, rc.line, e.what()));
        }
        out.spec.constraints.push_back({*metric, rc.direction, value});
    }

    out.technology.validate();
    out.spec.validate();
    return out;
}

CircuitProblem load_problem_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(fmt::format("cannot open problem file '{}'", path.string()));
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem_text(buf.str(), path.string());
}

std::string render_problem_text(const CircuitProblem& p)
{
    const auto& t = p.technology;
    const auto& s = p.spec;
    std::string out;
    out += "[technology]\n";
    out += fmt::format("name = {}\n", t.name);
    out += fmt::format("vdd = {} V\n", t.vdd);
    out += fmt::format("l_fixed = {} m\n", t.l_fixed);
    out += fmt::format("kp_n = {} A/V^2\n", t.kp_n);
    out += fmt::format("kp_p = {} A/V^2\n", t.kp_p);
    out += fmt::format("vth_n = {} V\n", t.vth_n);
    out += fmt::format("vth_p = {} V\n", t.vth_p);
    out += fmt::format("lambda_n = {} 1/V\n", t.lambda_n);
    out += fmt::format("lambda_p = {} 1/V\n", t.lambda_p);
    out += fmt::format("cox = {} F/m^2\n", t.cox);
    out += fmt::format("temperature = {} K\n", t.temperature);
    out += "\n[problem]\n";
    out += fmt::format("name = {}\n", s.name);
    out += fmt::format("topology = {}\n", to_string(s.topology));
    out += fmt::format("objective = {}\n", to_string(s.objective));
    out += fmt::format("cl = {} F\n", s.cl);
    out += fmt::format("cc = {} F\n", s.cc);
    out += fmt::format("icmr_min = {} V\n", s.icmr_min);
    out += fmt::format("icmr_max = {} V\n", s.icmr_max);
    out += fmt::format("vout_min = {} V\n", s.vout_min);
    out += fmt::format("vout_max = {} V\n", s.vout_max);
    out += fmt::format("aspect_ratio_min = {}\n", s.aspect_ratio_min);
    out += fmt::format("aspect_ratio_max = {}\n", s.aspect_ratio_max);
    out += fmt::format("ibias_min = {} A\n", s.ibias_min);
    out += fmt::format("ibias_max = {} A\n", s.ibias_max);
    out += fmt::format("vov_min = {} V\n", s.vov_min);
    out += fmt::format("cascode_headroom = {} V\n", s.cascode_headroom);
    out += fmt::format("noise_frequency = {} Hz\n", s.noise_frequency);
    out += "\n[constraints]\n";
    for (const auto& c : s.constraints) {
        out += fmt::format("{} {} {} {}\n", to_string(c.metric), to_string(c.direction), c.threshold,
                           canonical_unit_text(c.metric));
    }
    return out;
}

std::vector<std::string> preset_names()
{
    return {kPresets.begin(), kPresets.end()};
}

bool is_preset(std::string_view name)
{
    for (auto p : kPresets) {
        if (p == name) {
            return true;
        }
    }
    return false;
}

CircuitProblem load_preset(std::string_view name)
{
    if (!is_preset(name)) {
        throw ConfigError(fmt::format("unknown preset '{}'", name));
    }
    const std::string file = fmt::format("presets/{}.spec", name);
    const auto text = data::find(file);
    if (!text) {
        throw ConfigError(fmt::format("preset '{}' is not embedded in this build", name));
    }
    return parse_problem_text(*text, file);
}

CircuitProblem load_problem(std::string_view preset_or_path)
{
    if (is_preset(preset_or_path)) {
        return load_preset(preset_or_path);
    }
    return load_problem_file(std::filesystem::path(preset_or_path));
}

} // namespace evosizer::circuit
