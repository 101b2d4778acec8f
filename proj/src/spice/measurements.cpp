#include "evosizer/spice/measurements.hpp"

#include <charconv>
#include <map>
#include <optional>
#include <sstream>

#include <fmt/format.h>

namespace evosizer::spice {

using circuit::PerformanceReport;

namespace {

struct Field {
    const char* marker;
    double PerformanceReport::*member;
};

constexpr Field kFields[] = {
    {"av_db", &PerformanceReport::gain_db}, {"f3db", &PerformanceReport::f3db},
    {"ugb", &PerformanceReport::ugb},       {"pm", &PerformanceReport::pm},
    {"sr", &PerformanceReport::sr},         {"power", &PerformanceReport::power},
    {"noise", &PerformanceReport::noise_psd},
};

constexpr std::string_view kSatPrefix = "vsat_";

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

bool is_marker(std::string_view name, const std::vector<std::string>& devices)
{
    for (const auto& f : kFields) {
        if (name == f.marker) {
            return true;
        }
    }
    if (name.substr(0, kSatPrefix.size()) == kSatPrefix) {
        const auto dev = name.substr(kSatPrefix.size());
        for (const auto& d : devices) {
            if (d == dev) {
                return true;
            }
        }
    }
    return false;
}

} // namespace

PerformanceReport parse_measurements(std::string_view raw, circuit::Topology topology)
{
    const auto devices = circuit::device_names(topology);
    std::map<std::string, double, std::less<>> values;
    std::istringstream in{std::string(raw)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            continue;
        }
        const auto name = trim(std::string_view(line).substr(0, eq));
        if (!is_marker(name, devices)) {
            continue;
        }
        // The value is the first token after '='; anything after it is ignored.
        auto rest = trim(std::string_view(line).substr(eq + 1));
        rest = rest.substr(0, rest.find_first_of(" \t"));
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), v);
        if (rest.empty() || ec != std::errc{} || ptr != rest.data() + rest.size()) {
            throw MeasurementParseError(
                fmt::format("simulator output line {}: malformed value for '{}': \"{}\"", line_no, name, trim(line)));
        }
        values[std::string(name)] = v;
    }

    PerformanceReport r;
    r.topology = topology;
    auto take = [&](const std::string& name) {
        const auto it = values.find(name);
        if (it == values.end()) {
            throw MeasurementParseError(fmt::format("simulator output has no '{}' measurement", name));
        }
        return it->second;
    };
    for (const auto& f : kFields) {
        r.*f.member = take(f.marker);
    }
    r.saturation_ok = true;
    for (const auto& d : devices) {
        const double m = take(std::string(kSatPrefix) + d);
        r.device_margins.push_back({d, m});
        r.saturation_ok = r.saturation_ok && m >= 0.0;
    }
    return r;
}

std::string render_measurements(const PerformanceReport& report)
{
    std::string out;
    for (const auto& m : report.device_margins) {
        out += fmt::format("{}{} = {}\n", kSatPrefix, m.device, m.margin);
    }
    for (const auto& f : kFields) {
        out += fmt::format("{} = {}\n", f.marker, report.*f.member);
    }
    return out;
}

} // namespace evosizer::spice
