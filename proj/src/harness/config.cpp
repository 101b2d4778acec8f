#include "evosizer/harness/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <fmt/format.h>

#include "evosizer/circuit/analytic_evaluator.hpp"
#include "evosizer/harness/benchmarks.hpp"
#include "evosizer/spice/spice_evaluator.hpp"

namespace evosizer::harness {

using nlohmann::json;

Backend parse_backend(std::string_view text)
{
    if (text == "analytic") {
        return {BackendKind::Analytic, {}};
    }
    if (text == "simulator") {
        return {BackendKind::Simulator, {}};
    }
    constexpr std::string_view prefix = "benchmark:";
    if (text.substr(0, prefix.size()) == prefix) {
        const auto name = std::string(text.substr(prefix.size()));
        const auto names = benchmark_names();
        if (std::find(names.begin(), names.end(), name) == names.end()) {
            throw ConfigError(fmt::format("unknown benchmark '{}' (known: {})", name, fmt::join(names, ", ")));
        }
        return {BackendKind::Benchmark, name};
    }
    throw ConfigError(
        fmt::format("unknown backend '{}' (expected analytic, simulator or benchmark:<name>)", text));
}

std::string to_string(const Backend& backend)
{
    switch (backend.kind) {
    case BackendKind::Analytic: return "analytic";
    case BackendKind::Simulator: return "simulator";
    case BackendKind::Benchmark: return "benchmark:" + backend.benchmark;
    }
    return {};
}

algorithms::AlgorithmParams ExperimentConfig::effective_params() const
{
    auto p = params;
    p.set_population(population);
    p.set_iterations(iterations);
    return p;
}

std::vector<int> ExperimentConfig::effective_checkpoints() const
{
    std::set<int> kept;
    for (int c : checkpoints) {
        if (c >= 1 && c <= iterations) {
            kept.insert(c);
        }
    }
    return {kept.begin(), kept.end()};
}

void ExperimentConfig::validate() const
{
    if (runs < 1) {
        throw ConfigError(fmt::format("runs must be >= 1, got {}", runs));
    }
    if (population < 1) {
        throw ConfigError(fmt::format("population must be >= 1, got {}", population));
    }
    if (iterations < 1) {
        throw ConfigError(fmt::format("iterations must be >= 1, got {}", iterations));
    }
    if (workers < 1) {
        throw ConfigError(fmt::format("workers must be >= 1, got {}", workers));
    }
    for (int c : checkpoints) {
        if (c < 1) {
            throw ConfigError(fmt::format("checkpoints must be >= 1, got {}", c));
        }
    }
    if (backend.kind == BackendKind::Benchmark && dimension < 1) {
        throw ConfigError("benchmark dimension must be >= 1");
    }
    if (backend.kind != BackendKind::Benchmark && problem.empty()) {
        throw ConfigError("problem is empty");
    }
    const auto p = effective_params();
    switch (algorithms::family_of(algorithm)) {
    case algorithms::Family::Abco: p.abco.validate(); break;
    case algorithms::Family::Ga: p.ga.validate(); break;
    case algorithms::Family::Gwo: p.gwo.validate(); break;
    case algorithms::Family::Pso: p.pso.validate(); break;
    }
    if (backend.kind == BackendKind::Simulator) {
        simulator.validate();
    }
}

algorithms::AlgorithmParams default_params(const ExperimentConfig& config)
{
    algorithms::AlgorithmParams p;
    if (config.backend.kind != BackendKind::Benchmark &&
        circuit::load_problem(config.problem).spec.topology == circuit::Topology::FoldedCascode) {
        p.pso.w_min = 0.3;
    }
    return p;
}

namespace {

template <typename T>
T get(const json& j, const char* key)
{
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(fmt::format("config key '{}': {}", key, e.what()));
    }
}

void check_keys(const json& j, std::initializer_list<std::string_view> allowed, std::string_view where)
{
    if (!j.is_object()) {
        throw ConfigError(fmt::format("{}: expected a JSON object", where));
    }
    for (const auto& [key, value] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ConfigError(fmt::format("{}: unknown key '{}'", where, key));
        }
    }
}

void apply_params(const json& j, algorithms::Algorithm algorithm, algorithms::AlgorithmParams& p)
{
    using algorithms::Family;
    auto set = [&](const char* key, auto& field) {
        if (j.contains(key)) {
            field = get<std::decay_t<decltype(field)>>(j, key);
        }
    };
    switch (algorithms::family_of(algorithm)) {
    case Family::Abco:
        check_keys(j, {"limit_min", "limit_max", "max_count"}, "params");
        set("limit_min", p.abco.limit_min);
        set("limit_max", p.abco.limit_max);
        set("max_count", p.abco.max_count);
        break;
    case Family::Ga:
        check_keys(j, {"alpha_min", "alpha_max", "max_count"}, "params");
        set("alpha_min", p.ga.alpha_min);
        set("alpha_max", p.ga.alpha_max);
        set("max_count", p.ga.max_count);
        break;
    case Family::Gwo:
        check_keys(j, {"max_count"}, "params");
        set("max_count", p.gwo.max_count);
        break;
    case Family::Pso:
        check_keys(j, {"w_min", "w_max", "c1", "c2", "max_count", "regenerate_on_failure"}, "params");
        set("w_min", p.pso.w_min);
        set("w_max", p.pso.w_max);
        set("c1", p.pso.c1);
        set("c2", p.pso.c2);
        set("max_count", p.pso.max_count);
        set("regenerate_on_failure", p.pso.regenerate_on_failure);
        break;
    }
}

json params_to_json(algorithms::Algorithm algorithm, const algorithms::AlgorithmParams& p)
{
    switch (algorithms::family_of(algorithm)) {
    case algorithms::Family::Abco:
        return {{"limit_min", p.abco.limit_min}, {"limit_max", p.abco.limit_max}, {"max_count", p.abco.max_count}};
    case algorithms::Family::Ga:
        return {{"alpha_min", p.ga.alpha_min}, {"alpha_max", p.ga.alpha_max}, {"max_count", p.ga.max_count}};
    case algorithms::Family::Gwo:
        return {{"max_count", p.gwo.max_count}};
    case algorithms::Family::Pso:
        return {{"w_min", p.pso.w_min},         {"w_max", p.pso.w_max},
                {"c1", p.pso.c1},               {"c2", p.pso.c2},
                {"max_count", p.pso.max_count}, {"regenerate_on_failure", p.pso.regenerate_on_failure}};
    }
    return json::object();
}

} // namespace

ExperimentConfig config_from_json(const json& j)
{
    check_keys(j,
               {"algorithm", "problem", "backend", "dimension", "population", "iterations", "runs", "seed", "workers",
                "checkpoints", "params", "simulator"},
               "config");
    ExperimentConfig c;
    if (j.contains("algorithm")) {
        const auto name = get<std::string>(j, "algorithm");
        const auto a = algorithms::algorithm_from_string(name);
        if (!a) {
            throw ConfigError(fmt::format("unknown algorithm '{}'", name));
        }
        c.algorithm = *a;
    }
    if (j.contains("problem")) {
        c.problem = get<std::string>(j, "problem");
    }
    if (j.contains("backend")) {
        c.backend = parse_backend(get<std::string>(j, "backend"));
    }
    if (j.contains("dimension")) {
        c.dimension = get<std::size_t>(j, "dimension");
    }
    if (j.contains("population")) {
        c.population = get<int>(j, "population");
    }
    if (j.contains("iterations")) {
        c.iterations = get<int>(j, "iterations");
    }
    if (j.contains("runs")) {
        c.runs = get<int>(j, "runs");
    }
    if (j.contains("seed")) {
        c.master_seed = get<std::uint64_t>(j, "seed");
    }
    if (j.contains("workers")) {
        c.workers = get<int>(j, "workers");
    }
    if (j.contains("checkpoints")) {
        c.checkpoints = get<std::vector<int>>(j, "checkpoints");
    }
    c.params = default_params(c);
    if (j.contains("params")) {
        apply_params(j.at("params"), c.algorithm, c.params);
    }
    if (j.contains("simulator")) {
        const auto& s = j.at("simulator");
        check_keys(s, {"executable", "model_include", "timeout", "working_directory", "keep_files"}, "simulator");
        if (s.contains("executable")) {
            c.simulator.executable = get<std::string>(s, "executable");
        }
        if (s.contains("model_include")) {
            c.simulator.model_include = get<std::string>(s, "model_include");
        }
        if (s.contains("timeout")) {
            c.simulator.timeout_seconds = get<double>(s, "timeout");
        }
        if (s.contains("working_directory")) {
            c.simulator.working_directory = get<std::string>(s, "working_directory");
        }
        if (s.contains("keep_files")) {
            c.simulator.keep_files = get<bool>(s, "keep_files");
        }
    }
    c.validate();
    return c;
}

json config_to_json(const ExperimentConfig& c)
{
    json j{
        {"algorithm", std::string(algorithms::to_string(c.algorithm))},
        {"problem", c.problem},
        {"backend", to_string(c.backend)},
        {"population", c.population},
        {"iterations", c.iterations},
        {"runs", c.runs},
        {"seed", c.master_seed},
        {"workers", c.workers},
        {"checkpoints", c.checkpoints},
        {"params", params_to_json(c.algorithm, c.params)},
    };
    if (c.backend.kind == BackendKind::Benchmark) {
        j["dimension"] = c.dimension;
    }
    if (c.backend.kind == BackendKind::Simulator) {
        j["simulator"] = {{"executable", c.simulator.executable},
                          {"model_include", c.simulator.model_include},
                          {"timeout", c.simulator.timeout_seconds}};
    }
    return j;
}

ExperimentConfig load_config_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(fmt::format("cannot open config file {}", path.string()));
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
    }
    return config_from_json(j);
}

std::unique_ptr<core::Evaluator> make_evaluator(const ExperimentConfig& config)
{
    switch (config.backend.kind) {
    case BackendKind::Benchmark:
        return benchmark_evaluator(config.backend.benchmark, config.dimension);
    case BackendKind::Analytic:
        return std::make_unique<circuit::AnalyticCircuitEvaluator>(circuit::load_problem(config.problem));
    case BackendKind::Simulator:
        try {
            return std::make_unique<spice::SpiceEvaluator>(circuit::load_problem(config.problem), config.simulator);
        } catch (const spice::SimulatorNotFound& e) {
            throw ConfigError(e.what());
        }
    }
    throw ConfigError("unknown backend");
}

} // namespace evosizer::harness
