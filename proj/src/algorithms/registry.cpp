#include <algorithm>
#include <array>
#include <cctype>
#include <string>
#include <utility>

#include <fmt/format.h>

#include "common.hpp"
#include "evosizer/core/errors.hpp"

namespace evosizer::algorithms {

namespace {

constexpr std::array<std::pair<Algorithm, std::string_view>, 8> kNames{{
    {Algorithm::Mabco, "MABCO"},
    {Algorithm::Mga, "MGA"},
    {Algorithm::Mgwo, "MGWO"},
    {Algorithm::Mpso, "MPSO"},
    {Algorithm::Sabco, "SABCO"},
    {Algorithm::Sga, "SGA"},
    {Algorithm::Sgwo, "SGWO"},
    {Algorithm::Spso, "SPSO"},
}};

void at_least(int v, int minimum, const char* what)
{
    if (v < minimum) {
        throw ConfigError(fmt::format("{} must be at least {} (got {})", what, minimum, v));
    }
}

void positive(int v, const char* what)
{
    at_least(v, 1, what);
}

} // namespace

Family family_of(Algorithm a) noexcept
{
    switch (a) {
    case Algorithm::Mabco:
    case Algorithm::Sabco: return Family::Abco;
    case Algorithm::Mga:
    case Algorithm::Sga: return Family::Ga;
    case Algorithm::Mgwo:
    case Algorithm::Sgwo: return Family::Gwo;
    case Algorithm::Mpso:
    case Algorithm::Spso: return Family::Pso;
    }
    return Family::Abco;
}

Variant variant_of(Algorithm a) noexcept
{
    switch (a) {
    case Algorithm::Mabco:
    case Algorithm::Mga:
    case Algorithm::Mgwo:
    case Algorithm::Mpso: return Variant::Modified;
    default: return Variant::Standard;
    }
}

Algorithm make_algorithm(Family f, Variant v) noexcept
{
    const bool m = v == Variant::Modified;
    switch (f) {
    case Family::Abco: return m ? Algorithm::Mabco : Algorithm::Sabco;
    case Family::Ga: return m ? Algorithm::Mga : Algorithm::Sga;
    case Family::Gwo: return m ? Algorithm::Mgwo : Algorithm::Sgwo;
    case Family::Pso: return m ? Algorithm::Mpso : Algorithm::Spso;
    }
    return Algorithm::Mabco;
}

std::string_view to_string(Algorithm a) noexcept
{
    for (const auto& [alg, name] : kNames) {
        if (alg == a) {
            return name;
        }
    }
    return "?";
}

std::optional<Algorithm> algorithm_from_string(std::string_view s)
{
    std::string upper(s);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    for (const auto& [alg, name] : kNames) {
        if (name == upper) {
            return alg;
        }
    }
    return std::nullopt;
}

void AbcoParams::validate() const
{
    at_least(population, 2, "abco.population");
    positive(max_ite, "abco.max_ite");
    positive(limit_min, "abco.limit_min");
    positive(max_count, "abco.max_count");
    if (limit_max < limit_min) {
        throw ConfigError("abco.limit_max must be >= abco.limit_min");
    }
}

void GaParams::validate() const
{
    at_least(population, 2, "ga.population");
    positive(gen_max, "ga.gen_max");
    positive(max_count, "ga.max_count");
    if (!(alpha_min > 0.0 && alpha_min <= alpha_max)) {
        throw ConfigError("ga: need 0 < alpha_min <= alpha_max");
    }
}

void GwoParams::validate() const
{
    at_least(population, 3, "gwo.population");
    positive(max_ite, "gwo.max_ite");
    positive(max_count, "gwo.max_count");
}

void PsoParams::validate() const
{
    positive(population, "pso.population");
    positive(max_ite, "pso.max_ite");
    positive(max_count, "pso.max_count");
    if (!(w_min >= 0.0 && w_min <= w_max)) {
        throw ConfigError("pso: need 0 <= w_min <= w_max");
    }
    if (!(c1 >= 0.0 && c2 >= 0.0)) {
        throw ConfigError("pso: acceleration coefficients must be non-negative");
    }
}

void AlgorithmParams::set_population(int n)
{
    abco.population = ga.population = gwo.population = pso.population = n;
}

void AlgorithmParams::set_iterations(int k)
{
    abco.max_ite = ga.gen_max = gwo.max_ite = pso.max_ite = k;
}

OptimizerResult run_standard_variant(Family family, const core::Evaluator& problem, const AlgorithmParams& params,
                                     std::uint64_t seed, const RunOptions& options)
{
    return run_algorithm(make_algorithm(family, Variant::Standard), problem, params, seed, options);
}

OptimizerResult run_algorithm(Algorithm algorithm, const core::Evaluator& problem, const AlgorithmParams& params,
                              std::uint64_t seed, const RunOptions& options)
{
    const Variant v = variant_of(algorithm);
    switch (family_of(algorithm)) {
    case Family::Abco: return detail::run_abco(problem, params.abco, v, seed, options);
    case Family::Ga: return detail::run_ga(problem, params.ga, v, seed, options);
    case Family::Gwo: return detail::run_gwo(problem, params.gwo, v, seed, options);
    case Family::Pso: return detail::run_pso(problem, params.pso, v, seed, options);
    }
    throw ContractViolation("run_algorithm: unknown algorithm");
}

} // namespace evosizer::algorithms
