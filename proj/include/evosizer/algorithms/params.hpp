#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

namespace evosizer::algorithms {

enum class Family { Abco, Ga, Gwo, Pso };
enum class Variant { Modified, Standard };

/// The eight optimizers exposed to users.
enum class Algorithm { Mabco, Mga, Mgwo, Mpso, Sabco, Sga, Sgwo, Spso };

[[nodiscard]] Family family_of(Algorithm a) noexcept;
[[nodiscard]] Variant variant_of(Algorithm a) noexcept;
[[nodiscard]] Algorithm make_algorithm(Family f, Variant v) noexcept;
[[nodiscard]] std::string_view to_string(Algorithm a) noexcept;
/// Case-insensitive: "mabco", "SGWO", ...
[[nodiscard]] std::optional<Algorithm> algorithm_from_string(std::string_view s);

struct AbcoParams {
    int population = 20;
    int max_ite = 300;
    int limit_min = 5;
    int limit_max = 15;
    int max_count = 10;

    void validate() const;
};

struct GaParams {
    int population = 20;
    int gen_max = 300;
    double alpha_min = 0.01;
    double alpha_max = 0.2;
    /// Offspring retries are capped at 50 * max_count per slot and generation;
    /// a starved crossover aborts the run, a starved mutation returns its source.
    int max_count = 10;

    void validate() const;
};

struct GwoParams {
    int population = 20;
    int max_ite = 300;
    int max_count = 10;

    void validate() const;
};

struct PsoParams {
    int population = 20;
    int max_ite = 300;
    double w_min = 0.5;
    double w_max = 0.8;
    double c1 = 1.7;
    double c2 = 1.7;
    int max_count = 10;
    bool regenerate_on_failure = true;

    void validate() const;
};

/// One parameter block per family; only the block matching the algorithm is used.
struct AlgorithmParams {
    AbcoParams abco;
    GaParams ga;
    GwoParams gwo;
    PsoParams pso;

    /// Set population and iteration count on every block.
    void set_population(int n);
    void set_iterations(int k);
};

/// Retries allowed when regenerating a candidate from scratch.
inline constexpr int kStarvationFactor = 50;

} // namespace evosizer::algorithms
