#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>

namespace evosizer::core {

/// Counts survivability-test invocations (CSPR) and tracks run wall time (MRT).
///
/// The only mutable object shared by parallel workers during a run; the
/// counter is atomic and never decreases.
class EvaluationBudget {
public:
    using Clock = std::chrono::steady_clock;

    EvaluationBudget() : wall_start_(Clock::now()) {}
    explicit EvaluationBudget(std::uint64_t evaluations) : evaluations_(evaluations), wall_start_(Clock::now()) {}

    EvaluationBudget(const EvaluationBudget& other)
        : evaluations_(other.evaluations()), wall_start_(other.wall_start_)
    {
    }
    EvaluationBudget& operator=(const EvaluationBudget& other)
    {
        evaluations_.store(other.evaluations(), std::memory_order_relaxed);
        wall_start_ = other.wall_start_;
        return *this;
    }

    /// Increment by one; returns the new count.
    std::uint64_t record() noexcept { return evaluations_.fetch_add(1, std::memory_order_relaxed) + 1; }
    [[nodiscard]] std::uint64_t evaluations() const noexcept { return evaluations_.load(std::memory_order_relaxed); }

    void restart_clock() noexcept { wall_start_ = Clock::now(); }
    [[nodiscard]] Clock::time_point wall_start() const noexcept { return wall_start_; }
    [[nodiscard]] double elapsed_seconds() const
    {
        return std::chrono::duration<double>(Clock::now() - wall_start_).count();
    }

private:
    std::atomic<std::uint64_t> evaluations_{0};
    Clock::time_point wall_start_;
};

/// Functional form of EvaluationBudget::record.
inline EvaluationBudget& record_evaluation(EvaluationBudget& budget) noexcept
{
    budget.record();
    return budget;
}

} // namespace evosizer::core
