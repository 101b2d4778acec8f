#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace evosizer::core {

/// Fixed-size pool running index-parallel loops.
///
/// The calling thread takes part in every loop, so a pool of one worker runs
/// everything inline. If several iterations throw, the exception from the
/// lowest index is rethrown, which keeps failures independent of scheduling.
/// A pool must not be re-entered from inside one of its own loop bodies.
class WorkerPool {
public:
    explicit WorkerPool(std::size_t workers = 1);
    ~WorkerPool();

    WorkerPool(const WorkerPool&) = delete;
    WorkerPool& operator=(const WorkerPool&) = delete;

    [[nodiscard]] std::size_t workers() const noexcept { return threads_.size() + 1; }

    void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

private:
    void worker_loop();
    void drain();

    std::vector<std::thread> threads_;
    std::mutex mutex_;
    std::condition_variable wake_;
    std::condition_variable done_;
    const std::function<void(std::size_t)>* body_ = nullptr;
    std::size_t count_ = 0;
    std::size_t next_ = 0;
    std::size_t active_ = 0;
    std::size_t generation_ = 0;
    bool stop_ = false;
    std::size_t failed_index_ = 0;
    std::exception_ptr failure_;
};

} // namespace evosizer::core
