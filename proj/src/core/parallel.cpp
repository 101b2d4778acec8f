#include "evosizer/core/parallel.hpp"

#include <algorithm>

namespace evosizer::core {

WorkerPool::WorkerPool(std::size_t workers)
{
    const std::size_t extra = std::max<std::size_t>(workers, 1) - 1;
    threads_.reserve(extra);
    for (std::size_t i = 0; i < extra; ++i) {
        threads_.emplace_back([this] { worker_loop(); });
    }
}

WorkerPool::~WorkerPool()
{
    {
        std::lock_guard lock(mutex_);
        stop_ = true;
    }
    wake_.notify_all();
    for (auto& t : threads_) {
        t.join();
    }
}

void WorkerPool::parallel_for(std::size_t count, const std::function<void(std::size_t)>& body)
{
    if (count == 0) {
        return;
    }
    if (threads_.empty() || count == 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    {
        std::lock_guard lock(mutex_);
        body_ = &body;
        count_ = count;
        next_ = 0;
        active_ = threads_.size() + 1;
        failure_ = nullptr;
        ++generation_;
    }
    wake_.notify_all();
    drain();
    std::exception_ptr failure;
    {
        std::unique_lock lock(mutex_);
        done_.wait(lock, [this] { return active_ == 0; });
        body_ = nullptr;
        failure = failure_;
        failure_ = nullptr;
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

void WorkerPool::drain()
{
    for (;;) {
        std::size_t i = 0;
        const std::function<void(std::size_t)>* body = nullptr;
        {
            std::lock_guard lock(mutex_);
            if (next_ >= count_) {
                break;
            }
            i = next_++;
            body = body_;
        }
        try {
            (*body)(i);
        } catch (...) {
            std::lock_guard lock(mutex_);
            if (!failure_ || i < failed_index_) {
                failure_ = std::current_exception();
                failed_index_ = i;
            }
        }
    }
    std::lock_guard lock(mutex_);
    if (--active_ == 0) {
        done_.notify_all();
    }
}

void WorkerPool::worker_loop()
{
    std::size_t seen = 0;
    for (;;) {
        {
            std::unique_lock lock(mutex_);
            wake_.wait(lock, [&] { return stop_ || generation_ != seen; });
            if (stop_) {
                return;
            }
            seen = generation_;
        }
        drain();
    }
}

} // namespace evosizer::core
