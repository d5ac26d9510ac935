#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace piltz {

/// Runs body(index, worker) for index in [0, n) on up to `threads` workers.
/// Work is claimed dynamically; callers that need a deterministic result
/// store per-index outputs and reduce them in index order afterwards.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
    if (n == 0) return;
    unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i, 0U);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&](unsigned worker) {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i, worker);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(n);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

/// Neumaier-compensated accumulator; adding values in a fixed order gives
/// a result independent of how the work was scheduled.
class CompensatedSum {
public:
    void add(double v) {
        double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    void add(const CompensatedSum& other) {
        add(other.sum_);
        add(other.comp_);
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace piltz
