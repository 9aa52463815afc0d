#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace prodgin {

// Raised when an iterative kernel fails to converge. Never swallowed.
struct NumericalFailure : std::runtime_error {
    explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a requested computation exceeds a configured resource budget.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

namespace constants {
inline constexpr double sqrt_2pi = 2.5066282746310005024;
inline constexpr double inv_sqrt_2pi = 0.3989422804014326779;
inline constexpr double log_sqrt_2pi = 0.9189385332046727418;
inline constexpr double euler_gamma = 0.5772156649015328606;
// e^{1/sqrt(2pi)}, the offset inside the a_n / b_n displays.
inline const double e_pow_inv_sqrt_2pi = std::exp(inv_sqrt_2pi);
}  // namespace constants

inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Runs fn(i) for i in [0, count) on `threads` workers. Work items are handed
// out in fixed blocks so the assignment (and hence any per-item RNG stream
// usage) does not depend on scheduling. Results must be written to
// pre-allocated per-index slots by the callee.
inline void parallel_for_index(std::uint64_t count, unsigned threads,
                               const std::function<void(std::uint64_t)>& fn) {
    threads = resolve_threads(threads);
    if (threads <= 1 || count <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::exception_ptr first_error;
    std::mutex err_mutex;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            try {
                for (std::uint64_t i = t; i < count; i += threads) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

// Compensated accumulator for long sums of small terms.
class KahanSum {
  public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

  private:
    double s_ = 0.0;
    double c_ = 0.0;
};

}  // namespace prodgin
