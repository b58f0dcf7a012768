#pragma once

// Shared support code: error types, the additive character e(t) = exp(2*pi*i*t),
// a deterministic RNG wrapper, and a small thread-pool parallel_for.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace lacsph {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Work/memory budget exceeded.  Callers must never truncate silently; they
// throw this with the offending parameters instead.
class resource_error : public std::runtime_error {
  public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// e(t) = exp(2*pi*i*t).  Single Fourier convention for the whole library.
inline cplx unit_phase(double t) {
    return {std::cos(kTwoPi * t), std::sin(kTwoPi * t)};
}

// e(num/den) with integer arguments; num is reduced mod den first so that
// arithmetically equal phases produce bit-identical doubles.
inline cplx unit_phase_frac(long long num, long long den) {
    long long r = num % den;
    if (r < 0) r += den;
    return unit_phase(static_cast<double>(r) / static_cast<double>(den));
}

// Deterministic 64-bit generator (splitmix-seeded xoshiro-style stream via
// std::mt19937_64) with uniform helpers that do not depend on libstdc++
// distribution internals, so streams are identical across platforms.
class DetRng {
  public:
    explicit DetRng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next_u64() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

    // Uniform integer in [lo, hi] inclusive.
    long long next_range(long long lo, long long hi) {
        return lo + static_cast<long long>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

  private:
    std::uint64_t state_;
};

// Runs body(i) for i in [0, n).  Results must be written to index-addressed
// slots so the outcome is independent of the worker count.
inline void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& body) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr first_error = nullptr;
    std::mutex err_mutex;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (std::size_t i = w; i < n; i += workers) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

inline int default_jobs() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

}  // namespace lacsph
