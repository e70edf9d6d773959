#include "simplets/util.hpp"

#include <algorithm>
#include <mutex>

namespace simplets {

std::string u128_to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

u128 uniform_u128(std::mt19937_64& rng, u128 bound) {
    if (bound == 0) throw ComputeError("uniform_u128: zero bound");
    // threshold = 2^128 mod bound, rejected so the remainder is unbiased
    u128 threshold = (-bound) % bound;
    for (;;) {
        u128 r = (static_cast<u128>(rng()) << 64) | rng();
        if (r >= threshold) return r % bound;
    }
}

int hardware_threads() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

void parallel_chunks(size_t n, int threads, const std::function<void(size_t, size_t)>& fn) {
    if (threads <= 0) threads = hardware_threads();
    if (n == 0) return;
    size_t nthreads = std::min<size_t>(static_cast<size_t>(threads), n);
    if (nthreads <= 1) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    size_t chunk = (n + nthreads - 1) / nthreads;
    std::exception_ptr first_error;
    std::mutex err_mutex;
    for (size_t t = 0; t < nthreads; ++t) {
        size_t begin = t * chunk;
        size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace simplets
