#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace simplets {

// 128-bit unsigned counters: treelet-occurrence counts overflow 64 bits on
// dense inputs long before they stop being exact.
using u128 = unsigned __int128;

/// Bad arguments / bad CLI invocation (exit code 1).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// File and parse problems (exit code 2).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// Failures during computation: overflow, budget exceeded, no colorful
/// treelets after recoloring, internal consistency violations (exit code 3).
struct ComputeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline u128 checked_add(u128 a, u128 b) {
    u128 r;
    if (__builtin_add_overflow(a, b, &r))
        throw ComputeError("128-bit treelet count overflow; rerun with a smaller k or a sparser input");
    return r;
}

inline u128 checked_mul(u128 a, u128 b) {
    u128 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw ComputeError("128-bit treelet count overflow; rerun with a smaller k or a sparser input");
    return r;
}

inline double u128_to_double(u128 v) {
    // exact for v < 2^53, otherwise nearest double; fine for report arithmetic
    return static_cast<double>(v);
}

std::string u128_to_string(u128 v);

/// splitmix64; used to derive independent RNG streams from (seed, index).
inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t mix64(uint64_t a, uint64_t b) { return mix64(a ^ mix64(b)); }

/// Derived stream for a (seed, stream_id, index) triple.
inline std::mt19937_64 make_rng(uint64_t seed, uint64_t stream, uint64_t index = 0) {
    return std::mt19937_64(mix64(mix64(seed, stream), index));
}

/// Uniform draw in [0, bound) over 128 bits, unbiased via rejection.
u128 uniform_u128(std::mt19937_64& rng, u128 bound);

int hardware_threads();

/// Static chunked parallel for over [0, n). fn(begin, end) per chunk.
/// Chunk boundaries depend only on (n, threads), so any per-index output is
/// identical for every thread count; callers must not share accumulators.
void parallel_chunks(size_t n, int threads, const std::function<void(size_t, size_t)>& fn);

}  // namespace simplets
