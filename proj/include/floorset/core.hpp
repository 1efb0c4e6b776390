#pragma once

#include <cstdint>
#include <vector>

namespace floorset {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// Largest admissible x.  Keeps x^2 (needed by range checks) inside 128 bits
// with headroom and every quotient chain in exactly representable territory.
inline constexpr u64 kMaxX = u64(1) << 62;

// Brute-force routines walk all n <= x, so they get a much smaller cap.
inline constexpr u64 kMaxBruteX = 10'000'000;

// floor(sqrt(v)), exact for all v: float seed, one Newton step, then
// division-based correction (r <= v/r avoids any overflow).
u64 isqrt(u64 v);
u128 isqrt_wide(u128 v);

// S(x) = { floor(x/n) : 1 <= n <= x }, values sorted ascending.
struct FloorSet {
    u64 x = 0;
    std::vector<u64> values;
};

// |S(x)| = isqrt(4x+1) - 1.
u64 cardinality_exact(u64 x);

namespace detail {
void require_valid_x(u64 x);
}

// Streams the distinct quotients floor(x/n) in increasing order without
// materializing them.  The successor of v in S(x) is floor(x/n) with
// n = floor(x/(v+1)): the largest n whose quotient exceeds v.
template <typename Fn>
void for_each_floor_value(u64 x, Fn&& fn) {
    detail::require_valid_x(x);
    u64 v = 1;
    for (;;) {
        fn(v);
        const u64 n = x / (v + 1);
        if (n == 0) break;
        v = x / n;
    }
}

// O(sqrt(x)) time and space.
FloorSet enumerate_floor_set(u64 x);

// O(x) reference enumeration over every n; x <= 10^7.
FloorSet brute_force_floor_set(u64 x);

}  // namespace floorset
