#include "floorset/core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace floorset {

namespace detail {

void require_valid_x(u64 x) {
    if (x == 0) throw std::invalid_argument("x must be >= 1");
    if (x > kMaxX) throw std::invalid_argument("x exceeds 2^62");
}

}  // namespace detail

u64 isqrt(u64 v) {
    if (v < 2) return v;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(v)));
    r = (r + v / r) / 2;
    while (r > v / r) --r;
    while (r + 1 <= v / (r + 1)) ++r;
    return r;
}

u128 isqrt_wide(u128 v) {
    if (v < 2) return v;
    u128 r = static_cast<u128>(std::sqrt(static_cast<long double>(v)));
    if (r == 0) r = 1;
    r = (r + v / r) / 2;
    while (r > v / r) --r;
    while (r + 1 <= v / (r + 1)) ++r;
    return r;
}

u64 cardinality_exact(u64 x) {
    detail::require_valid_x(x);
    // |S(x)| = isqrt(4x+1) - 1; 4x+1 may not fit in 64 bits, hence the wide root.
    return static_cast<u64>(isqrt_wide(u128(4) * x + 1) - 1);
}

FloorSet enumerate_floor_set(u64 x) {
    FloorSet fs;
    fs.x = x;
    fs.values.reserve(cardinality_exact(x));
    for_each_floor_value(x, [&](u64 v) { fs.values.push_back(v); });
    return fs;
}

FloorSet brute_force_floor_set(u64 x) {
    if (x == 0) throw std::invalid_argument("x must be >= 1");
    if (x > kMaxBruteX)
        throw std::invalid_argument("brute_force_floor_set: x exceeds " +
                                    std::to_string(kMaxBruteX));
    FloorSet fs;
    fs.x = x;
    // floor(x/n) is non-increasing in n, so consecutive deduplication suffices.
    u64 last = 0;
    for (u64 n = x; n >= 1; --n) {
        const u64 v = x / n;
        if (v != last) {
            fs.values.push_back(v);
            last = v;
        }
    }
    return fs;
}

}  // namespace floorset
