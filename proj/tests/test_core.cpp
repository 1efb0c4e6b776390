#include "doctest.h"

#include <random>
#include <stdexcept>
#include <vector>

#include "floorset/core.hpp"

using namespace floorset;

TEST_CASE("isqrt: exact squares and their neighbours") {
    CHECK(isqrt(0) == 0);
    CHECK(isqrt(1) == 1);
    CHECK(isqrt(2) == 1);
    CHECK(isqrt(3) == 1);
    CHECK(isqrt(4) == 2);
    CHECK(isqrt(99) == 9);
    CHECK(isqrt(100) == 10);
    CHECK(isqrt(u64(1) << 62) == u64(1) << 31);
    CHECK(isqrt((u64(1) << 62) - 1) == (u64(1) << 31) - 1);
}

TEST_CASE("isqrt: round-trip on random 62-bit values") {
    std::mt19937_64 rng(0x5eed0001);
    std::uniform_int_distribution<u64> dist(0, kMaxX);
    for (int i = 0; i < 100000; ++i) {
        const u64 v = dist(rng);
        const u64 r = isqrt(v);
        REQUIRE(r * r <= v);
        REQUIRE((r + 1) * (r + 1) > v);
    }
}

TEST_CASE("isqrt_wide: values beyond 64 bits") {
    CHECK(isqrt_wide(0) == 0);
    CHECK(isqrt_wide(1) == 1);
    CHECK(isqrt_wide((u128(1) << 64) + 1) == u128(1) << 32);
    CHECK(isqrt_wide((u128(1) << 64) - 1) == (u128(1) << 32) - 1);
    CHECK(isqrt_wide(u128(1) << 100) == u128(1) << 50);
    CHECK(isqrt_wide((u128(1) << 100) - 1) == (u128(1) << 50) - 1);
}

TEST_CASE("cardinality_exact: known values") {
    CHECK(cardinality_exact(1) == 1);
    CHECK(cardinality_exact(2) == 2);
    CHECK(cardinality_exact(10) == 5);
    CHECK(cardinality_exact(100) == 19);
    CHECK(cardinality_exact(1000) == 62);
    CHECK(cardinality_exact(1000000) == 1999);
    CHECK(cardinality_exact(kMaxX) == (u64(1) << 32) - 1);
}

TEST_CASE("enumerate_floor_set: known sets") {
    CHECK(enumerate_floor_set(1).values == std::vector<u64>{1});
    CHECK(enumerate_floor_set(10).values == std::vector<u64>{1, 2, 3, 5, 10});
    const std::vector<u64> s100 = {1, 2,  3,  4,  5,  6,  7,  8,  9, 10,
                                   11, 12, 14, 16, 20, 25, 33, 50, 100};
    CHECK(enumerate_floor_set(100).values == s100);
    CHECK(enumerate_floor_set(1000).values.size() == 62);
}

TEST_CASE("enumeration agrees with the O(x) reference") {
    for (u64 x = 1; x <= 10000; ++x)
        REQUIRE(enumerate_floor_set(x).values == brute_force_floor_set(x).values);
    std::mt19937_64 rng(0x5eed0002);
    std::uniform_int_distribution<u64> dist(10001, 100000);
    for (int i = 0; i < 500; ++i) {
        const u64 x = dist(rng);
        REQUIRE(enumerate_floor_set(x).values == brute_force_floor_set(x).values);
    }
}

TEST_CASE("cardinality formula matches streamed length") {
    for (u64 x = 1; x <= 20000; ++x) {
        u64 n = 0;
        for_each_floor_value(x, [&](u64) { ++n; });
        REQUIRE(n == cardinality_exact(x));
    }
    std::mt19937_64 rng(0x5eed0003);
    std::uniform_int_distribution<u64> dist(20001, 1000000);
    for (int i = 0; i < 2000; ++i) {
        const u64 x = dist(rng);
        u64 n = 0;
        for_each_floor_value(x, [&](u64) { ++n; });
        REQUIRE(n == cardinality_exact(x));
    }
}

TEST_CASE("membership criterion characterizes the set") {
    // m in S(x)  <=>  floor(x/m) > floor(x/(m+1)), checked for every m <= x.
    for (u64 x = 1; x <= 10000; ++x) {
        std::vector<bool> member(x + 2, false);
        for_each_floor_value(x, [&](u64 v) { member[v] = true; });
        u64 mismatches = 0;
        for (u64 m = 1; m <= x; ++m)
            if ((x / m > x / (m + 1)) != member[m]) ++mismatches;
        REQUIRE(mismatches == 0);
    }
}

TEST_CASE("set structure: ascending, bounded by 1 and x") {
    std::mt19937_64 rng(0x5eed0004);
    std::uniform_int_distribution<u64> dist(1, 1000000000);
    for (int i = 0; i < 200; ++i) {
        const u64 x = dist(rng);
        const FloorSet fs = enumerate_floor_set(x);
        REQUIRE(fs.x == x);
        REQUIRE(fs.values.front() == 1);
        REQUIRE(fs.values.back() == x);
        REQUIRE(fs.values.size() == cardinality_exact(x));
        for (std::size_t j = 1; j < fs.values.size(); ++j)
            REQUIRE(fs.values[j - 1] < fs.values[j]);
    }
}

TEST_CASE("core domain errors") {
    CHECK_THROWS_AS(enumerate_floor_set(0), std::invalid_argument);
    CHECK_THROWS_AS(cardinality_exact(0), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_floor_set(kMaxX + 1), std::invalid_argument);
    CHECK_THROWS_AS(brute_force_floor_set(0), std::invalid_argument);
    CHECK_THROWS_AS(brute_force_floor_set(kMaxBruteX + 1), std::invalid_argument);
    CHECK(brute_force_floor_set(1).values == std::vector<u64>{1});
}
