#pragma once

#include <vector>

#include "floorset/core.hpp"

namespace floorset {

// Count of S(x) elements in the progression a mod q, residues labeled
// 1 <= a <= q (a = q stands for the residue class 0).
struct ProgressionQuery {
    u64 x = 0;
    u64 q = 1;
    u64 a = 1;
};

struct ProgressionReport {
    ProgressionQuery query;
    u64 count = 0;
    double main_term = 0.0;        // 2 sqrt(x) / q
    double raw_error = 0.0;        // count - main_term
    double normalized_error = 0.0; // raw_error / ((x/q)^(1/3) ln x)
};

// Split of the count at sqrt(x): s1 counts qualifying progression members
// m = dq + a with m^2 <= x, s2 those with m^2 > x, both by the exact
// zero-one membership indicator [floor(x/m) > floor(x/(m+1))].  The tail
// sums run over the truncated range d <= (x/q)^(2/3) used by the analytic
// estimate: s21 accumulates x/(m(m+1)) and s22_* the sawtooth corrections.
struct DecompositionReport {
    ProgressionQuery query;
    u64 s1 = 0;
    u64 s2 = 0;
    double s21 = 0.0;
    double s22_0 = 0.0;
    double s22_1 = 0.0;
    i64 boundary_correction = 0;   // exact count minus (s1 + s2)
};

ProgressionReport count_progression(const ProgressionQuery& query);

// Reference filter over an enumerated set.
u64 count_progression_via_set(const FloorSet& fs, u64 q, u64 a);

DecompositionReport decompose(const ProgressionQuery& query);

// Largest q the error scan admits at height x: max(1, floor(x^(1/4) / (ln x)^(3/2))).
// The clamp keeps q = 1 admissible at every height.
u64 admissible_q_max(u64 x);

struct QPolicy {
    enum class Kind { Range, Explicit };
    Kind kind = Kind::Range;
    std::vector<u64> values;       // Explicit only
};

struct APolicy {
    std::vector<u64> values;       // empty means all residues 1..min(q, cap)
    u64 cap = 200;
};

// One report per (x, q, a), sorted by (x, q, a) regardless of thread count.
std::vector<ProgressionReport> scan_errors(const std::vector<u64>& x_grid,
                                           const QPolicy& q_policy,
                                           const APolicy& a_policy = {},
                                           unsigned threads = 1);

}  // namespace floorset
