#pragma once

#include "floorset/core.hpp"

namespace floorset {

// Deterministic Miller-Rabin, exact for every 64-bit n.
bool is_prime(u64 n);

// pi_S(x): primes among the distinct quotients of x.
u64 pi_s(u64 x);

// Smooth analogue: li_S(x) = int_2^sqrt(x) dt/log t + int_2^sqrt(x) dt/log(x/t).
double li_s(double x, double tol = 1e-9);

struct PrimeCountReport {
    u64 x = 0;
    u64 pi_s = 0;
    double li_s = 0.0;
    double main_term = 0.0;   // 2 sqrt(x) / log sqrt(x)
    double ratio = 0.0;       // pi_s / li_s
};

PrimeCountReport prime_count_report(u64 x, double tol = 1e-9);

}  // namespace floorset
