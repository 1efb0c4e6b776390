#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "floorset/core.hpp"

namespace floorset {

// Sawtooth sum over one block of the progression:
//   sum_{D < d <= D'} psi(x / (dq + a + delta))
// with the block inside the analytic range (sqrt(x)-a)/q <= D <= (x/q)^(2/3)
// and D < D' <= 2D.
struct ExpSumQuery {
    u64 x = 0;
    u64 q = 1;
    u64 a = 1;
    unsigned delta = 0;   // 0 or 1
    double D = 0.0;
    double D_prime = 0.0;
};

// van der Corput exponent pair; admissible region 0 <= k <= 1/2 <= l <= 1.
struct ExponentPair {
    double kappa = 0.5;
    double lambda = 0.5;
};

// Theoretical block bound with its three ingredients:
//   term1 = (x^k D^(l-k) q^-k)^(1/(1+k))   balanced Vaaler/exp-sum term
//   term2 = x^k D^(l-2k) q^-k              the same sum at H = D
//   term3 = D^2 q / x                      trivial tail
struct BoundReport {
    double term1 = 0.0;
    double term2 = 0.0;
    double term3 = 0.0;
    double total = 0.0;
};

struct OptimizedH {
    u64 H = 0;
    double bound = 0.0;   // g(H) = D/H + x^k D^(l-2k) q^-k H^k + D^2 q / x
};

// Vaaler split of the block sum at degree H: the twisted exponential part,
// the Fejer remainder budget, and the reconstruction residual.
struct ExpSumDecomposition {
    std::complex<double> flat;   // sum_{h<=H} (Phi(h/(H+1))/h) sum_d e(h x / m_d)
    double dagger_bound = 0.0;   // sum_d Fejer bound at x / m_d
    double residual = 0.0;       // | direct sum - (-Im(flat)/pi) |
};

double frak_s(const ExpSumQuery& query);

// Fractional part of h x / m, with h x reduced mod m in 128 bits before the
// one double division.  Dividing first would leave x/m's fraction with only
// the bits the integer part didn't consume.
double reduced_phase(u64 h, u64 x, u64 m);

ExpSumDecomposition frak_s_decomposed(const ExpSumQuery& query, u64 H);

BoundReport exponent_pair_bound(double x, double q, double D,
                                const ExponentPair& pair);

OptimizedH optimize_H(double x, double q, double D, const ExponentPair& pair);

// The dyadic blocks (D, min(2D, top)] covering the analytic range
// ((sqrt(x)-a)/q, (x/q)^(2/3)]; empty when the range holds no block.
std::vector<std::pair<double, double>> dyadic_windows(u64 x, u64 q, u64 a);

// Max of |frak_s| over those blocks, for one delta.
double dyadic_max_scan(u64 x, u64 q, u64 a, unsigned delta);

}  // namespace floorset
