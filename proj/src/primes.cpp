#include "floorset/primes.hpp"

#include <cmath>
#include <initializer_list>
#include <stdexcept>

namespace floorset {

namespace {

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(u128(a) * b % m);
}

u64 powmod(u64 base, u64 exp, u64 m) {
    u64 r = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// One strong-probable-prime round; n odd, n - 1 = d 2^s.
bool witness_passes(u64 a, u64 d, unsigned s, u64 n) {
    u64 v = powmod(a, d, n);
    if (v == 0 || v == 1 || v == n - 1) return true;   // v == 0: a was a multiple of n
    for (unsigned i = 1; i < s; ++i) {
        v = mulmod(v, v, n);
        if (v == n - 1) return true;
    }
    return false;
}

}  // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                  29ull, 31ull, 37ull})
        if (n % p == 0) return n == p;
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // {2, 7, 61} decides everything below 4759123141; the 12 smallest primes
    // decide all of 64 bits.  Both witness sets are exhaustively verified in
    // the literature on strong pseudoprimes.
    if (n < 4759123141ull) {
        for (u64 a : {2ull, 7ull, 61ull})
            if (!witness_passes(a, d, s, n)) return false;
        return true;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                  29ull, 31ull, 37ull})
        if (!witness_passes(a, d, s, n)) return false;
    return true;
}

u64 pi_s(u64 x) {
    if (x < 2) throw std::invalid_argument("pi_s: x must be >= 2");
    if (x > kMaxX) throw std::invalid_argument("pi_s: x exceeds 2^62");
    u64 count = 0;
    for_each_floor_value(x, [&](u64 v) {
        if (is_prime(v)) ++count;
    });
    return count;
}

namespace {

// Adaptive Simpson with the classical 15x error heuristic.
double simpson_slice(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_step(F& f, double a, double fa, double b, double fb, double fm,
                     double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson_slice(a, fa, m, fm, flm);
    const double right = simpson_slice(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_step(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(F f, double a, double b, double tol) {
    if (b <= a) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = simpson_slice(a, fa, b, fb, fm);
    return adaptive_step(f, a, fa, b, fb, fm, whole, tol, 48);
}

}  // namespace

double li_s(double x, double tol) {
    if (!(x >= 5.0) || !std::isfinite(x))
        throw std::invalid_argument("li_s: x must be >= 5");
    if (!(tol > 0.0 && tol <= 1e-3))
        throw std::invalid_argument("li_s: tol must lie in (0, 1e-3]");
    const double root = std::sqrt(x);
    const double small = integrate([](double t) { return 1.0 / std::log(t); },
                                   2.0, root, 0.5 * tol);
    const double large = integrate([&](double t) { return 1.0 / std::log(x / t); },
                                   2.0, root, 0.5 * tol);
    return small + large;
}

PrimeCountReport prime_count_report(u64 x, double tol) {
    PrimeCountReport rep;
    rep.x = x;
    rep.pi_s = pi_s(x);
    rep.li_s = li_s(static_cast<double>(x), tol);
    const double root = std::sqrt(static_cast<double>(x));
    rep.main_term = 2.0 * root / std::log(root);
    rep.ratio = static_cast<double>(rep.pi_s) / rep.li_s;
    return rep;
}

}  // namespace floorset
