#include "floorset/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "floorset/kahan.hpp"
#include "floorset/vaaler.hpp"

namespace floorset {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;
constexpr u64 kMaxBlockTerms = 1'000'000'000;
constexpr u64 kMaxDecomposedWork = 2'000'000'000;

long double range_lower(u64 x, u64 a, u64 q) {
    return (std::sqrt(static_cast<long double>(x)) - static_cast<long double>(a)) /
           static_cast<long double>(q);
}

long double range_upper(u64 x, u64 q) {
    return std::pow(static_cast<long double>(x) / static_cast<long double>(q),
                    2.0L / 3.0L);
}

void validate_query(const ExpSumQuery& query) {
    if (query.x < 1) throw std::invalid_argument("expsum: x must be >= 1");
    if (query.x > kMaxX) throw std::invalid_argument("expsum: x exceeds 2^62");
    if (query.q < 1) throw std::invalid_argument("expsum: q must be >= 1");
    if (query.a < 1 || query.a > query.q)
        throw std::invalid_argument("expsum: a must satisfy 1 <= a <= q");
    if (query.delta > 1) throw std::invalid_argument("expsum: delta must be 0 or 1");
    if (!std::isfinite(query.D) || !std::isfinite(query.D_prime))
        throw std::invalid_argument("expsum: block endpoints must be finite");
    if (!(query.D < query.D_prime && query.D_prime <= 2.0 * query.D))
        throw std::invalid_argument("expsum: block must satisfy D < D' <= 2D");
    // Range checks get one part in 10^14 of slack so a block that sits exactly
    // on an endpoint survives the long double evaluation of the endpoint.
    const long double lo = range_lower(query.x, query.a, query.q);
    if (static_cast<long double>(query.D) < lo - std::fabs(lo) * 1e-14L - 1e-14L)
        throw std::invalid_argument("expsum: D below (sqrt(x)-a)/q");
    const long double hi = range_upper(query.x, query.q);
    if (static_cast<long double>(query.D) > hi * (1.0L + 1e-14L))
        throw std::invalid_argument("expsum: D above (x/q)^(2/3)");
    const u64 d_lo = static_cast<u64>(std::floor(query.D));
    const u64 d_hi = static_cast<u64>(std::floor(query.D_prime));
    if (d_hi - d_lo > kMaxBlockTerms)
        throw std::invalid_argument("expsum: block exceeds the term budget");
}

void term_range(const ExpSumQuery& query, u64& first, u64& last) {
    first = static_cast<u64>(std::floor(query.D)) + 1;
    last = static_cast<u64>(std::floor(query.D_prime));
}

double frak_s_unchecked(const ExpSumQuery& query, u64 first, u64 last) {
    KahanSum acc;
    for (u64 d = first; d <= last; ++d)
        acc.add(psi_of_quotient(query.x, d * query.q + query.a + query.delta));
    return acc.value();
}

}  // namespace

double frak_s(const ExpSumQuery& query) {
    validate_query(query);
    u64 first, last;
    term_range(query, first, last);
    return frak_s_unchecked(query, first, last);
}

double reduced_phase(u64 h, u64 x, u64 m) {
    if (m == 0) throw std::invalid_argument("expsum: modulus must be >= 1");
    return static_cast<double>(static_cast<u64>(u128(h) * x % m)) /
           static_cast<double>(m);
}

ExpSumDecomposition frak_s_decomposed(const ExpSumQuery& query, u64 H) {
    validate_query(query);
    if (H < 1) throw std::invalid_argument("expsum: H must be >= 1");
    if (static_cast<double>(H) > query.D)
        throw std::invalid_argument("expsum: H must not exceed D");
    u64 first, last;
    term_range(query, first, last);
    const u64 n_terms = (first > last) ? 0 : last - first + 1;
    if (H > kMaxDecomposedWork / std::max<u64>(n_terms, 1))
        throw std::invalid_argument("expsum: H * block size exceeds the work budget");

    const VaalerPolynomial poly = make_vaaler_polynomial(H);
    ExpSumDecomposition dec;

    // h-major accumulation in a fixed order keeps the result independent of
    // everything but the query.
    KahanSum re, im;
    for (u64 h = 1; h <= H; ++h) {
        KahanSum block_re, block_im;
        for (u64 d = first; d <= last; ++d) {
            const u64 m = d * query.q + query.a + query.delta;
            const double f = reduced_phase(h, query.x, m);
            block_re.add(std::cos(kTwoPi * f));
            block_im.add(std::sin(kTwoPi * f));
        }
        const double w = kTwoPi * poly.coefficients[h - 1];   // Phi(h/(H+1)) / h
        re.add(w * block_re.value());
        im.add(w * block_im.value());
    }
    dec.flat = {re.value(), im.value()};

    KahanSum dagger;
    for (u64 d = first; d <= last; ++d) {
        const u64 m = d * query.q + query.a + query.delta;
        const double f =
            static_cast<double>(query.x % m) / static_cast<double>(m);
        dagger.add(remainder_bound_at_fraction(H, f));
    }
    dec.dagger_bound = dagger.value();

    const double direct = frak_s_unchecked(query, first, last);
    dec.residual = std::fabs(direct - (-dec.flat.imag() / kPi));
    return dec;
}

namespace {

void validate_pair(const ExponentPair& pair) {
    if (!(pair.kappa >= 0.0 && pair.kappa <= 0.5 && pair.lambda >= 0.5 &&
          pair.lambda <= 1.0))
        throw std::invalid_argument(
            "expsum: exponent pair must satisfy 0 <= kappa <= 1/2 <= lambda <= 1");
}

void validate_bound_inputs(double x, double q, double D) {
    if (!(x > 0.0 && q > 0.0 && D > 0.0) || !std::isfinite(x) ||
        !std::isfinite(q) || !std::isfinite(D))
        throw std::invalid_argument("expsum: x, q, D must be positive and finite");
}

// log of the middle term's coefficient x^k D^(l-2k) q^-k.
double log_mid_coeff(double x, double q, double D, const ExponentPair& pair) {
    return pair.kappa * std::log(x) + (pair.lambda - 2.0 * pair.kappa) * std::log(D) -
           pair.kappa * std::log(q);
}

}  // namespace

BoundReport exponent_pair_bound(double x, double q, double D,
                                const ExponentPair& pair) {
    validate_bound_inputs(x, q, D);
    validate_pair(pair);
    BoundReport rep;
    const double log_t1 = (pair.kappa * std::log(x) +
                           (pair.lambda - pair.kappa) * std::log(D) -
                           pair.kappa * std::log(q)) /
                          (1.0 + pair.kappa);
    rep.term1 = std::exp(log_t1);
    rep.term2 = std::exp(log_mid_coeff(x, q, D, pair));
    rep.term3 = D * D * q / x;
    rep.total = rep.term1 + rep.term2 + rep.term3;
    return rep;
}

OptimizedH optimize_H(double x, double q, double D, const ExponentPair& pair) {
    validate_bound_inputs(x, q, D);
    validate_pair(pair);
    if (D < 1.0) throw std::invalid_argument("expsum: optimize_H needs D >= 1");
    if (D > static_cast<double>(kMaxX))
        throw std::invalid_argument("expsum: optimize_H needs D <= 2^62");
    const u64 top = static_cast<u64>(std::floor(D));
    const double c = std::exp(log_mid_coeff(x, q, D, pair));
    const double tail = D * D * q / x;
    auto g = [&](u64 H) {
        const double Hd = static_cast<double>(H);
        return D / Hd + c * std::pow(Hd, pair.kappa) + tail;
    };

    // g is unimodal in H (its derivative scaled by H^2 is -D + k c H^(k+1),
    // strictly increasing), so the integer argmin sits next to the real
    // balance point (D / (k c))^(1/(1+k)); kappa = 0 degenerates to H = top.
    std::vector<u64> candidates = {1, top};
    if (pair.kappa > 0.0 && c > 0.0) {
        const double balance =
            std::pow(D / (pair.kappa * c), 1.0 / (1.0 + pair.kappa));
        if (std::isfinite(balance)) {
            const double base = std::floor(balance);
            for (double off = -2.0; off <= 2.0; off += 1.0) {
                const double cand = base + off;
                if (cand >= 1.0 && cand <= static_cast<double>(top))
                    candidates.push_back(static_cast<u64>(cand));
            }
        }
    }
    OptimizedH best{0, 0.0};
    for (u64 H : candidates) {
        H = std::clamp<u64>(H, 1, top);
        const double value = g(H);
        if (best.H == 0 || value < best.bound ||
            (value == best.bound && H < best.H)) {
            best = {H, value};
        }
    }
    // Walk downhill in case the float balance point landed a step off.
    while (best.H > 1 && g(best.H - 1) < best.bound)
        best = {best.H - 1, g(best.H - 1)};
    while (best.H < top && g(best.H + 1) < best.bound)
        best = {best.H + 1, g(best.H + 1)};
    return best;
}

std::vector<std::pair<double, double>> dyadic_windows(u64 x, u64 q, u64 a) {
    if (x < 1) throw std::invalid_argument("expsum: x must be >= 1");
    if (x > kMaxX) throw std::invalid_argument("expsum: x exceeds 2^62");
    if (q < 1) throw std::invalid_argument("expsum: q must be >= 1");
    if (a < 1 || a > q)
        throw std::invalid_argument("expsum: a must satisfy 1 <= a <= q");

    const long double hi = range_upper(x, q);
    // Blocks need D > 0 (D < D' <= 2D forces it).  A non-positive lower
    // endpoint can only drop d = 0, which no positive block contains anyway.
    long double D = std::max(range_lower(x, a, q), 0.5L);
    std::vector<std::pair<double, double>> windows;
    while (D < hi) {
        const long double Dp = std::min(2.0L * D, hi);
        if (static_cast<double>(Dp) <= static_cast<double>(D)) break;
        windows.emplace_back(static_cast<double>(D), static_cast<double>(Dp));
        D = Dp;
    }
    return windows;
}

double dyadic_max_scan(u64 x, u64 q, u64 a, unsigned delta) {
    if (delta > 1) throw std::invalid_argument("expsum: delta must be 0 or 1");
    double best = 0.0;
    for (const auto& [D, Dp] : dyadic_windows(x, q, a)) {
        ExpSumQuery block;
        block.x = x;
        block.q = q;
        block.a = a;
        block.delta = delta;
        block.D = D;
        block.D_prime = Dp;
        best = std::max(best, std::fabs(frak_s(block)));
    }
    return best;
}

}  // namespace floorset
