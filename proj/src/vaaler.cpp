#include "floorset/vaaler.hpp"

#include <cmath>
#include <stdexcept>

#include "floorset/kahan.hpp"

namespace floorset {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

// z * cot(z) for z in (0, pi/2]; series below 1e-4 where the naive
// quotient cos/sin starts losing the cancellation against 1/z.
double z_cot_z(double z) {
    if (z < 1e-4) {
        const double z2 = z * z;
        return 1.0 - z2 / 3.0 - z2 * z2 / 45.0;
    }
    return z * std::cos(z) / std::sin(z);
}

}  // namespace

double psi(double t) { return t - std::floor(t) - 0.5; }

double psi_of_quotient(u64 x, u64 m) {
    return static_cast<double>(x % m) / static_cast<double>(m) - 0.5;
}

double phi(double t) {
    if (!(t > 0.0 && t < 1.0))
        throw std::invalid_argument("phi: t must lie in (0,1)");
    // pi t (1-t) cot(pi t) + t, folded so the cot argument stays in (0, pi/2].
    if (t <= 0.5) return (1.0 - t) * z_cot_z(kPi * t) + t;
    const double u = 1.0 - t;
    return t * (1.0 - z_cot_z(kPi * u));
}

VaalerPolynomial make_vaaler_polynomial(u64 H) {
    if (H < 1) throw std::invalid_argument("vaaler: H must be >= 1");
    if (H > 100'000'000) throw std::invalid_argument("vaaler: H exceeds 10^8");
    VaalerPolynomial poly;
    poly.H = H;
    poly.coefficients.resize(H);
    const double denom = static_cast<double>(H) + 1.0;
    for (u64 h = 1; h <= H; ++h)
        poly.coefficients[h - 1] =
            phi(static_cast<double>(h) / denom) / (kTwoPi * static_cast<double>(h));
    return poly;
}

double vaaler_approx(const VaalerPolynomial& poly, double t) {
    const double r = t - std::floor(t);
    KahanSum acc;
    for (u64 h = 1; h <= poly.H; ++h) {
        // Reduce the phase mod 1 before multiplying by 2 pi; h r can reach
        // ~10^8 and sin would otherwise see the argument's rounding error
        // amplified by the whole integer part.
        const double hr = static_cast<double>(h) * r;
        const double f = hr - std::floor(hr);
        acc.add(-2.0 * poly.coefficients[h - 1] * std::sin(kTwoPi * f));
    }
    return acc.value();
}

double remainder_bound_at_fraction(u64 H, double frac) {
    if (frac == 0.0) return 0.5;
    const double hp1 = static_cast<double>(H) + 1.0;
    const double y = std::fmod(hp1 * frac, 1.0);
    const double ratio = std::sin(kPi * y) / (hp1 * std::sin(kPi * frac));
    return 0.5 * ratio * ratio;
}

double remainder_bound(const VaalerPolynomial& poly, double t) {
    return remainder_bound_at_fraction(poly.H, t - std::floor(t));
}

}  // namespace floorset
