#pragma once

#include <vector>

#include "floorset/core.hpp"

namespace floorset {

// psi(t) = t - floor(t) - 1/2, the centered sawtooth; range [-1/2, 1/2).
double psi(double t);

// psi at the exact rational x/m, computed as (x mod m)/m - 1/2 so the
// fractional part never loses bits to a wide quotient.
double psi_of_quotient(u64 x, u64 m);

// Vaaler's taper Phi(t) = pi t (1 - t) cot(pi t) + t on (0,1).
// Decreases from 1 at 0+ to 0 at 1-, so every Fourier weight below sits in (0,1].
double phi(double t);

// Degree-H trigonometric approximation of psi:
//   V_H(t) = -sum_{h=1..H} (Phi(h/(H+1)) / (pi h)) sin(2 pi h t)
// coefficients[h-1] holds Phi(h/(H+1)) / (2 pi h).
struct VaalerPolynomial {
    u64 H = 0;
    std::vector<double> coefficients;
};

VaalerPolynomial make_vaaler_polynomial(u64 H);

double vaaler_approx(const VaalerPolynomial& poly, double t);

// Fejer-kernel bound on |psi - V_H|:
//   (1 / (2 (H+1)^2)) (sin(pi (H+1) t) / sin(pi t))^2
// with the limit value 1/2 at integer t.
double remainder_bound(const VaalerPolynomial& poly, double t);

// Same bound from an already-reduced fractional part in [0, 1).
double remainder_bound_at_fraction(u64 H, double frac);

}  // namespace floorset
