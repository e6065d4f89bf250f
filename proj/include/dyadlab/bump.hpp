#pragma once

#include "dyadlab/signal.hpp"

namespace dyadlab {

// Smooth compactly supported profiles. The plateau profile is 1 on [-1, 1]
// and 0 off [-2, 2]; the bump profile is exp(-1/(1-u^2)) on (-1, 1); the
// mean-zero profile is its derivative, whose cell averages we can evaluate
// exactly through the antiderivative.
double bump_profile(double u);
double bump_profile_derivative(double u);
double plateau_profile(double u);
// (1 + u^2)^{-p}: polynomial decay of order 2p, for experiments that need
// genuine tails (the compact profile is identically zero past its support).
double poly_tail_profile(double u, int p);

// Parameters of a generated bump: support is the fixed multiple
// support_multiple * I of the base interval (default 4I). `order` and
// `constant` describe the adaptedness contract the generator aims at; the
// certifier below measures the constant actually achieved.
enum class BumpProfile { SmoothCompact, PolynomialTail };

struct BumpSpec {
    DyadicInterval interval;
    int order = 2;
    double constant = 1.0;
    bool mean_zero = false;
    double support_multiple = 4.0; // >= 2; compact profile only
    BumpProfile profile = BumpProfile::SmoothCompact;
    int tail_power = 8; // polynomial profile: decay (1+|u|)^{-2 tail_power}
};

// Sampled, L^2-normalized bump on the given window. The discretized signal is
// normalized after sampling, so its exact grid L^2 norm is 1. Mean-zero bumps
// use exact cell averages of the derivative profile, so the grid integral
// is 0 to round-off. Preconditions: at least 16 samples inside spec.interval;
// compact supports must fit in the window, and polynomial tails may discard
// at most 1e-8 of their mass past the window. Violations throw.
Signal1D make_bump(const BumpSpec& spec, const DyadicInterval& window, int res);

// L^infty-normalized plateau adapted to [center - radius, center + radius],
// equal to 1 there and supported in twice that interval.
Signal1D make_plateau(double center, double radius, const DyadicInterval& window, int res);
double plateau_value(double x, double center, double radius);

// Least C such that |f^(n)(x)| <= C |I|^{-1/2-n} (1 + |I|^{-1}|x-c(I)|)^{-N}
// for n = 0..N, with derivatives estimated by centered finite differences at
// grid points. Requires >= 2^{N+4} samples inside I.
double adaptedness_constant(const Signal1D& f, const DyadicInterval& i, int order);

} // namespace dyadlab
