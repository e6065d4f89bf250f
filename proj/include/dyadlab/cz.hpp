#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "dyadlab/square.hpp"

namespace dyadlab {

// Calderon-Zygmund decomposition f = good + Σ_I f_I at height lambda.
// The selected intervals are the maximal dyadic intervals (top-down first
// hit) with average of |f| above lambda; each bad piece f_I = (f - m_I f) χ_I
// has mean zero; good equals m_I(f) on each selected I and f elsewhere.
struct CZSplit {
    double lambda = 0.0;
    Signal1D good;
    std::vector<std::pair<DyadicInterval, Signal1D>> bad_pieces;
    double bad_set_measure = 0.0; // Σ |I|

    Signal1D bad_sum() const;
};

// Requires lambda > 0 and lambda >= average of |f| over the window (on a
// finite window the root has no parent, so smaller heights admit no maximal
// interval with the classical bounds).
CZSplit cz_decompose(const Signal1D& f, double lambda);

// Σ over dyadic I inside `ambient` with I ⊄ 3I' of |<f, φ_I>| |I|^{1/2},
// together with its ratio to ||f||_1. The bump family is supplied per
// interval; a factory returning nullopt (e.g. support would leave the
// window) skips that interval and counts it.
struct LowOscillationReport {
    double sum = 0.0;
    double l1_norm = 0.0;
    double ratio = 0.0;
    int terms = 0;
    int skipped = 0;
};

using BumpFamily = std::function<std::optional<Signal1D>(const DyadicInterval&)>;

// Preconditions: support(f) ⊆ iprime, |∫f| <= 1e-10 * ||f||_1.
LowOscillationReport low_oscillation_sum(const Signal1D& f, const DyadicInterval& iprime,
                                         const BumpFamily& bumps, int min_level, int max_level,
                                         const ClipRange& ambient);

// Haar bumps φ_I = h_I restricted to the signal window.
BumpFamily haar_bump_family(const DyadicInterval& window, int res);
// Smooth mean-zero bumps adapted to I (nullopt when 2I leaves the window).
BumpFamily smooth_bump_family(const DyadicInterval& window, int res);

// Weak-(1,1) growth experiment: for each (k, n), the sup over the test set
// and over all lambda > 0 of lambda |{S̃_{k,n} f > lambda}| / ||f||_1.
struct WeakTypeCell {
    int k = 0;
    std::int64_t n = 1;
    double constant = 0.0;
    double normalized = 0.0; // constant / (2^{-k} n + 1)
    std::uint64_t argmax_trial = 0;
    std::string argmax_kind;
};

std::vector<WeakTypeCell> weak_type_experiment(const std::vector<int>& ks,
                                               const std::vector<std::int64_t>& ns, int trials,
                                               std::uint64_t seed, const DyadicInterval& window,
                                               int res, const ClipRange& ambient);

} // namespace dyadlab
