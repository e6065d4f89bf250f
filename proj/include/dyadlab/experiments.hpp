#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dyadlab/bump.hpp"
#include "dyadlab/forms.hpp"

namespace dyadlab {

// Piecewise-constant quadrature grid not tied to a dyadic window (cutoffs at
// growing scales, bumps on their own supports).
struct GridFn {
    double left = 0.0;
    double h = 0.0;
    std::vector<double> v;

    double center(std::size_t i) const { return left + (static_cast<double>(i) + 0.5) * h; }
    double integral() const {
        double s = 0.0;
        for (double x : v) s += x;
        return s * h;
    }
    double l1_norm() const {
        double s = 0.0;
        for (double x : v) s += std::abs(x);
        return s * h;
    }
    double l2_norm() const {
        double s = 0.0;
        for (double x : v) s += x * x;
        return std::sqrt(s * h);
    }
    static GridFn from_signal(const Signal1D& f) {
        return {f.window.left(), f.cell_width(), f.v};
    }
};

// One-dimensional kernel factor with an optional exact cell-pair integral
// ∫_{t in [a,b]} ∫_{x in [c,d]} k(x,t) dx dt (used when available; it embeds
// the symmetric principal value, so overlapping cells are fine).
struct KernelFactor {
    std::function<double(double, double)> point; // k(x, t)
    std::function<double(double, double, double, double)> cell_pair; // (a,b,c,d)
};

KernelFactor hilbert_factor();
KernelFactor smooth_hilbert_factor(double a);
KernelFactor zero_factor();

// Λ_1(u, v) = ∫∫ u(t) v(x) k(x,t) dt dx; midpoint rule with overlapping
// cells skipped unless an exact pair integral is present.
double kernel_pairing(const KernelFactor& k, const GridFn& t_side, const GridFn& x_side);

// Kernel-backed bilinear form of tensor type K = k1 ⊗ k2, evaluated through
// per-axis pairings.
struct TensorKernelForm {
    KernelFactor k1, k2;
    double delta = 1.0;

    double eval_tensor(const GridFn& t1, const GridFn& t2, const GridFn& x1,
                       const GridFn& x2) const {
        return kernel_pairing(k1, t1, x1) * kernel_pairing(k2, t2, x2);
    }
};

TensorKernelForm tensor_hilbert_form();
TensorKernelForm zero_form();

// ---- truncation limits ---------------------------------------------------

// L^infty-normalized plateau cutoff at scale 2^k |s| around c(s), sampled on
// its own grid of `cells` cells.
GridFn cutoff_grid(const DyadicInterval& s, int k, std::size_t cells);

struct LimitSequence {
    std::vector<double> values;      // Λ at k = 1..kmax
    std::vector<double> differences; // |values[k+1] - values[k]|
    std::vector<double> ratios;      // differences[k+1] / differences[k]
    double value = 0.0;              // last element
    double max_ratio_tail(int from_k) const;
};

// Λ(T_{c(S)} D_{2^k|S1|, 2^k|S2|} Φ, f) for k = 1..kmax; f mean zero in each
// variable, supported in S. Throws if the marginals are not zero.
LimitSequence t1_limit(const TensorKernelForm& form, const Signal2D& f, const DyadicRectangle& s,
                       int kmax, std::size_t cutoff_cells = 4096);

// Λ(φ_{S1} ⊗ cutoff_k, ψ_{S1} ⊗ f) for a 1D mean-zero atom f supported in s2.
LimitSequence restricted_t1_limit(const TensorKernelForm& form, const GridFn& phi_s1,
                                  const GridFn& psi_s1, const DyadicInterval& s2, const GridFn& f,
                                  int kmax, std::size_t cutoff_cells = 4096);

// Lemma-4.3 style variant: Λ(cutoff_k ⊗ φ_{R2}, f ⊗ ψ_{S2}) with disjoint
// supports in the second coordinate; reports the geometry prefactor
// (|S2|/|R2|)^{1/2+δ} (diam(R2∪S2)/|R2|)^{-(1+δ)} alongside the sequence.
struct DisjointLimitResult {
    LimitSequence seq;
    double predicted_prefactor = 0.0;
};
DisjointLimitResult disjoint_restricted_t1_limit(const TensorKernelForm& form,
                                                 const GridFn& phi_r2, const GridFn& psi_s2,
                                                 const DyadicInterval& r2,
                                                 const DyadicInterval& s2,
                                                 const DyadicInterval& s1, const GridFn& f,
                                                 int kmax, std::size_t cutoff_cells = 4096);

// ---- bump decay experiment -----------------------------------------------

struct DecayRow {
    int e1 = 0, e2 = 0;
    std::int64_t m1 = 1, m2 = 1;
    double value = 0.0;
    bool ok = true;
};

struct DecayFit {
    double ecc_slope1 = 0.0, ecc_slope2 = 0.0;   // -d log2 |Λ| / d e, per axis
    double dist_slope1 = 0.0, dist_slope2 = 0.0; // d ln |Λ| / d ln m, per axis
    double r2_axis1 = 0.0, r2_axis2 = 0.0;
};

struct DecayTable {
    std::vector<DecayRow> rows;
    DecayFit fit;
};

// |Λ(ψ_R, ψ_S)| over the (e, m) grid for mean-zero bumps; R is the unit
// rectangle, S sits to the right at band m with |S_i| = 2^{-e_i} |R_i|.
DecayTable bump_decay_experiment(const TensorKernelForm& form, const std::vector<int>& es,
                                 const std::vector<std::int64_t>& ms,
                                 std::size_t bump_cells = 1024);

// Least-squares fit of ln v = a + b1 u1 + b2 u2 with coefficient of
// determination; shared by the decay fits and tests.
struct PlaneFit {
    double a = 0.0, b1 = 0.0, b2 = 0.0, r2 = 0.0;
};
PlaneFit fit_plane(const std::vector<double>& u1, const std::vector<double>& u2,
                   const std::vector<double>& val);

} // namespace dyadlab
