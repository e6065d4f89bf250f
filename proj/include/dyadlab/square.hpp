#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "dyadlab/haar.hpp"
#include "dyadlab/step_fn.hpp"

namespace dyadlab {

// Scale shift k and translation band n together with a materialized selector:
// for every interval I in the build range, sel[I] is the chosen J in the
// class family(I, k, n) (clipped to the ambient range). The choice is a pure
// function of I. Intervals whose clipped family is empty are absent.
struct ShiftSpec {
    int k = 0;
    std::int64_t n = 1;
    std::map<DyadicInterval, DyadicInterval> sel;

    const DyadicInterval* target(const DyadicInterval& i) const {
        auto it = sel.find(i);
        return it == sel.end() ? nullptr : &it->second;
    }
    // Intervals mapped to a target no other interval shares.
    std::set<DyadicInterval> injective_domain() const;
    // Transposed map restricted to the injective domain; k flips sign.
    ShiftSpec inverse() const;
};

// Selector factories over all detail intervals of a window/resolution pair.
ShiftSpec leftmost_selector(int k, std::int64_t n, const DyadicInterval& window, int res,
                            const ClipRange& ambient);
ShiftSpec seeded_selector(int k, std::int64_t n, const DyadicInterval& window, int res,
                          const ClipRange& ambient, std::uint64_t seed);

// Classical square function S f = (Σ_I <f,h_I>^2 χ_I / |I|)^{1/2}, exact on
// the grid of f.
Signal1D square_fn(const Signal1D& f);
StepFn square_fn(const DetailExpansion1D& f);

// Modified square function: coefficient mass of I relocated to the selected
// J(I). Throws when a coefficient above `tol` has no selected target.
StepFn modified_square_fn(const HaarCoeffs1D& c, const ShiftSpec& spec, double tol = 0.0);
StepFn modified_square_fn(const Signal1D& f, const ShiftSpec& spec, double tol = 0.0);

// Martingale shift T f = Σ_I <f,h_I> h_{J(I)}; the coarse part is dropped
// (identity selector gives the projection onto the detail span).
DetailExpansion1D shift_op(const HaarCoeffs1D& c, const ShiftSpec& spec, double tol = 0.0);
DetailExpansion1D shift_op(const Signal1D& f, const ShiftSpec& spec, double tol = 0.0);

// Full-class modified square function S_{k,n} (sums over every J in the
// class, not a selected one), returned as an exact step function.
StepFn class_square_fn(const HaarCoeffs1D& c, int k, std::int64_t n, const ClipRange& ambient);

// ---- two-parameter versions -------------------------------------------

// SS f = (Σ_R <f,h_R>^2 χ_R / |R|)^{1/2}, exact on the grid of f.
Signal2D double_square_fn(const Signal2D& f);

DetailExpansion2D double_shift_op(const HaarCoeffs2D& c, const ShiftSpec& s1,
                                  const ShiftSpec& s2, double tol = 0.0);

// Sum of separable boxes w_R χ_{A(R)} ⊗ χ_{B(R)}; the exact L^2/L^4 norms
// avoid materializing any grid.
struct BoxSum2D {
    struct Term {
        DyadicInterval a, b;
        double w = 0.0;
    };
    std::vector<Term> terms;

    double l2_norm() const; // of sqrt of the sum, i.e. (∫ Σ)^{1/2}
    double l4_norm() const; // of sqrt of the sum, i.e. (∫ (Σ)^2)^{1/4}
    double value_at(double x1, double x2) const;
};

// SS_{k,n} with selected targets per axis: Σ_R c_R^2 χ_{J1(R1)}⊗χ_{J2(R2)} /
// (|J1||J2|), as a box sum whose sqrt is the modified double square function.
BoxSum2D double_modified_square_fn(const HaarCoeffs2D& c, const ShiftSpec& s1,
                                   const ShiftSpec& s2, double tol = 0.0);
// Full-class SS_{k,n}.
BoxSum2D double_class_square_fn(const HaarCoeffs2D& c, int k1, int k2, std::int64_t n1,
                                std::int64_t n2, const ClipRect& ambient);

// ---- operator-norm measurement ------------------------------------------

// ||op f||_p is supplied by the callable (p is baked in); the harness returns
// the sup over a deterministic test set of ||op f||_p / ||f||_p. The test set
// mixes Haar-sparse signals, single bumps and CZ-style spikes.
struct OpNormResult {
    double norm = 0.0;
    std::uint64_t argmax_trial = 0;
    std::string argmax_kind;
};

OpNormResult empirical_opnorm(const std::function<double(const Signal1D&)>& op_p_norm, double p,
                              int trials, std::uint64_t seed, const DyadicInterval& window,
                              int res);

// Deterministic test-signal generator shared by the experiments; kind is
// "sparse", "bump" or "spike".
Signal1D make_test_signal(const DyadicInterval& window, int res, std::uint64_t seed,
                          std::string* kind = nullptr);

namespace ref {
// Definition-literal square functions (per-point ancestor walks); oracles for
// the sweep-line implementations.
Signal1D square_fn(const Signal1D& f);
Signal2D double_square_fn(const Signal2D& f);
} // namespace ref

} // namespace dyadlab
