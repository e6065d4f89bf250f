#pragma once

#include "dyadlab/haar.hpp"
#include "dyadlab/signal.hpp"

namespace dyadlab {

// Exact grid L^p norm; p = infinity gives the sup. Throws for p < 1.
double lp_norm(const Signal1D& f, double p);
double lp_norm(const Signal2D& f, double p);

// sup over dyadic I inside the window of (|I|^{-1} Σ_{J ⊆ I} <f,h_J>^2)^{1/2}.
double dyadic_bmo_norm(const Signal1D& f);
double dyadic_bmo_norm(const HaarCoeffs1D& c);

// Lower-bound estimator for the product BMO norm: max over candidate open
// sets Ω of (|Ω|^{-1} Σ_{R ⊆ Ω} <f,h_R>^2)^{1/2}. Candidates are all single
// dyadic rectangles plus greedy unions of up to `budget` rectangles ranked by
// coefficient mass. A declared lower bound, not the exact norm.
double product_bmo_lowerbound(const Signal2D& f, int budget);

// Same estimator with candidates restricted to single rectangles.
double rect_bmo_norm(const Signal2D& f);

// Function on 2R with vanishing marginals in both variables and rescaled
// derivative sup bounds: ||∂^a ∂^b f|| <= |I|^{-a} |J|^{-b} |R|^{-1/2} for
// a, b in {0, 1}.
struct PreAtom2D {
    DyadicRectangle rectangle;
    Signal2D values;

    // Largest ratio of measured derivative sup to its bound (<= 1 means the
    // pre-atom conditions hold; slack = 1 / ratio).
    double derivative_bound_ratio() const;
    double max_marginal_mean() const;
};

// Builds a pre-atom as a rescaled tensor of mean-zero smooth profiles.
// The window must resolve 2R with at least 16 cells per side of R.
PreAtom2D make_preatom(const DyadicRectangle& r, const DyadicRectangle& window, int res1,
                       int res2);

} // namespace dyadlab
