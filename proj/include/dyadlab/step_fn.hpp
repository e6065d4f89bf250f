#pragma once

#include <map>
#include <vector>

#include "dyadlab/haar.hpp"
#include "dyadlab/signal.hpp"

namespace dyadlab {

// Piecewise-constant function on the line given by breakpoints b_0 < ... < b_n
// and values on the open pieces (b_i, b_{i+1}); zero outside [b_0, b_n).
// Built by sweep-line from weighted interval indicators, so norms, level sets
// and pointwise comparisons are exact.
class StepFn {
  public:
    StepFn() = default;

    // Σ w_k χ_{I_k}; intervals may overlap arbitrarily.
    static StepFn from_boxes(const std::vector<std::pair<DyadicInterval, double>>& boxes);

    std::size_t pieces() const { return val_.size(); }
    double breakpoint(std::size_t i) const { return bp_[i]; }
    double piece_value(std::size_t i) const { return val_[i]; }
    double piece_length(std::size_t i) const { return bp_[i + 1] - bp_[i]; }

    double value_at(double x) const;
    double lp_norm(double p) const;
    double sup_norm() const;
    // |{x : f(x) > lambda}|
    double superlevel_measure(double lambda) const;
    // sup over lambda > 0 of lambda * |{f > lambda}| (exact; attained at a
    // piece value).
    double weak_l1_sup() const;
    // max |f - g| over the merged piece arrangement.
    static double max_abs_difference(const StepFn& a, const StepFn& b);

    // Apply a function to each value (e.g. sqrt for square functions).
    template <class F> StepFn map(F&& fn) const {
        StepFn out = *this;
        for (double& v : out.val_) v = fn(v);
        return out;
    }

  private:
    std::vector<double> bp_;  // size n+1
    std::vector<double> val_; // size n
};

// Finite linear combination Σ c_J h_J of Haar functions on the standard
// dyadic grid of the line (no window attached). This is the natural home of
// shifted expansions whose keys may leave the original signal window.
struct DetailExpansion1D {
    std::map<DyadicInterval, double> coeff;

    double l2_norm_sq() const {
        double s = 0.0;
        for (const auto& [k, c] : coeff) s += c * c;
        return s;
    }
    // <Σ c_J h_J, g> with g extended by zero off its window.
    double inner(const Signal1D& g) const;
    // Square function S(Σ c_J h_J) as an exact step function.
    StepFn square_function() const;
    // Sample on a uniform dyadic grid (exact when every key is no finer than
    // the grid cells).
    Signal1D sample(const DyadicInterval& window, int res) const;
};

struct DetailExpansion2D {
    std::map<DyadicRectangle, double> coeff;

    double l2_norm_sq() const {
        double s = 0.0;
        for (const auto& [k, c] : coeff) s += c * c;
        return s;
    }
    double inner(const Signal2D& g) const;
    Signal2D sample(const DyadicRectangle& window, int res1, int res2) const;
};

} // namespace dyadlab
