#pragma once

#include <map>

#include "dyadlab/signal.hpp"

namespace dyadlab {

// Haar analysis data for a 1D signal: the coefficient of the normalized
// window indicator |W|^{-1/2} χ_W plus a sparse map of detail coefficients
// <f, h_I> over the dyadic intervals strictly inside the window down to cell
// scale. Plancherel holds exactly: coarse^2 + Σ detail^2 = ||f||_2^2.
struct HaarCoeffs1D {
    DyadicInterval window;
    int res = 0;
    double coarse = 0.0;
    std::map<DyadicInterval, double> detail;

    double detail_l2_sq() const {
        double s = 0.0;
        for (const auto& [k, c] : detail) s += c * c;
        return s;
    }
};

// 2D tensor-Haar data. The tensor system over a rectangle window needs four
// blocks: coarse ⊗ coarse, detail ⊗ coarse, coarse ⊗ detail and
// detail ⊗ detail; all four enter the exact Plancherel identity.
struct HaarCoeffs2D {
    DyadicRectangle window;
    int res1 = 0, res2 = 0;
    double coarse = 0.0;
    std::map<DyadicInterval, double> half1; // <f, h_I ⊗ u_{W2}>
    std::map<DyadicInterval, double> half2; // <f, u_{W1} ⊗ h_I>
    std::map<DyadicRectangle, double> detail;

    double total_l2_sq() const;
};

HaarCoeffs1D haar_forward(const Signal1D& f);
Signal1D haar_inverse(const HaarCoeffs1D& c);
HaarCoeffs2D haar_forward(const Signal2D& f);
Signal2D haar_inverse(const HaarCoeffs2D& c);

// Dense coefficient layout used by bilinear forms. 1D basis index: 0 is the
// coarse function u_W = |W|^{-1/2} χ_W; index 2^d + p is the Haar function on
// the depth-d interval at position p. The map signal -> coefficient vector is
// orthogonal.
struct Basis1D {
    DyadicInterval window;
    int res = 0;

    std::size_t size() const { return std::size_t{1} << res; }
    // Index 0 is not an interval; valid detail indices are 1 .. 2^res - 1.
    DyadicInterval interval_of(std::size_t idx) const;
    std::size_t index_of(const DyadicInterval& i) const;
    Signal1D function_of(std::size_t idx) const;
    // Average of basis function idx over a dyadic interval i inside the
    // window (exact; 0 when the function has mean zero on i).
    double average_on(std::size_t idx, const DyadicInterval& i) const;
};

std::vector<double> coeff_vector(const HaarCoeffs1D& c);
std::vector<double> coeff_vector(const HaarCoeffs2D& c); // index = i1 * n2 + i2

// Serial reference implementations: direct inner products against explicitly
// constructed basis functions. Kept as the testing oracle for the fast
// pyramid transforms.
namespace ref {
HaarCoeffs1D haar_forward(const Signal1D& f);
Signal1D haar_inverse(const HaarCoeffs1D& c);
HaarCoeffs2D haar_forward(const Signal2D& f);
} // namespace ref

} // namespace dyadlab
