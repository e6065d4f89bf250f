#pragma once

#include <map>

#include "dyadlab/forms.hpp"

namespace dyadlab {

// Detail coefficients of a symbol on the truncated rectangle grid.
using RectCoeffs = std::map<DyadicRectangle, double>;

RectCoeffs detail_coeffs(const Signal2D& b, double tol = 1e-12);

// Classical paraproduct Λ_b(f, g) = Σ_R <b,h_R> <f,φ_R> <g,h_R> with
// φ_R = |R|^{-1} χ_R. Reproduces Λ_b(1, ·) = b and vanishes on the other
// special slots. Requires a detail-only symbol.
FiniteBilinearForm paraproduct_classical(const Signal2D& b, const TensorBasis& basis);
FiniteBilinearForm paraproduct_classical(const RectCoeffs& b, const TensorBasis& basis);

// Mixed paraproduct Λ_b(f,g) = Σ_R <b,h_R> <f, φ_{R1}⊗h_{R2}> <g, h_{R1}⊗φ_{R2}>.
// Reproduces Λ_b(1⊗f2, g1⊗1) = <b, g1⊗f2>.
FiniteBilinearForm paraproduct_mixed(const Signal2D& b, const TensorBasis& basis);
FiniteBilinearForm paraproduct_mixed(const RectCoeffs& b, const TensorBasis& basis);

// Transposed variants used by the reduction (reproduction on the mirror
// slots Λ(·, 1) and Λ(f1⊗1, 1⊗g2)).
FiniteBilinearForm paraproduct_classical_t(const RectCoeffs& b, const TensorBasis& basis);
FiniteBilinearForm paraproduct_mixed_t(const RectCoeffs& b, const TensorBasis& basis);

// BMO(R)-valued sequence indexed by interval pairs on one axis; each entry is
// a function of the other variable held as 1D Haar data.
struct BmoSequence {
    int axis = 2;       // indexing axis (2: pairs (R2,S2), entries in x1)
    double delta = 1.0; // decay exponent of the hypothesis bound
    std::map<std::pair<DyadicInterval, DyadicInterval>, HaarCoeffs1D> entries;

    static double bound(const DyadicInterval& r, const DyadicInterval& s, double delta);
};

struct BmoSequenceReport {
    struct Row {
        DyadicInterval r, s;
        double norm = 0.0;
        double bound = 0.0;
        double ratio = 0.0;
    };
    std::vector<Row> rows;
    double max_ratio = 0.0;
};
BmoSequenceReport bmo_sequence_check(const BmoSequence& b);

// Third-type paraproduct (axis-2 indexed): Λ_b(f,g) = Σ_{R2,S2} Σ_{R1}
// <b_{R2,S2}, h_{R1}> <f, φ_{R1}⊗h_{R2}> <g, h_{R1}⊗h_{S2}>. Reproduces
// Λ_b(1⊗ψ_{R2}, ψ⊗ψ_{S2}) = <b_{R2,S2}, ψ> and vanishes on the seven
// remaining special slots. Throws when the decay hypothesis fails beyond
// `hypothesis_tol` (set to infinity to skip the check).
FiniteBilinearForm paraproduct_third(const BmoSequence& b, const TensorBasis& basis,
                                     double hypothesis_tol);

// The four slot variants used in the reduction; slot numbers follow the
// order in which the remainder families are collected: 5 = (ψ_{R1}⊗1,
// ψ_{S1}⊗ψ), 6 = (1⊗ψ_{R2}, ψ⊗ψ_{S2}), 7 = (ψ_{R1}⊗ψ, ψ_{S1}⊗1),
// 8 = (ψ⊗ψ_{R2}, 1⊗ψ_{S2}).
FiniteBilinearForm paraproduct_third_slot(const BmoSequence& b, const TensorBasis& basis,
                                          int slot);

// Maxima of the eight special cancellation families evaluated on Haar test
// functions: Λ(1,h_R), Λ(h_R,1), Λ(h⊗1, 1⊗h), Λ(1⊗h, h⊗1), and the four
// restricted families Λ(h_{R1}⊗1, h_{S1}⊗h_I), ...
struct CancellationResiduals {
    double family[8] = {0, 0, 0, 0, 0, 0, 0, 0};
    double max() const {
        double m = 0.0;
        for (double v : family) m = std::max(m, v);
        return m;
    }
};
CancellationResiduals cancellation_residuals(const FiniteBilinearForm& l);

// Reduction to special cancellation: subtracts two classical, two mixed and
// four third-type paraproducts built from the form's own special values, in
// that order. The remainder satisfies all eight cancellation families
// exactly and the reduction is idempotent.
struct ReductionResult {
    FiniteBilinearForm reduced;
    RectCoeffs b1, b2, b3, b4;
    BmoSequence b5, b6, b7, b8;
    FiniteBilinearForm p1, p2, p3, p4, t5, t6, t7, t8;
};
ReductionResult reduce_to_special_cancellation(const FiniteBilinearForm& l);

} // namespace dyadlab
