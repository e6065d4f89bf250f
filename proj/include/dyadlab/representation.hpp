#pragma once

#include "dyadlab/forms.hpp"

namespace dyadlab {

// Coordinatewise relation of the f-side interval against the g-side one for
// an intersecting pair: equal, strictly inside, or strictly containing.
enum class Rel { Eq = 0, Inside = 1, Contains = 2 };

struct NineTermClass {
    double direct = 0.0;     // Σ f_R g_S Λ(h_R, h_S) over the class pairs
    double lemma_form = 0.0; // the closed form the representation lemma gives
    std::vector<std::tuple<DyadicRectangle, DyadicRectangle, double>> terms;
};

// The nine groups of intersecting pairs (R, S): diagonal, the four
// constant-on-the-smaller-rectangle groups T(1), T*(1), T1(1), T1*(1), and
// the four half paraproduct groups. Their direct sums always add up to
// <T f, g> on the detail span.
struct NineTermDecomposition {
    NineTermClass cls[3][3]; // [rel1][rel2]
    double bilinear_total = 0.0;

    double total() const {
        double s = 0.0;
        for (const auto& row : cls)
            for (const auto& c : row) s += c.direct;
        return s;
    }
    double max_class_mismatch() const {
        double m = 0.0;
        for (const auto& row : cls)
            for (const auto& c : row) m = std::max(m, std::abs(c.direct - c.lemma_form));
        return m;
    }
    const NineTermClass& diagonal() const { return cls[0][0]; }
    const NineTermClass& t1star_class() const { return cls[1][1]; }
    const NineTermClass& t1_class() const { return cls[2][2]; }
    const NineTermClass& t11_class() const { return cls[1][2]; }
    const NineTermClass& t11star_class() const { return cls[2][1]; }
    const NineTermClass& half_t_axis1() const { return cls[0][2]; }      // R1=S1, S2 ⊊ R2
    const NineTermClass& half_tstar_axis1() const { return cls[0][1]; }  // R1=S1, R2 ⊊ S2
    const NineTermClass& half_t_axis2() const { return cls[2][0]; }      // S1 ⊊ R1, R2=S2
    const NineTermClass& half_tstar_axis2() const { return cls[1][0]; }  // R1 ⊊ S1, R2=S2
};

// Classifies every intersecting detail pair, accumulates the class sums and
// their lemma counterparts, and records <T f, g> over the detail spans of f
// and g. Throws when the form is not support-preserving.
NineTermDecomposition haar_representation(const FiniteBilinearForm& t, const Signal2D& f,
                                          const Signal2D& g);

// Random form for which every one of the nine lemma identities holds exactly:
// entries are synthesized from independent data for the diagonal, the four
// "(1)" classes and the four half classes, following the structure a local
// operator imposes on its Haar matrix.
FiniteBilinearForm random_local_form(const TensorBasis& basis, std::uint64_t seed);

// Same synthesis with only the R1 = S1, S2 ⊊ R2 family populated.
FiniteBilinearForm single_class_form(const TensorBasis& basis, std::uint64_t seed);

} // namespace dyadlab
