#include "doctest.h"

#include <stdexcept>

#include "dyadlab/norms.hpp"
#include "dyadlab/paraproducts.hpp"
#include "dyadlab/representation.hpp"
#include "dyadlab/rng.hpp"

using namespace dyadlab;

namespace {

Signal2D random_signal2(const TensorBasis& basis, std::uint64_t seed) {
    Signal2D f(basis.window(), basis.b1.res, basis.b2.res);
    Rng rng(seed);
    for (double& x : f.v) x = rng.normal();
    return f;
}

Signal1D random_signal1(const Basis1D& b, std::uint64_t seed) {
    Signal1D f(b.window, b.res);
    Rng rng(seed);
    for (double& x : f.v) x = rng.normal();
    return f;
}

// detail-only (mean zero per variable) random symbol
Signal2D random_symbol(const TensorBasis& basis, std::uint64_t seed) {
    HaarCoeffs2D c;
    c.window = basis.window();
    c.res1 = basis.b1.res;
    c.res2 = basis.b2.res;
    Rng rng(seed);
    for (std::size_t a1 = 1; a1 < basis.n1(); ++a1)
        for (std::size_t a2 = 1; a2 < basis.n2(); ++a2)
            c.detail[{basis.b1.interval_of(a1), basis.b2.interval_of(a2)}] = rng.normal();
    return haar_inverse(c);
}

Eigen::VectorXd detail_unit(const TensorBasis& basis, std::size_t a1, std::size_t a2) {
    return basis.unit(basis.flat(a1, a2));
}

} // namespace

TEST_CASE("classical paraproduct identities") {
    const TensorBasis basis({{0, 0}, {0, 0}}, 3, 3);
    const DyadicRectangle r0{{1, 1}, {2, 0}};
    const Signal2D b = haar_inverse([&] {
        HaarCoeffs2D c;
        c.window = basis.window();
        c.res1 = 3;
        c.res2 = 3;
        c.detail[r0] = 1.0;
        return c;
    }());
    const FiniteBilinearForm form = paraproduct_classical(b, basis);

    // reproduction: Λ_b(1, h_{R0}) = 1
    CHECK(form.eval_vec(basis.one(), basis.unit(basis.index_of(r0))) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // Λ_b(1, g) = <g, b> for random g
    const Signal2D g = random_signal2(basis, 3);
    CHECK(form.eval_vec(basis.one(), basis.coeffs(g)) == doctest::Approx(g.inner(b)));

    // vanishing identities on the truncated grid, exact
    const Signal2D f = random_signal2(basis, 5);
    CHECK(form.eval_vec(basis.coeffs(f), basis.one()) == 0.0);
    for (std::size_t a1 = 1; a1 < basis.n1(); ++a1)
        for (std::size_t a2 = 1; a2 < basis.n2(); ++a2) {
            CHECK(form.eval_vec(detail_unit(basis, a1, a2), basis.one()) == 0.0);
            // Λ(ψ1 ⊗ 1, 1 ⊗ ψ2) = Λ(1 ⊗ ψ1, ψ2 ⊗ 1) = 0
            CHECK(form.eval_vec(basis.half_haar(1, basis.b1.interval_of(a1)),
                                basis.half_haar(2, basis.b2.interval_of(a2))) == 0.0);
            CHECK(form.eval_vec(basis.half_haar(2, basis.b2.interval_of(a2)),
                                basis.half_haar(1, basis.b1.interval_of(a1))) == 0.0);
        }

    // non-detail symbols are rejected
    Signal2D bad = b;
    for (double& x : bad.v) x += 0.25;
    CHECK_THROWS_AS((void)paraproduct_classical(bad, basis), std::invalid_argument);
}

TEST_CASE("classical paraproduct probe boundedness") {
    const TensorBasis basis({{0, 0}, {0, 0}}, 4, 4);
    const Signal2D b = random_symbol(basis, 7);
    const FiniteBilinearForm form = paraproduct_classical(b, basis);
    const double proxy = product_bmo_lowerbound(b, 8);
    REQUIRE(proxy > 0.0);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        const Signal2D f = random_signal2(basis, mix_seed(11, t, 0));
        const Signal2D g = random_signal2(basis, mix_seed(11, t, 1));
        worst = std::max(worst, std::abs(form.eval(f, g)) /
                                    (proxy * f.lp_norm(4.0) * g.lp_norm(4.0 / 3.0)));
    }
    CHECK(worst <= 16.0); // single fitted constant across the probe set
}

TEST_CASE("mixed paraproduct identities") {
    const TensorBasis basis({{0, 0}, {0, 0}}, 3, 3);
    const DyadicRectangle r0{{1, 1}, {2, 0}};
    const Signal2D b = haar_inverse([&] {
        HaarCoeffs2D c;
        c.window = basis.window();
        c.res1 = 3;
        c.res2 = 3;
        c.detail[r0] = 1.0;
        return c;
    }());
    const FiniteBilinearForm form = paraproduct_mixed(b, basis);

    // reproduction on the single-term symbol
    CHECK(form.eval_vec(basis.half_haar(2, r0.i2), basis.half_haar(1, r0.i1)) ==
          doctest::Approx(1.0).epsilon(1e-12));

    // reproduction against the grid pairing on random 1D inputs
    const Signal1D f2 = random_signal1(basis.b2, 13);
    const Signal1D g1 = random_signal1(basis.b1, 17);
    Signal1D one1(basis.b1.window, basis.b1.res), one2(basis.b2.window, basis.b2.res);
    for (double& x : one1.v) x = 1.0;
    for (double& x : one2.v) x = 1.0;
    CHECK(form.eval(tensor(one1, f2), tensor(g1, one2)) ==
          doctest::Approx(b.inner(tensor(g1, f2))));

    // vanishing identities
    const Signal2D f = random_signal2(basis, 19);
    CHECK(form.eval_vec(basis.one(), basis.coeffs(f)) == 0.0);
    CHECK(form.eval_vec(basis.coeffs(f), basis.one()) == 0.0);
    const Signal1D g2 = random_signal1(basis.b2, 23);
    const Signal1D f1 = random_signal1(basis.b1, 29);
    CHECK(form.eval(tensor(f1, one2), tensor(one1, g2)) == 0.0);

    // probe boundedness with the M1 S2 / S1 M2 control shape
    const Signal2D bb = random_symbol(basis, 31);
    const FiniteBilinearForm big = paraproduct_mixed(bb, basis);
    const double proxy = product_bmo_lowerbound(bb, 8);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        const Signal2D u = random_signal2(basis, mix_seed(37, t, 0));
        const Signal2D v = random_signal2(basis, mix_seed(37, t, 1));
        worst = std::max(worst, std::abs(big.eval(u, v)) /
                                    (proxy * u.lp_norm(4.0) * v.lp_norm(4.0 / 3.0)));
    }
    CHECK(worst <= 16.0);
}

TEST_CASE("bmo sequence checker") {
    BmoSequence b;
    b.axis = 2;
    b.delta = 1.0;
    const Basis1D axis1{{0, 0}, 4};

    // zero sequence
    CHECK(bmo_sequence_check(b).max_ratio == 0.0);

    // single entry normalized to sit exactly at the bound
    const DyadicInterval r2{1, 0}, s2{2, 3};
    const DyadicInterval i0{2, 1};
    HaarCoeffs1D entry;
    entry.window = axis1.window;
    entry.res = axis1.res;
    entry.detail[i0] = 1.0;
    // dyadic BMO norm of a single unit coefficient at I is |I|^{-1/2}
    const double norm0 = 1.0 / std::sqrt(i0.length());
    const double bound = BmoSequence::bound(r2, s2, 1.0);
    entry.detail[i0] = bound / norm0;
    b.entries[{r2, s2}] = entry;
    const auto rep = bmo_sequence_check(b);
    CHECK(std::abs(rep.max_ratio - 1.0) <= 1e-12);
}

TEST_CASE("third paraproduct identities") {
    const TensorBasis basis({{0, 0}, {0, 0}}, 3, 3);
    const DyadicInterval r2{1, 1}, s2{2, 0}, i0{1, 0};
    BmoSequence b;
    b.axis = 2;
    b.delta = 1.0;
    HaarCoeffs1D entry;
    entry.window = basis.b1.window;
    entry.res = basis.b1.res;
    entry.detail[i0] = 1.0;
    b.entries[{r2, s2}] = entry;
    const FiniteBilinearForm form =
        paraproduct_third(b, basis, std::numeric_limits<double>::infinity());

    // reproduction: Λ_b(1 ⊗ h_{R2}, h_{I0} ⊗ h_{S2}) = 1
    CHECK(form.eval_vec(basis.half_haar(2, r2),
                        basis.unit(basis.flat(basis.b1.index_of(i0), basis.b2.index_of(s2)))) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // ... and = <b_{R2,S2}, ψ> for a random mean-zero ψ in the first slot
    {
        Signal1D psi = random_signal1(basis.b1, 41);
        const double mean = psi.integral() / psi.window.length();
        for (double& x : psi.v) x -= mean;
        const HaarCoeffs1D cpsi = haar_forward(psi);
        Eigen::VectorXd gvec = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
        for (const auto& [k, v] : cpsi.detail)
            gvec[static_cast<Eigen::Index>(basis.flat(basis.b1.index_of(k),
                                                      basis.b2.index_of(s2)))] = v;
        const double want = cpsi.detail.count(i0) ? cpsi.detail.at(i0) : 0.0;
        CHECK(form.eval_vec(basis.half_haar(2, r2), gvec) == doctest::Approx(want));
    }

    // the seven vanishing identities on the truncated grid
    const Signal2D f = random_signal2(basis, 43);
    const Signal2D g = random_signal2(basis, 47);
    const Signal1D f1 = random_signal1(basis.b1, 53), g1 = random_signal1(basis.b1, 59);
    const Signal1D f2 = random_signal1(basis.b2, 61), g2 = random_signal1(basis.b2, 67);
    Signal1D one1(basis.b1.window, basis.b1.res), one2(basis.b2.window, basis.b2.res);
    for (double& x : one1.v) x = 1.0;
    for (double& x : one2.v) x = 1.0;
    CHECK(form.eval_vec(basis.one(), basis.coeffs(g)) == 0.0);             // Λ(1⊗1, ·)
    CHECK(form.eval_vec(basis.coeffs(f), basis.one()) == 0.0);             // Λ(·, 1⊗1)
    CHECK(form.eval(tensor(f1, one2), tensor(one1, g2)) == 0.0);           // Λ(·⊗1, 1⊗·)
    CHECK(form.eval(tensor(one1, f2), tensor(g1, one2)) == 0.0);           // Λ(1⊗·, ·⊗1)
    CHECK(form.eval(tensor(f1, one2), g) == 0.0);                          // Λ(·⊗1, ·⊗·)
    CHECK(form.eval(f, tensor(one1, g2)) == 0.0);                          // Λ(·⊗·, 1⊗·)
    CHECK(form.eval(f, tensor(g1, one2)) == 0.0);                          // Λ(·⊗·, ·⊗1)

    // hypothesis checker gates construction
    BmoSequence fat = b;
    fat.entries[{r2, s2}].detail[i0] = 1e6;
    CHECK_THROWS_AS((void)paraproduct_third(fat, basis, 10.0), std::invalid_argument);
}

TEST_CASE("third paraproduct probe norm is stable under grid refinement") {
    // the single-entry form is rank one, Λ(f,g) = <f,u><g,v> with
    // u = φ_{I0} ⊗ h_{R2}, v = h_{I0} ⊗ h_{S2}; the L4 x L4/3 probe constant
    // is attained at the dual pair f = sign(u)|u|^{1/3}, g = sign(v)|v|^3.
    // Under grid refinement the attained constant converges, so the two
    // resolutions agree within a tight band.
    double norms[2];
    int idx = 0;
    for (int res : {4, 5}) {
        const TensorBasis basis({{0, 0}, {0, 0}}, res, res);
        const DyadicInterval r2{1, 1}, s2{2, 0}, i0{1, 0};
        BmoSequence b;
        b.axis = 2;
        b.delta = 1.0;
        HaarCoeffs1D entry;
        entry.window = basis.b1.window;
        entry.res = basis.b1.res;
        entry.detail[i0] = 1.0;
        b.entries[{r2, s2}] = entry;
        const FiniteBilinearForm form =
            paraproduct_third(b, basis, std::numeric_limits<double>::infinity());

        Signal1D phi_i0 = indicator(basis.b1.window, res, i0);
        phi_i0 *= 1.0 / i0.length();
        const Signal2D u = tensor(phi_i0, haar_function(basis.b2.window, res, r2));
        const Signal2D v = tensor(haar_function(basis.b1.window, res, i0),
                                  haar_function(basis.b2.window, res, s2));
        Signal2D f = u, g = v;
        for (double& x : f.v) x = std::copysign(std::pow(std::abs(x), 1.0 / 3.0), x);
        for (double& x : g.v) x = std::copysign(std::pow(std::abs(x), 3.0), x);
        double worst = std::abs(form.eval(f, g)) / (f.lp_norm(4.0) * g.lp_norm(4.0 / 3.0));
        for (int t = 0; t < 40; ++t) {
            Signal2D rf(basis.window(), res, res), rg(basis.window(), res, res);
            Rng rng(mix_seed(71, t));
            for (double& x : rf.v) x = rng.normal();
            for (double& x : rg.v) x = rng.normal();
            worst = std::max(worst, std::abs(form.eval(rf, rg)) /
                                        (rf.lp_norm(4.0) * rg.lp_norm(4.0 / 3.0)));
        }
        norms[idx++] = worst;
    }
    CHECK(norms[0] > 0.0);
    CHECK(std::abs(norms[1] - norms[0]) <= 0.25 * norms[0]);
}

TEST_CASE("reduction: fixed point on an already special-cancellation form") {
    const TensorBasis basis({{0, 0}, {0, 0}}, 3, 3);
    // a diagonal Haar multiplier satisfies all eight families
    FiniteBilinearForm l(basis);
    Rng rng(73);
    for (std::size_t a = 0; a < basis.size(); ++a)
        if (basis.is_detail_rect(a))
            l.m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)) = rng.normal();
    CHECK(cancellation_residuals(l).max() == 0.0);

    const ReductionResult res = reduce_to_special_cancellation(l);
    CHECK(res.b1.empty());
    CHECK(res.b2.empty());
    CHECK(res.b3.empty());
    CHECK(res.b4.empty());
    CHECK(res.b5.entries.empty());
    CHECK(res.b6.entries.empty());
    CHECK(res.b7.entries.empty());
    CHECK(res.b8.entries.empty());
    CHECK((res.reduced.m - l.m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("reduction round-trips a known classical paraproduct") {
    const TensorBasis basis({{0, 0}, {0, 0}}, 3, 3);
    const Signal2D b = random_symbol(basis, 79);
    const RectCoeffs bc = detail_coeffs(b);
    const FiniteBilinearForm form = paraproduct_classical(bc, basis);
    const ReductionResult res = reduce_to_special_cancellation(form);
    for (const auto& [r, v] : bc) {
        REQUIRE(res.b1.count(r));
        CHECK(std::abs(res.b1.at(r) - v) <= 1e-12 * std::max(1.0, std::abs(v)));
    }
    // remainder vanishes on a probe set
    for (int t = 0; t < 20; ++t) {
        const Signal2D f = random_signal2(basis, mix_seed(83, t, 0));
        const Signal2D g = random_signal2(basis, mix_seed(83, t, 1));
        CHECK(std::abs(res.reduced.eval(f, g)) <= 1e-10);
    }
}

TEST_CASE("reduction kills all eight families and is idempotent") {
    const TensorBasis basis({{0, 0}, {0, 0}}, 3, 3);
    for (int which = 0; which < 5; ++which) {
        const FiniteBilinearForm l =
            random_support_preserving_form(basis, mix_seed(89, which));
        const ReductionResult res = reduce_to_special_cancellation(l);
        CHECK(cancellation_residuals(res.reduced).max() <= 1e-10);

        const ReductionResult twice = reduce_to_special_cancellation(res.reduced);
        CHECK((twice.reduced.m - res.reduced.m).cwiseAbs().maxCoeff() <= 1e-12);

        // hypothesis of the third-type lemma holds for the generated
        // sequences (fromWBtoBMO shape) on this random local model
        // -- checked for the kernel-backed case in the dedicated test below
    }
}

TEST_CASE("bmo sequences from a smooth tensor kernel satisfy the decay hypothesis") {
    const TensorBasis basis({{0, 0}, {0, 0}}, 4, 4);
    const ProductKernel k = kernel_from_registry("smooth_tensor", 1.0 / 16.0);
    const FiniteBilinearForm form = kernel_matrix_form(k, basis);
    const ReductionResult res = reduce_to_special_cancellation(form);

    for (const BmoSequence* seq : {&res.b5, &res.b6, &res.b7, &res.b8}) {
        BmoSequence copy = *seq;
        copy.delta = 1.0;
        const auto rep = bmo_sequence_check(copy);
        CHECK(rep.max_ratio <= 10.0);
    }
}
