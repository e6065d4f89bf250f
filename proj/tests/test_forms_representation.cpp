#include "doctest.h"

#include <stdexcept>

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

} // namespace

TEST_CASE("tensor basis bookkeeping") {
    const TensorBasis basis({{0, 0}, {1, 2}}, 3, 2);
    CHECK(basis.size() == 8 * 4);
    for (std::size_t a = 0; a < basis.size(); ++a) {
        if (!basis.is_detail_rect(a)) continue;
        CHECK(basis.index_of(basis.rect_of(a)) == a);
    }
    // coefficients are orthonormal coordinates: |coeffs|_2 = |f|_2
    const Signal2D f = random_signal2(basis, 3);
    CHECK(basis.coeffs(f).norm() == doctest::Approx(f.l2_norm()));
    // "1" evaluates correctly: <1, f> = integral of f
    CHECK(basis.one().dot(basis.coeffs(f)) == doctest::Approx(f.integral()));
}

TEST_CASE("adjoint forms are index permutations with the right algebra") {
    const TensorBasis basis({{0, 0}, {0, 0}}, 3, 3);
    FiniteBilinearForm l(basis);
    Rng rng(5);
    for (Eigen::Index r = 0; r < l.m.rows(); ++r)
        for (Eigen::Index c = 0; c < l.m.cols(); ++c) l.m(r, c) = rng.normal();

    const AdjointForms adj = adjoint_forms(l);

    // tensor slot-swap: Λ1(f1⊗f2, g1⊗g2) = Λ(g1⊗f2, f1⊗g2), on signals
    Signal1D f1(basis.b1.window, basis.b1.res), f2(basis.b2.window, basis.b2.res);
    Signal1D g1 = f1, g2 = f2;
    for (double& x : f1.v) x = rng.normal();
    for (double& x : f2.v) x = rng.normal();
    for (double& x : g1.v) x = rng.normal();
    for (double& x : g2.v) x = rng.normal();
    CHECK(adj.adj1.eval(tensor(f1, f2), tensor(g1, g2)) ==
          doctest::Approx(l.eval(tensor(g1, f2), tensor(f1, g2))));
    CHECK(adj.adj2.eval(tensor(f1, f2), tensor(g1, g2)) ==
          doctest::Approx(l.eval(tensor(f1, g2), tensor(g1, f2))));

    // involution and the T2 = T1* bookkeeping, exact as matrices
    const AdjointForms twice = adjoint_forms(adj.adj1);
    CHECK((twice.adj1.m - l.m).cwiseAbs().maxCoeff() == 0.0);
    CHECK((adj.adj2.m - adjoint_forms(adj.adj1).full.m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("boundedness asymmetry of a paraproduct-like form") {
    // rank-one form with a diagonal-concentrated (far-from-tensor) symbol:
    // Λ(f,g) = <f,u><g,u> with u spread over the axis diagonal. Its partial
    // adjoint reshuffles into a permutation-like matrix, so the probe norm
    // collapses by a factor sqrt(n).
    const TensorBasis basis({{0, 0}, {0, 0}}, 3, 3);
    Eigen::VectorXd u = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t a = 0; a < basis.n1(); ++a)
        u[static_cast<Eigen::Index>(basis.flat(a, a))] = 1.0;
    FiniteBilinearForm l(basis);
    l.m = u * u.transpose();

    const AdjointForms adj = adjoint_forms(l);
    auto probe_norm = [&](const FiniteBilinearForm& form) {
        // probe set: random pairs plus the top singular pair
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(form.m,
                                              Eigen::ComputeThinU | Eigen::ComputeThinV);
        double best = std::abs(form.eval_vec(svd.matrixU().col(0), svd.matrixV().col(0)));
        Rng rng(13);
        for (int t = 0; t < 40; ++t) {
            Eigen::VectorXd f(form.m.rows()), g(form.m.rows());
            for (Eigen::Index i2 = 0; i2 < f.size(); ++i2) {
                f[i2] = rng.normal();
                g[i2] = rng.normal();
            }
            best = std::max(best, std::abs(form.eval_vec(f, g)) / (f.norm() * g.norm()));
        }
        return best;
    };
    const double n0 = probe_norm(l);
    const double n1 = probe_norm(adj.adj1);
    CHECK(n0 > 2.0 * n1);
}

TEST_CASE("support preservation generator and checker") {
    const TensorBasis basis({{0, 0}, {0, 0}}, 3, 3);
    const FiniteBilinearForm t = random_support_preserving_form(basis, 7);
    CHECK(t.support_preserving(0.0));

    FiniteBilinearForm broken = t;
    // force a disjoint pair entry
    const DyadicRectangle r{{1, 0}, {1, 0}};
    const DyadicRectangle s{{1, 1}, {1, 1}};
    broken.m(static_cast<Eigen::Index>(basis.index_of(r)),
             static_cast<Eigen::Index>(basis.index_of(s))) = 1.0;
    CHECK(!broken.support_preserving(0.0));
    const Signal2D f = random_signal2(basis, 1);
    const Signal2D g = random_signal2(basis, 2);
    CHECK_THROWS_AS((void)haar_representation(broken, f, g), std::invalid_argument);
}

TEST_CASE("representation: identity operator hits only the diagonal") {
    const TensorBasis basis({{0, 0}, {0, 0}}, 3, 3);
    FiniteBilinearForm id(basis);
    for (std::size_t a = 0; a < basis.size(); ++a)
        if (basis.is_detail_rect(a))
            id.m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)) = 1.0;

    const Signal2D f = random_signal2(basis, 21);
    const Signal2D g = random_signal2(basis, 23);
    const NineTermDecomposition dec = haar_representation(id, f, g);

    // <f_detail, g_detail> recovered on the diagonal, all other classes zero
    double detail_inner = 0.0;
    const HaarCoeffs2D cf = haar_forward(f), cg = haar_forward(g);
    for (const auto& [r, v] : cf.detail) {
        auto it = cg.detail.find(r);
        if (it != cg.detail.end()) detail_inner += v * it->second;
    }
    CHECK(dec.diagonal().direct == doctest::Approx(detail_inner).epsilon(1e-12));
    CHECK(std::abs(dec.total() - dec.diagonal().direct) <= 1e-12);
    CHECK(std::abs(dec.total() - dec.bilinear_total) <= 1e-12);
    CHECK(dec.max_class_mismatch() <= 1e-12);
}

TEST_CASE("representation: totals match for random support-preserving forms") {
    const TensorBasis basis({{0, 0}, {0, 0}}, 4, 4);
    for (int which = 0; which < 4; ++which) {
        const FiniteBilinearForm t = random_support_preserving_form(basis, mix_seed(31, which));
        for (int trial = 0; trial < 10; ++trial) {
            const Signal2D f = random_signal2(basis, mix_seed(41, which, trial, 0));
            const Signal2D g = random_signal2(basis, mix_seed(41, which, trial, 1));
            const NineTermDecomposition dec = haar_representation(t, f, g);
            const double scale = std::max(1.0, std::abs(dec.bilinear_total));
            CHECK(std::abs(dec.total() - dec.bilinear_total) <= 1e-10 * scale);
        }
    }
}

TEST_CASE("representation: all nine lemma forms hold for synthesized local forms") {
    const TensorBasis basis({{0, 0}, {0, 0}}, 3, 3);
    for (int which = 0; which < 4; ++which) {
        const FiniteBilinearForm t = random_local_form(basis, mix_seed(51, which));
        CHECK(t.support_preserving(0.0));
        for (int trial = 0; trial < 5; ++trial) {
            const Signal2D f = random_signal2(basis, mix_seed(61, which, trial, 0));
            const Signal2D g = random_signal2(basis, mix_seed(61, which, trial, 1));
            const NineTermDecomposition dec = haar_representation(t, f, g);
            const double scale = std::max(1.0, std::abs(dec.bilinear_total));
            CHECK(std::abs(dec.total() - dec.bilinear_total) <= 1e-10 * scale);
            CHECK(dec.max_class_mismatch() <= 1e-10 * scale);
        }
    }
}

TEST_CASE("representation: single-class operator") {
    const TensorBasis basis({{0, 0}, {0, 0}}, 3, 3);
    const FiniteBilinearForm t = single_class_form(basis, 71);
    const Signal2D f = random_signal2(basis, 73);
    const Signal2D g = random_signal2(basis, 79);
    const NineTermDecomposition dec = haar_representation(t, f, g);

    // exactly the (R1 = S1, S2 strictly inside R2) class carries the total,
    // and it matches the <T(h_{S1} ⊗ 1), h_S>-type lemma sum
    const double scale = std::max(1.0, std::abs(dec.bilinear_total));
    CHECK(std::abs(dec.half_t_axis1().direct - dec.bilinear_total) <= 1e-10 * scale);
    CHECK(std::abs(dec.half_t_axis1().direct - dec.half_t_axis1().lemma_form) <= 1e-10 * scale);
    for (int r1 = 0; r1 < 3; ++r1)
        for (int r2 = 0; r2 < 3; ++r2)
            if (!(r1 == 0 && r2 == 2))
                CHECK(std::abs(dec.cls[r1][r2].direct) <= 1e-12 * scale);
}

TEST_CASE("form serialization round trip") {
    const TensorBasis basis({{0, 0}, {1, 3}}, 2, 3);
    const FiniteBilinearForm t = random_local_form(basis, 83);
    save_form(t, "/tmp/dyadlab_form.csv");
    const FiniteBilinearForm u = load_form("/tmp/dyadlab_form.csv");
    CHECK(u.basis.window() == t.basis.window());
    CHECK((u.m - t.m).cwiseAbs().maxCoeff() <= 1e-12);
    std::remove("/tmp/dyadlab_form.csv");
}

TEST_CASE("kernel-sampled matrix forms: tensor fast path equals the generic path") {
    const TensorBasis basis({{0, 0}, {0, 0}}, 3, 3);
    ProductKernel smooth = kernel_from_registry("smooth_tensor", 1.0 / 16.0);
    const FiniteBilinearForm fast = kernel_matrix_form(smooth, basis);
    ProductKernel generic = smooth;
    generic.factor1 = nullptr;
    generic.factor2 = nullptr;
    const FiniteBilinearForm slow = kernel_matrix_form(generic, basis);
    CHECK((fast.m - slow.m).cwiseAbs().maxCoeff() <= 1e-12);
}
