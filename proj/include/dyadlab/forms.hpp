#pragma once

#include <Eigen/Dense>

#include "dyadlab/haar.hpp"
#include "dyadlab/kernels.hpp"

namespace dyadlab {

// Complete orthonormal tensor basis of the 2D grid: axis-wise index 0 is the
// normalized window indicator, indices 2^d + p are Haar functions. Flat index
// a1 * n2 + a2.
struct TensorBasis {
    Basis1D b1, b2;

    TensorBasis() = default;
    TensorBasis(const DyadicRectangle& window, int res1, int res2)
        : b1{window.i1, res1}, b2{window.i2, res2} {}

    std::size_t n1() const { return b1.size(); }
    std::size_t n2() const { return b2.size(); }
    std::size_t size() const { return n1() * n2(); }
    std::size_t flat(std::size_t a1, std::size_t a2) const { return a1 * n2() + a2; }
    std::pair<std::size_t, std::size_t> unflat(std::size_t a) const {
        return {a / n2(), a % n2()};
    }
    DyadicRectangle window() const { return {b1.window, b2.window}; }
    bool is_detail_rect(std::size_t a) const {
        auto [a1, a2] = unflat(a);
        return a1 >= 1 && a2 >= 1;
    }
    DyadicRectangle rect_of(std::size_t a) const {
        auto [a1, a2] = unflat(a);
        return {b1.interval_of(a1), b2.interval_of(a2)};
    }
    std::size_t index_of(const DyadicRectangle& r) const {
        return flat(b1.index_of(r.i1), b2.index_of(r.i2));
    }
    Eigen::VectorXd coeffs(const Signal2D& f) const;
    // Coefficient vector of the constant 1 (the window indicator).
    Eigen::VectorXd one() const;
    // Coefficient vector of h_{I} ⊗ 1 (axis = 1) or 1 ⊗ h_{I} (axis = 2).
    Eigen::VectorXd half_haar(int axis, const DyadicInterval& i) const;
    Eigen::VectorXd unit(std::size_t a) const;
};

// Bilinear form on the truncated tensor-Haar span, represented by the dense
// matrix m(κ, μ) = Λ(e_κ, e_μ). Bilinearity is exact by construction;
// constants are represented by the window indicator.
struct FiniteBilinearForm {
    TensorBasis basis;
    Eigen::MatrixXd m;

    FiniteBilinearForm() = default;
    explicit FiniteBilinearForm(const TensorBasis& b)
        : basis(b), m(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(b.size()),
                                            static_cast<Eigen::Index>(b.size()))) {}

    double eval(const Signal2D& f, const Signal2D& g) const {
        return basis.coeffs(f).dot(m * basis.coeffs(g));
    }
    double eval_vec(const Eigen::VectorXd& f, const Eigen::VectorXd& g) const {
        return f.dot(m * g);
    }
    double entry(const DyadicRectangle& r, const DyadicRectangle& s) const {
        return m(static_cast<Eigen::Index>(basis.index_of(r)),
                 static_cast<Eigen::Index>(basis.index_of(s)));
    }
    FiniteBilinearForm& operator-=(const FiniteBilinearForm& other) {
        m -= other.m;
        return *this;
    }
    // Λ(h_R, h_S) = 0 whenever R ∩ S = ∅, checked over detail pairs.
    bool support_preserving(double tol = 0.0) const;
};

// Partial adjoints and full adjoint as index permutations:
// Λ1(f,g) = Λ(g1⊗f2, f1⊗g2), Λ2(f,g) = Λ(f1⊗g2, g1⊗f2), Λ*(f,g) = Λ(g,f).
struct AdjointForms {
    FiniteBilinearForm adj1, adj2, full;
};
AdjointForms adjoint_forms(const FiniteBilinearForm& l);

// Random operator with supp T(e_κ) ⊆ supp e_κ for every basis function:
// columns are random functions supported on the right set. The induced form
// satisfies the support-preservation precondition exactly.
FiniteBilinearForm random_support_preserving_form(const TensorBasis& basis, std::uint64_t seed,
                                                  double scale = 1.0);

// Matrix form sampled from a kernel: Λ(e_κ, e_μ) = ∫∫ e_κ(t) e_μ(x) K(x,t),
// midpoint rule per axis with the diagonal cells skipped (symmetric pv).
// Tensor kernels use per-axis Gram matrices.
FiniteBilinearForm kernel_matrix_form(const ProductKernel& k, const TensorBasis& basis);

// Sparse coordinate-list serialization (basis geometry header + entries).
void save_form(const FiniteBilinearForm& f, const std::string& path, double tol = 0.0);
FiniteBilinearForm load_form(const std::string& path);

} // namespace dyadlab
