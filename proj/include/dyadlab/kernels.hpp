#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dyadlab/signal.hpp"

namespace dyadlab {

using cplx = std::complex<double>;

// Product Calderon-Zygmund kernel evaluator. Two conventions are carried:
// `eval` takes points (x, t) and is singular on {x1 = t1} ∪ {x2 = t2};
// `eval_diff` takes (x, u) with u the difference variable, K(x,t) =
// eval_diff(x, x - t). Convolution kernels ignore x in eval_diff.
struct ProductKernel {
    std::string name;
    double delta = 1.0;              // smoothness exponent in (0, 1]
    double declared_size_constant = 1.0;
    bool convolution = true;
    bool approximate = false;        // tabulated/interpolated kernels
    std::function<cplx(double, double, double, double)> eval;      // (x1,x2,t1,t2)
    std::function<cplx(double, double, double, double)> eval_diff; // (x1,x2,u1,u2)
    // Optional tensor structure K(x,t) = k1(x1,t1) k2(x2,t2) (real factors).
    std::function<double(double, double)> factor1, factor2;

    bool tensor() const { return static_cast<bool>(factor1); }
};

// Kernel with two homogeneities: K(u) = K1(u) K2(u), K1(d u1, d^a u2) =
// d^{deg1} K1(u), K2(d^b u1, d u2) = d^{deg2} K2(u).
struct MixedHomogeneityKernel {
    std::function<cplx(double, double)> k1, k2;
    double a = 1.0, b = 1.0;
    double deg1 = -1.0, deg2 = -1.0;

    cplx eval(double u1, double u2) const { return k1(u1, u2) * k2(u1, u2); }
};

struct HomogeneityReport {
    double max_rel_err1 = 0.0;
    double max_rel_err2 = 0.0;
};
HomogeneityReport check_homogeneity(const MixedHomogeneityKernel& k, int samples,
                                    std::uint64_t seed);

// ---- registry ---------------------------------------------------------

// Built-ins: "zero", "tensor_hilbert", "abs_tensor", "fs_mixed",
// "smooth_tensor" (param "a": mollification scale). Throws on unknown names.
ProductKernel kernel_from_registry(const std::string& name, double param = 0.0);
// The Fefferman-Stein motivating example at n = m = 1 as a mixed-homogeneity
// pair (the same kernel fs_mixed wraps).
MixedHomogeneityKernel fs_mixed_homogeneity();
// Tabulated kernel from a CSV grid of samples of a convolution profile
// k(u1, u2); bilinear interpolation, flagged approximate.
ProductKernel tabulated_kernel_from_csv(const std::string& path, double delta);

// ---- condition checkers ------------------------------------------------
// Checkers report measured constants, never booleans; thresholds live in the
// CLI layer.

// sup over samples of |K(x,t)| |x1-t1| |x2-t2|. Separations are log-uniform
// in [2^-8, 2^3]; samples keep a relative margin >= 1e-6 off the diagonal.
double check_size(const ProductKernel& k, int samples, std::uint64_t seed);

// sup of |double difference| / prod_i ((|dx_i|+|dt_i|)^delta |x_i-t_i|^{-1-delta})
// over admissible quadruples 2(|dx_i|+|dt_i|) <= |x_i-t_i|.
double check_product_smoothness(const ProductKernel& k, int samples, std::uint64_t seed);

struct AnnulusResult {
    double alpha1 = 0, beta1 = 0, alpha2 = 0, beta2 = 0;
    double value = 0.0;   // |∫∫_annulus K|
    bool converged = true;
};
struct AnnulusReport {
    std::vector<AnnulusResult> cells;
    double sup = 0.0;
    bool all_converged = true;
    // value at the widest annulus vs a moderate one; a ratio >> 1 marks
    // log-type growth (condition failure)
    double growth_ratio = 0.0;
};
AnnulusReport check_annulus_cancellation(const ProductKernel& k, const std::vector<double>& alphas,
                                         const std::vector<double>& betas);

struct MixedCancellationReport {
    double size1 = 0.0, smooth1 = 0.0; // conditions on K1(x, u1)
    double size2 = 0.0, smooth2 = 0.0; // conditions on K2(x, u2)
    bool converged = true;
};
MixedCancellationReport check_mixed_kernel_cancellation(const ProductKernel& k,
                                                        const std::vector<double>& alphas,
                                                        const std::vector<double>& betas,
                                                        int samples, std::uint64_t seed);

struct WbczReport {
    double size_constant = 0.0;       // sup |Λ^1_{t1,x1}(φ,ψ)| |t1-x1|
    double smoothness_constant = 0.0; // difference quotient against the bound
};
// Bumps adapted to I are generated internally on the given window/grid.
WbczReport mixed_wbcz_check(const ProductKernel& k, const DyadicInterval& i,
                            const DyadicInterval& window, int res, int pairs,
                            std::uint64_t seed);

// ---- principal-value application ----------------------------------------

// Doubly truncated application on the grid of f (midpoint rule):
// T_eps f(x) = Σ_{|x_i - t_i| > eps_i} f(t) K(x,t) cellarea. Truncation is
// symmetric per coordinate so odd-kernel cancellation is exact in floating
// point. Real kernels only; complex kernels go through the _complex variant.
Signal2D apply_kernel_operator(const ProductKernel& k, const Signal2D& f, double eps1,
                               double eps2);
std::pair<Signal2D, Signal2D> apply_kernel_operator_complex(const ProductKernel& k,
                                                            const Signal2D& f, double eps1,
                                                            double eps2);

namespace ref {
// Quadruple-loop reference (no tensor fast path); oracle for the fast
// separable application.
Signal2D apply_kernel_operator(const ProductKernel& k, const Signal2D& f, double eps1,
                               double eps2);
} // namespace ref

} // namespace dyadlab
