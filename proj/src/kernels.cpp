#include "dyadlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "dyadlab/bump.hpp"
#include "dyadlab/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dyadlab {

namespace {

ProductKernel from_convolution(std::string name, double delta, double size_c,
                               std::function<cplx(double, double)> profile) {
    ProductKernel k;
    k.name = std::move(name);
    k.delta = delta;
    k.declared_size_constant = size_c;
    k.convolution = true;
    k.eval_diff = [profile](double, double, double u1, double u2) { return profile(u1, u2); };
    k.eval = [profile](double x1, double x2, double t1, double t2) {
        return profile(x1 - t1, x2 - t2);
    };
    return k;
}

} // namespace

ProductKernel kernel_from_registry(const std::string& name, double param) {
    if (name == "zero") {
        ProductKernel k = from_convolution("zero", 1.0, 0.0, [](double, double) { return cplx{0.0, 0.0}; });
        k.factor1 = [](double, double) { return 0.0; };
        k.factor2 = k.factor1;
        return k;
    }
    if (name == "tensor_hilbert") {
        ProductKernel k = from_convolution("tensor_hilbert", 1.0, 1.0, [](double u1, double u2) {
            return cplx{1.0 / (u1 * u2), 0.0};
        });
        k.factor1 = [](double x, double t) { return 1.0 / (x - t); };
        k.factor2 = k.factor1;
        return k;
    }
    if (name == "abs_tensor") {
        ProductKernel k = from_convolution("abs_tensor", 1.0, 1.0, [](double u1, double u2) {
            return cplx{1.0 / (std::abs(u1) * std::abs(u2)), 0.0};
        });
        k.factor1 = [](double x, double t) { return 1.0 / std::abs(x - t); };
        k.factor2 = k.factor1;
        return k;
    }
    if (name == "fs_mixed") {
        // K_1(u) = u1 / (u1^2 + u2^2), K_2(u) = 1 / (u1^2 + i u2)
        return from_convolution("fs_mixed", 0.5, 2.0, [](double u1, double u2) {
            const double r2 = u1 * u1 + u2 * u2;
            return (u1 / r2) * (1.0 / cplx{u1 * u1, u2});
        });
    }
    if (name == "smooth_tensor") {
        // Mollified Hilbert factors (x-t)/((x-t)^2 + a^2): bounded, odd,
        // kernel-like at separations beyond a.
        const double a = param > 0.0 ? param : 1.0 / 64.0;
        auto factor = [a](double x, double t) {
            const double u = x - t;
            return u / (u * u + a * a);
        };
        ProductKernel k = from_convolution("smooth_tensor", 1.0, 1.0, [factor](double u1, double u2) {
            return cplx{factor(u1, 0.0) * factor(u2, 0.0), 0.0};
        });
        k.factor1 = factor;
        k.factor2 = factor;
        return k;
    }
    throw std::invalid_argument("kernel_from_registry: unknown kernel '" + name + "'");
}

MixedHomogeneityKernel fs_mixed_homogeneity() {
    MixedHomogeneityKernel k;
    k.k1 = [](double u1, double u2) { return cplx{u1 / (u1 * u1 + u2 * u2), 0.0}; };
    k.k2 = [](double u1, double u2) { return 1.0 / cplx{u1 * u1, u2}; };
    k.a = 1.0;   // K1(d u1, d u2) = d^{-1} K1
    k.b = 0.5;   // K2(d^{1/2} u1, d u2) = d^{-1} K2
    k.deg1 = -1.0;
    k.deg2 = -1.0;
    return k;
}

ProductKernel tabulated_kernel_from_csv(const std::string& path, double delta) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("tabulated_kernel_from_csv: cannot open " + path);
    // format: first line "u1_min,u1_max,u2_min,u2_max,n1,n2"; then n1 lines of
    // n2 comma-separated samples of k at grid midpoints
    std::string line;
    std::getline(in, line);
    std::stringstream hs(line);
    double u1min, u1max, u2min, u2max;
    int n1, n2;
    char comma;
    hs >> u1min >> comma >> u1max >> comma >> u2min >> comma >> u2max >> comma >> n1 >> comma >> n2;
    if (!hs || n1 < 2 || n2 < 2)
        throw std::runtime_error("tabulated_kernel_from_csv: bad header");
    auto table = std::make_shared<std::vector<double>>();
    table->reserve(static_cast<std::size_t>(n1) * n2);
    for (int i = 0; i < n1; ++i) {
        std::getline(in, line);
        std::stringstream ls(line);
        std::string field;
        for (int j = 0; j < n2; ++j) {
            std::getline(ls, field, ',');
            table->push_back(std::stod(field));
        }
    }
    const double h1 = (u1max - u1min) / n1, h2 = (u2max - u2min) / n2;
    auto profile = [=](double u1, double u2) -> cplx {
        // bilinear interpolation between midpoints, clamped to the table
        const double a = std::clamp((u1 - u1min) / h1 - 0.5, 0.0, double(n1 - 1));
        const double b = std::clamp((u2 - u2min) / h2 - 0.5, 0.0, double(n2 - 1));
        const int i0 = std::min(int(a), n1 - 2), j0 = std::min(int(b), n2 - 2);
        const double fa = a - i0, fb = b - j0;
        auto at = [&](int i, int j) { return (*table)[std::size_t(i) * n2 + j]; };
        const double v = (1 - fa) * (1 - fb) * at(i0, j0) + fa * (1 - fb) * at(i0 + 1, j0) +
                         (1 - fa) * fb * at(i0, j0 + 1) + fa * fb * at(i0 + 1, j0 + 1);
        return cplx{v, 0.0};
    };
    ProductKernel k = from_convolution("tabulated", delta, 1.0, profile);
    k.approximate = true;
    return k;
}

HomogeneityReport check_homogeneity(const MixedHomogeneityKernel& k, int samples,
                                    std::uint64_t seed) {
    HomogeneityReport rep;
    Rng rng(seed);
    const double dilations[] = {0.25, 0.5, 2.0, 4.0};
    for (int s = 0; s < samples; ++s) {
        const double ang = rng.uniform(0.0, 2.0 * M_PI);
        const double r = std::exp(rng.uniform(std::log(0.125), std::log(8.0)));
        const double u1 = r * std::cos(ang), u2 = r * std::sin(ang);
        if (std::abs(u1) < 1e-9 || std::abs(u2) < 1e-9) continue;
        for (double d : dilations) {
            const cplx v1 = k.k1(d * u1, std::pow(d, k.a) * u2);
            const cplx w1 = std::pow(d, k.deg1) * k.k1(u1, u2);
            if (std::abs(w1) > 0.0)
                rep.max_rel_err1 = std::max(rep.max_rel_err1, std::abs(v1 - w1) / std::abs(w1));
            const cplx v2 = k.k2(std::pow(d, k.b) * u1, d * u2);
            const cplx w2 = std::pow(d, k.deg2) * k.k2(u1, u2);
            if (std::abs(w2) > 0.0)
                rep.max_rel_err2 = std::max(rep.max_rel_err2, std::abs(v2 - w2) / std::abs(w2));
        }
    }
    return rep;
}

namespace {

double log_uniform(Rng& rng, double lo, double hi) {
    return std::exp(rng.uniform(std::log(lo), std::log(hi)));
}
double random_sign(Rng& rng) { return rng.below(2) == 0 ? 1.0 : -1.0; }

} // namespace

double check_size(const ProductKernel& k, int samples, std::uint64_t seed) {
    Rng rng(seed);
    double sup = 0.0;
    for (int s = 0; s < samples; ++s) {
        const double x1 = rng.uniform(-1.0, 1.0);
        const double x2 = rng.uniform(-1.0, 1.0);
        const double s1 = random_sign(rng) * log_uniform(rng, std::ldexp(1.0, -8), 8.0);
        const double s2 = random_sign(rng) * log_uniform(rng, std::ldexp(1.0, -8), 8.0);
        const cplx v = k.eval(x1, x2, x1 - s1, x2 - s2);
        sup = std::max(sup, std::abs(v) * std::abs(s1) * std::abs(s2));
    }
    return sup;
}

double check_product_smoothness(const ProductKernel& k, int samples, std::uint64_t seed) {
    Rng rng(seed);
    double sup = 0.0;
    for (int s = 0; s < samples; ++s) {
        const double x1 = rng.uniform(-1.0, 1.0);
        const double x2 = rng.uniform(-1.0, 1.0);
        const double s1 = random_sign(rng) * log_uniform(rng, std::ldexp(1.0, -6), 8.0);
        const double s2 = random_sign(rng) * log_uniform(rng, std::ldexp(1.0, -6), 8.0);
        const double t1 = x1 - s1, t2 = x2 - s2;
        // admissible movement budget per coordinate: |dx|+|dt| <= |s| / 2
        const double m1 = 0.5 * std::abs(s1) * log_uniform(rng, 1.0 / 64.0, 1.0);
        const double m2 = 0.5 * std::abs(s2) * log_uniform(rng, 1.0 / 64.0, 1.0);
        const double split1 = rng.uniform(), split2 = rng.uniform();
        const double dx1 = random_sign(rng) * m1 * split1, dt1 = random_sign(rng) * m1 * (1 - split1);
        const double dx2 = random_sign(rng) * m2 * split2, dt2 = random_sign(rng) * m2 * (1 - split2);
        const cplx dd = k.eval(x1, x2, t1, t2) - k.eval(x1, x2 + dx2, t1, t2 + dt2) -
                        k.eval(x1 + dx1, x2, t1 + dt1, t2) +
                        k.eval(x1 + dx1, x2 + dx2, t1 + dt1, t2 + dt2);
        const double denom = std::pow(m1, k.delta) * std::pow(std::abs(s1), -1.0 - k.delta) *
                             std::pow(m2, k.delta) * std::pow(std::abs(s2), -1.0 - k.delta);
        if (denom > 0.0) sup = std::max(sup, std::abs(dd) / denom);
    }
    return sup;
}

namespace {

// Symmetric geometric panels covering alpha < |u| < beta; returns midpoints
// and weights of the positive side only (mirror for the negative side).
void geometric_panels(double alpha, double beta, int panels_per_segment,
                      std::vector<double>& mid, std::vector<double>& w) {
    mid.clear();
    w.clear();
    double lo = alpha;
    while (lo < beta) {
        const double hi = std::min(2.0 * lo, beta);
        const double h = (hi - lo) / panels_per_segment;
        for (int i = 0; i < panels_per_segment; ++i) {
            mid.push_back(lo + (i + 0.5) * h);
            w.push_back(h);
        }
        lo = hi;
    }
}

// ∫∫ over the product annulus of eval_diff(x, u) du at fixed x, with
// sign-symmetric node groups so that odd cancellation is exact.
cplx annulus_integral(const ProductKernel& k, double x1, double x2, double a1, double b1,
                      double a2, double b2, int panels) {
    std::vector<double> m1, w1, m2, w2;
    geometric_panels(a1, b1, panels, m1, w1);
    geometric_panels(a2, b2, panels, m2, w2);
    cplx total{0.0, 0.0};
    for (std::size_t i = 0; i < m1.size(); ++i) {
        for (std::size_t j = 0; j < m2.size(); ++j) {
            const cplx group = k.eval_diff(x1, x2, m1[i], m2[j]) +
                               k.eval_diff(x1, x2, -m1[i], m2[j]) +
                               k.eval_diff(x1, x2, m1[i], -m2[j]) +
                               k.eval_diff(x1, x2, -m1[i], -m2[j]);
            total += group * (w1[i] * w2[j]);
        }
    }
    return total;
}

} // namespace

AnnulusReport check_annulus_cancellation(const ProductKernel& k, const std::vector<double>& alphas,
                                         const std::vector<double>& betas) {
    AnnulusReport rep;
    std::vector<std::pair<double, double>> xs = {{0.0, 0.0}};
    if (!k.convolution) xs = {{0.0, 0.0}, {0.3, -0.7}, {-1.1, 0.45}};
    for (double a1 : alphas) {
        for (double b1 : betas) {
            if (!(0.0 < a1 && a1 < b1)) continue;
            for (double a2 : alphas) {
                for (double b2 : betas) {
                    if (!(0.0 < a2 && a2 < b2)) continue;
                    AnnulusResult cell{a1, b1, a2, b2, 0.0, true};
                    for (const auto& [x1, x2] : xs) {
                        int panels = 8;
                        cplx prev = annulus_integral(k, x1, x2, a1, b1, a2, b2, panels);
                        bool converged = false;
                        for (int it = 0; it < 5; ++it) {
                            panels *= 2;
                            const cplx cur = annulus_integral(k, x1, x2, a1, b1, a2, b2, panels);
                            if (std::abs(cur - prev) <= 1e-5 * std::max(1.0, std::abs(cur))) {
                                prev = cur;
                                converged = true;
                                break;
                            }
                            prev = cur;
                        }
                        cell.value = std::max(cell.value, std::abs(prev));
                        cell.converged = cell.converged && converged;
                    }
                    rep.all_converged = rep.all_converged && cell.converged;
                    rep.sup = std::max(rep.sup, cell.value);
                    rep.cells.push_back(cell);
                }
            }
        }
    }
    // growth marker: widest annulus value vs the median cell value
    if (!rep.cells.empty()) {
        std::vector<double> vals;
        for (const auto& c : rep.cells) vals.push_back(c.value);
        std::sort(vals.begin(), vals.end());
        const double median = vals[vals.size() / 2];
        rep.growth_ratio = median > 0.0 ? rep.sup / median : (rep.sup > 0.0 ? 1e300 : 0.0);
    }
    return rep;
}

namespace {

// K1(x, u1) = ∫_{alpha2 < |u2| < beta2} eval_diff(x, u1, u2) du2 (symmetric
// nodes in u2).
cplx partial_annulus_1(const ProductKernel& k, double x1, double x2, double u1, double a2,
                       double b2, int panels) {
    std::vector<double> m, w;
    geometric_panels(a2, b2, panels, m, w);
    cplx total{0.0, 0.0};
    for (std::size_t j = 0; j < m.size(); ++j)
        total += (k.eval_diff(x1, x2, u1, m[j]) + k.eval_diff(x1, x2, u1, -m[j])) * w[j];
    return total;
}

cplx partial_annulus_2(const ProductKernel& k, double x1, double x2, double u2, double a1,
                       double b1, int panels) {
    std::vector<double> m, w;
    geometric_panels(a1, b1, panels, m, w);
    cplx total{0.0, 0.0};
    for (std::size_t j = 0; j < m.size(); ++j)
        total += (k.eval_diff(x1, x2, m[j], u2) + k.eval_diff(x1, x2, -m[j], u2)) * w[j];
    return total;
}

} // namespace

MixedCancellationReport check_mixed_kernel_cancellation(const ProductKernel& k,
                                                        const std::vector<double>& alphas,
                                                        const std::vector<double>& betas,
                                                        int samples, std::uint64_t seed) {
    MixedCancellationReport rep;
    Rng rng(seed);
    const int panels = 32;
    for (int s = 0; s < samples; ++s) {
        const double x1 = k.convolution ? 0.0 : rng.uniform(-1.0, 1.0);
        const double x2 = k.convolution ? 0.0 : rng.uniform(-1.0, 1.0);
        const double u1 = random_sign(rng) * log_uniform(rng, std::ldexp(1.0, -6), 8.0);
        const double u2 = random_sign(rng) * log_uniform(rng, std::ldexp(1.0, -6), 8.0);
        for (double a : alphas) {
            for (double b : betas) {
                if (!(0.0 < a && a < b)) continue;
                // size conditions 3.a.i / 3.b.i
                const cplx k1 = partial_annulus_1(k, x1, x2, u1, a, b, panels);
                rep.size1 = std::max(rep.size1, std::abs(k1) * std::abs(u1));
                const cplx k2 = partial_annulus_2(k, x1, x2, u2, a, b, panels);
                rep.size2 = std::max(rep.size2, std::abs(k2) * std::abs(u2));
                // smoothness conditions 3.a.ii / 3.b.ii
                const double m1 = 0.25 * std::abs(u1);
                const double du1 = random_sign(rng) * m1 * rng.uniform(0.1, 1.0);
                const double dx1 = k.convolution ? 0.0 : random_sign(rng) * (m1 - std::abs(du1)) * 0.5;
                const cplx k1s = partial_annulus_1(k, x1 + dx1, x2, u1 + du1, a, b, panels);
                const double move1 = std::abs(du1) + std::abs(dx1);
                if (move1 > 0.0)
                    rep.smooth1 = std::max(rep.smooth1,
                                           std::abs(k1s - k1) /
                                               (std::pow(move1, k.delta) *
                                                std::pow(std::abs(u1), -1.0 - k.delta)));
                const double m2 = 0.25 * std::abs(u2);
                const double du2 = random_sign(rng) * m2 * rng.uniform(0.1, 1.0);
                const double dx2 = k.convolution ? 0.0 : random_sign(rng) * (m2 - std::abs(du2)) * 0.5;
                const cplx k2s = partial_annulus_2(k, x1, x2 + dx2, u2 + du2, a, b, panels);
                const double move2 = std::abs(du2) + std::abs(dx2);
                if (move2 > 0.0)
                    rep.smooth2 = std::max(rep.smooth2,
                                           std::abs(k2s - k2) /
                                               (std::pow(move2, k.delta) *
                                                std::pow(std::abs(u2), -1.0 - k.delta)));
            }
        }
    }
    return rep;
}

WbczReport mixed_wbcz_check(const ProductKernel& k, const DyadicInterval& i,
                            const DyadicInterval& window, int res, int pairs,
                            std::uint64_t seed) {
    WbczReport rep;
    const Signal1D phi = make_bump({i, 2, 1.0, false}, window, res);
    const Signal1D psi = make_bump({i, 2, 1.0, true}, window, res); // distinct pair, same I

    const double h = phi.cell_width();
    auto lambda1 = [&](double t1, double x1) {
        // pv pairing in the second coordinate
        cplx acc{0.0, 0.0};
        for (std::size_t a = 0; a < phi.size(); ++a) {
            if (phi.v[a] == 0.0) continue;
            const double t2 = phi.cell_center(a);
            for (std::size_t b = 0; b < psi.size(); ++b) {
                if (b == a || psi.v[b] == 0.0) continue;
                const double x2 = psi.cell_center(b);
                acc += phi.v[a] * psi.v[b] * k.eval(x1, x2, t1, t2);
            }
        }
        return acc * (h * h);
    };

    Rng rng(seed);
    for (int s = 0; s < pairs; ++s) {
        const double sep = random_sign(rng) * log_uniform(rng, std::ldexp(1.0, -6), 8.0);
        const double x1 = rng.uniform(-1.0, 1.0);
        const double t1 = x1 - sep;
        const cplx l = lambda1(t1, x1);
        rep.size_constant = std::max(rep.size_constant, std::abs(l) * std::abs(sep));
        const double m = 0.25 * std::abs(sep);
        const double du = random_sign(rng) * m * rng.uniform(0.1, 1.0);
        const double dv = random_sign(rng) * (m - std::abs(du)) * 0.5;
        const cplx ls = lambda1(t1 + du, x1 + dv);
        const double move = std::abs(du) + std::abs(dv);
        if (move > 0.0)
            rep.smoothness_constant =
                std::max(rep.smoothness_constant,
                         std::abs(ls - l) /
                             (std::pow(move, k.delta) * std::pow(std::abs(sep), -1.0 - k.delta)));
    }
    return rep;
}

// ---- principal-value application ----------------------------------------

namespace {

// 1D truncated convolution-style pass with a real factor k(x, t):
// out[j] = Σ_{|x_j - t_i| > eps} in[i] k(x_j, t_i) h.
void apply_factor_1d(const std::function<double(double, double)>& factor,
                     const std::vector<double>& centers, double h, double eps,
                     const double* in, double* out) {
    const std::size_t n = centers.size();
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(centers[j] - centers[i]) <= eps || in[i] == 0.0) continue;
            acc += in[i] * factor(centers[j], centers[i]);
        }
        out[j] = acc * h;
    }
}

std::pair<Signal2D, Signal2D> apply_generic(const ProductKernel& k, const Signal2D& f,
                                            double eps1, double eps2) {
    Signal2D re(f.window, f.res1, f.res2), im(f.window, f.res1, f.res2);
    const std::size_t n1 = f.n1(), n2 = f.n2();
    Signal1D ax1(f.window.i1, f.res1), ax2(f.window.i2, f.res2);
    std::vector<double> c1(n1), c2(n2);
    for (std::size_t i = 0; i < n1; ++i) c1[i] = ax1.cell_center(i);
    for (std::size_t j = 0; j < n2; ++j) c2[j] = ax2.cell_center(j);
    const double area = f.cell_area();
#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(dynamic)
#endif
    for (std::ptrdiff_t a = 0; a < static_cast<std::ptrdiff_t>(n1); ++a) {
        for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(n2); ++b) {
            cplx acc{0.0, 0.0};
            for (std::size_t i = 0; i < n1; ++i) {
                if (std::abs(c1[std::size_t(a)] - c1[i]) <= eps1) continue;
                for (std::size_t j = 0; j < n2; ++j) {
                    if (std::abs(c2[std::size_t(b)] - c2[j]) <= eps2) continue;
                    const double fv = f.at(i, j);
                    if (fv == 0.0) continue;
                    acc += fv * k.eval(c1[std::size_t(a)], c2[std::size_t(b)], c1[i], c2[j]);
                }
            }
            re.at(std::size_t(a), std::size_t(b)) = acc.real() * area;
            im.at(std::size_t(a), std::size_t(b)) = acc.imag() * area;
        }
    }
    return {re, im};
}

} // namespace

std::pair<Signal2D, Signal2D> apply_kernel_operator_complex(const ProductKernel& k,
                                                            const Signal2D& f, double eps1,
                                                            double eps2) {
    if (!k.tensor()) return apply_generic(k, f, eps1, eps2);

    // separable: axis-2 pass then axis-1 pass (real factors)
    const std::size_t n1 = f.n1(), n2 = f.n2();
    Signal1D ax1(f.window.i1, f.res1), ax2(f.window.i2, f.res2);
    std::vector<double> c1(n1), c2(n2);
    for (std::size_t i = 0; i < n1; ++i) c1[i] = ax1.cell_center(i);
    for (std::size_t j = 0; j < n2; ++j) c2[j] = ax2.cell_center(j);
    const double h1 = f.window.i1.length() / static_cast<double>(n1);
    const double h2 = f.window.i2.length() / static_cast<double>(n2);

    Signal2D mid(f.window, f.res1, f.res2), out(f.window, f.res1, f.res2);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n1); ++i)
        apply_factor_1d(k.factor2, c2, h2, eps2, &f.v[std::size_t(i) * n2],
                        &mid.v[std::size_t(i) * n2]);
#ifdef _OPENMP
#pragma omp parallel
#endif
    {
        std::vector<double> col(n1), res(n1);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(n2); ++j) {
            for (std::size_t i = 0; i < n1; ++i) col[i] = mid.v[i * n2 + std::size_t(j)];
            apply_factor_1d(k.factor1, c1, h1, eps1, col.data(), res.data());
            for (std::size_t i = 0; i < n1; ++i) out.v[i * n2 + std::size_t(j)] = res[i];
        }
    }
    return {out, Signal2D(f.window, f.res1, f.res2)};
}

Signal2D apply_kernel_operator(const ProductKernel& k, const Signal2D& f, double eps1,
                               double eps2) {
    auto [re, im] = apply_kernel_operator_complex(k, f, eps1, eps2);
    if (im.sup_norm() > 0.0)
        throw std::invalid_argument("apply_kernel_operator: complex kernel; use the _complex "
                                    "variant");
    return re;
}

namespace ref {

Signal2D apply_kernel_operator(const ProductKernel& k, const Signal2D& f, double eps1,
                               double eps2) {
    Signal2D out(f.window, f.res1, f.res2);
    Signal1D ax1(f.window.i1, f.res1), ax2(f.window.i2, f.res2);
    const double area = f.cell_area();
    for (std::size_t a = 0; a < f.n1(); ++a) {
        for (std::size_t b = 0; b < f.n2(); ++b) {
            double acc = 0.0;
            for (std::size_t i = 0; i < f.n1(); ++i) {
                for (std::size_t j = 0; j < f.n2(); ++j) {
                    const double dx1 = ax1.cell_center(a) - ax1.cell_center(i);
                    const double dx2 = ax2.cell_center(b) - ax2.cell_center(j);
                    if (std::abs(dx1) <= eps1 || std::abs(dx2) <= eps2) continue;
                    acc += f.at(i, j) *
                           k.eval(ax1.cell_center(a), ax2.cell_center(b), ax1.cell_center(i),
                                  ax2.cell_center(j))
                               .real();
                }
            }
            out.at(a, b) = acc * area;
        }
    }
    return out;
}

} // namespace ref

} // namespace dyadlab
