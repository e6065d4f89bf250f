#include "dyadlab/bump.hpp"

#include <cmath>
#include <stdexcept>

namespace dyadlab {

double bump_profile(double u) {
    const double s = 1.0 - u * u;
    return s > 0.0 ? std::exp(-1.0 / s) : 0.0;
}

double bump_profile_derivative(double u) {
    const double s = 1.0 - u * u;
    if (s <= 0.0) return 0.0;
    return bump_profile(u) * (-2.0 * u) / (s * s);
}

namespace {
// Smooth transition q(t)/(q(t)+q(1-t)) with q(t) = exp(-1/t).
double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}
} // namespace

double plateau_profile(double u) {
    const double a = std::abs(u);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    return smooth_step(2.0 - a);
}

double plateau_value(double x, double center, double radius) {
    return plateau_profile((x - center) / radius);
}

double poly_tail_profile(double u, int p) { return std::pow(1.0 + u * u, -p); }

Signal1D make_plateau(double center, double radius, const DyadicInterval& window, int res) {
    Signal1D f(window, res);
    for (std::size_t i = 0; i < f.size(); ++i)
        f.v[i] = plateau_value(f.cell_center(i), center, radius);
    return f;
}

namespace {

// 4-point Gauss-Legendre cell averages of a smooth profile.
template <class F>
void sample_cell_averages(Signal1D& f, double c, double r, F&& profile) {
    static const double gx[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                 0.8611363115940526};
    static const double gw[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                 0.3478548451374538};
    const double h = f.cell_width();
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double mid = f.cell_center(i);
        double acc = 0.0;
        for (int k = 0; k < 4; ++k) acc += gw[k] * profile((mid + 0.5 * h * gx[k] - c) / r);
        f.v[i] = 0.5 * acc;
    }
}

} // namespace

Signal1D make_bump(const BumpSpec& spec, const DyadicInterval& window, int res) {
    const DyadicInterval& base = spec.interval;
    const double h = std::ldexp(window.length(), -res);
    if (base.length() / h < 16.0)
        throw std::invalid_argument("make_bump: resolution too coarse (need >= 16 samples in I)");

    if (spec.profile == BumpProfile::PolynomialTail) {
        const double c = base.center();
        const double r = base.length();
        const int p = spec.tail_power;
        if (p < 2) throw std::invalid_argument("make_bump: tail power below 2");
        // discarded L2 mass beyond the window against the total, via the
        // crude tail bound ∫_U^inf u^{-4p} du
        const double u_edge = std::min((c - window.left()) / r, (window.right() - c) / r);
        if (u_edge <= 1.0)
            throw std::invalid_argument("make_bump: interval too close to the window edge");
        const double discarded = std::pow(u_edge, 1.0 - 4.0 * p) / (4.0 * p - 1.0);
        if (discarded >= 1e-8)
            throw std::invalid_argument("make_bump: truncated tail mass above 1e-8");

        Signal1D f(window, res);
        if (spec.mean_zero) {
            // exact cell averages of d/dx of the profile, then remove the
            // tiny truncation residual
            for (std::size_t i = 0; i < f.size(); ++i) {
                const double a = (f.cell(i).left() - c) / r;
                const double b = (f.cell(i).right() - c) / r;
                f.v[i] = (poly_tail_profile(b, p) - poly_tail_profile(a, p)) / (b - a) / r;
            }
            const double mean = f.integral() / f.window.length();
            for (double& x : f.v) x -= mean;
        } else {
            sample_cell_averages(f, c, r, [p](double u) { return poly_tail_profile(u, p); });
        }
        const double n2 = f.l2_norm();
        if (n2 == 0.0) throw std::invalid_argument("make_bump: degenerate bump");
        f *= 1.0 / n2;
        return f;
    }

    if (spec.support_multiple < 2.0)
        throw std::invalid_argument("make_bump: support multiple below 2");
    const double c = base.center();
    const double r = 0.5 * spec.support_multiple * base.length();
    if (c - r < window.left() || c + r > window.right())
        throw std::invalid_argument("make_bump: support leaves the window");

    Signal1D f(window, res);
    if (spec.mean_zero) {
        // Exact cell averages of d/dx bump_profile((x-c)/r): telescoping makes
        // the grid integral vanish identically.
        for (std::size_t i = 0; i < f.size(); ++i) {
            const double a = (f.cell(i).left() - c) / r;
            const double b = (f.cell(i).right() - c) / r;
            f.v[i] = (bump_profile(b) - bump_profile(a)) / (b - a) / r;
        }
    } else {
        sample_cell_averages(f, c, r, [](double u) { return bump_profile(u); });
    }
    const double n2 = f.l2_norm();
    if (n2 == 0.0) throw std::invalid_argument("make_bump: degenerate bump");
    f *= 1.0 / n2;
    return f;
}

double adaptedness_constant(const Signal1D& f, const DyadicInterval& i, int order) {
    const double h = f.cell_width();
    if (i.length() / h < std::ldexp(1.0, order + 4))
        throw std::invalid_argument("adaptedness_constant: need >= 2^{N+4} samples in I");

    const double len = i.length();
    const double c = i.center();
    const std::size_t n = f.size();

    // d[k] holds the k-th centered difference; each application shrinks the
    // valid index range by one on both sides.
    std::vector<double> cur = f.v, next(n);
    double best = 0.0;
    for (int k = 0; k <= order; ++k) {
        const std::size_t margin = static_cast<std::size_t>(k);
        const double scale = std::pow(len, 0.5 + k);
        for (std::size_t idx = margin; idx + margin < n; ++idx) {
            const double x = f.cell_center(idx);
            const double w = std::pow(1.0 + std::abs(x - c) / len, order);
            best = std::max(best, std::abs(cur[idx]) * scale * w);
        }
        if (k == order) break;
        for (std::size_t idx = margin + 1; idx + margin + 1 < n; ++idx)
            next[idx] = (cur[idx + 1] - cur[idx - 1]) / (2.0 * h);
        std::swap(cur, next);
    }
    return best;
}

} // namespace dyadlab
