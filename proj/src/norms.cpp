#include "dyadlab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dyadlab/bump.hpp"

namespace dyadlab {

double lp_norm(const Signal1D& f, double p) { return f.lp_norm(p); }
double lp_norm(const Signal2D& f, double p) { return f.lp_norm(p); }

double dyadic_bmo_norm(const HaarCoeffs1D& c) {
    // Bottom-up subtree sums over the detail tree.
    const std::size_t n = std::size_t{1} << c.res;
    std::vector<double> sq(n, 0.0);
    Basis1D basis{c.window, c.res};
    for (const auto& [k, v] : c.detail) sq[basis.index_of(k)] = v * v;
    double best = 0.0;
    for (std::size_t idx = n - 1; idx >= 1; --idx) {
        if (2 * idx < n) sq[idx] += sq[2 * idx] + sq[2 * idx + 1];
        const double len = basis.interval_of(idx).length();
        best = std::max(best, sq[idx] / len);
    }
    return std::sqrt(best);
}

double dyadic_bmo_norm(const Signal1D& f) { return dyadic_bmo_norm(haar_forward(f)); }

namespace {

struct RectMass {
    DyadicRectangle r;
    double mass; // Σ_{R' ⊆ R} coefficient^2, over the truncated grid
};

// Subtree coefficient masses for every rectangle: mass[R] = Σ_{R' ⊆ R} c^2.
std::map<DyadicRectangle, double> subtree_masses(const HaarCoeffs2D& c) {
    std::map<DyadicRectangle, double> mass;
    for (const auto& [r, v] : c.detail) mass[r] = 0.0;
    // iterate deepest-first on each axis via sorted map trick: accumulate by
    // direct ancestor walk (grids are small where this estimator is used)
    for (const auto& [r, v] : c.detail) {
        const double sq = v * v;
        for (DyadicInterval a = r.i1;; a = a.parent()) {
            for (DyadicInterval b = r.i2;; b = b.parent()) {
                auto it = mass.find({a, b});
                if (it != mass.end()) it->second += sq;
                if (b.level == c.window.i2.level) break;
            }
            if (a.level == c.window.i1.level) break;
        }
    }
    return mass;
}

} // namespace

double rect_bmo_norm(const Signal2D& f) {
    const HaarCoeffs2D c = haar_forward(f);
    double best = 0.0;
    for (const auto& [r, m] : subtree_masses(c)) best = std::max(best, m / r.area());
    return std::sqrt(best);
}

double product_bmo_lowerbound(const Signal2D& f, int budget) {
    if (budget < 1) throw std::domain_error("product_bmo_lowerbound: budget < 1");
    const HaarCoeffs2D c = haar_forward(f);
    const auto masses = subtree_masses(c);

    double best = 0.0;
    for (const auto& [r, m] : masses) best = std::max(best, m / r.area());

    // Greedy unions: add rectangles by decreasing subtree mass and track the
    // union measure on the cell grid together with the contained-coefficient
    // mass.
    std::vector<RectMass> ranked;
    ranked.reserve(masses.size());
    for (const auto& [r, m] : masses) ranked.push_back({r, m});
    std::sort(ranked.begin(), ranked.end(),
              [](const RectMass& a, const RectMass& b) { return a.mass > b.mass; });

    const std::size_t n1 = std::size_t{1} << c.res1, n2 = std::size_t{1} << c.res2;
    std::vector<char> covered(n1 * n2, 0);
    Signal2D probe(c.window, c.res1, c.res2);
    const double cell_area = probe.cell_area();
    Signal1D ax1(c.window.i1, c.res1), ax2(c.window.i2, c.res2);

    std::vector<DyadicRectangle> chosen;
    double omega_measure = 0.0;
    const int kmax = std::min<std::size_t>(budget, ranked.size());
    for (int k = 0; k < kmax; ++k) {
        const DyadicRectangle& r = ranked[static_cast<std::size_t>(k)].r;
        auto [a_lo, a_hi] = ax1.cell_range(r.i1);
        auto [b_lo, b_hi] = ax2.cell_range(r.i2);
        for (std::size_t a = a_lo; a < a_hi; ++a)
            for (std::size_t b = b_lo; b < b_hi; ++b) {
                if (!covered[a * n2 + b]) {
                    covered[a * n2 + b] = 1;
                    omega_measure += cell_area;
                }
            }
        chosen.push_back(r);
        // mass contained in Ω: rectangles entirely covered by the union
        double contained = 0.0;
        for (const auto& [r2, v] : c.detail) {
            auto [c_lo, c_hi] = ax1.cell_range(r2.i1);
            auto [d_lo, d_hi] = ax2.cell_range(r2.i2);
            bool inside = true;
            for (std::size_t a = c_lo; a < c_hi && inside; ++a)
                for (std::size_t b = d_lo; b < d_hi; ++b)
                    if (!covered[a * n2 + b]) {
                        inside = false;
                        break;
                    }
            if (inside) contained += v * v;
        }
        if (omega_measure > 0.0) best = std::max(best, contained / omega_measure);
    }
    return std::sqrt(best);
}

double PreAtom2D::derivative_bound_ratio() const {
    const Signal2D& f = values;
    const double h1 = f.window.i1.length() / static_cast<double>(f.n1());
    const double h2 = f.window.i2.length() / static_cast<double>(f.n2());
    const double li = rectangle.i1.length(), lj = rectangle.i2.length();
    const double base = std::sqrt(rectangle.area());

    double worst = 0.0;
    for (int a = 0; a <= 1; ++a) {
        for (int b = 0; b <= 1; ++b) {
            double sup = 0.0;
            for (std::size_t i = a; i + a < f.n1(); ++i) {
                for (std::size_t j = b; j + b < f.n2(); ++j) {
                    double d;
                    if (a == 0 && b == 0) d = f.at(i, j);
                    else if (a == 1 && b == 0) d = (f.at(i + 1, j) - f.at(i - 1, j)) / (2 * h1);
                    else if (a == 0 && b == 1) d = (f.at(i, j + 1) - f.at(i, j - 1)) / (2 * h2);
                    else
                        d = (f.at(i + 1, j + 1) - f.at(i + 1, j - 1) - f.at(i - 1, j + 1) +
                             f.at(i - 1, j - 1)) /
                            (4 * h1 * h2);
                    sup = std::max(sup, std::abs(d));
                }
            }
            const double bound = 1.0 / (std::pow(li, a) * std::pow(lj, b) * base);
            worst = std::max(worst, sup / bound);
        }
    }
    return worst;
}

double PreAtom2D::max_marginal_mean() const {
    const Signal2D& f = values;
    const double h1 = f.window.i1.length() / static_cast<double>(f.n1());
    const double h2 = f.window.i2.length() / static_cast<double>(f.n2());
    double worst = 0.0;
    for (std::size_t j = 0; j < f.n2(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < f.n1(); ++i) s += f.at(i, j);
        worst = std::max(worst, std::abs(s * h1));
    }
    for (std::size_t i = 0; i < f.n1(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < f.n2(); ++j) s += f.at(i, j);
        worst = std::max(worst, std::abs(s * h2));
    }
    return worst;
}

PreAtom2D make_preatom(const DyadicRectangle& r, const DyadicRectangle& window, int res1,
                       int res2) {
    BumpSpec s1{r.i1, 1, 1.0, true, 2.0}, s2{r.i2, 1, 1.0, true, 2.0};
    Signal1D psi1 = make_bump(s1, window.i1, res1);
    Signal1D psi2 = make_bump(s2, window.i2, res2);

    PreAtom2D atom;
    atom.rectangle = r;
    atom.values = tensor(psi1, psi2);
    // Scale to meet the four derivative sup bounds, then shrink further if
    // needed so that ||f||_2 <= 1.
    const double ratio = atom.derivative_bound_ratio();
    double scale = ratio > 0.0 ? 1.0 / ratio : 1.0;
    const double l2 = atom.values.l2_norm() * scale;
    if (l2 > 1.0) scale /= l2;
    atom.values *= scale;
    return atom;
}

} // namespace dyadlab
