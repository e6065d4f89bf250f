#include "dyadlab/experiments.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "dyadlab/haar.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dyadlab {

namespace {
// ∫_0^s ln|σ| dσ, odd extension; exact antiderivative used by the Hilbert
// cell-pair integral.
double log_antideriv(double s) {
    if (s == 0.0) return 0.0;
    return s * (std::log(std::abs(s)) - 1.0);
}
} // namespace

KernelFactor hilbert_factor() {
    KernelFactor k;
    k.point = [](double x, double t) { return 1.0 / (x - t); };
    k.cell_pair = [](double a, double b, double c, double d) {
        // ∫_{t in [a,b]} ∫_{x in [c,d]} dx dt / (x - t), symmetric pv
        return log_antideriv(d - a) - log_antideriv(d - b) - log_antideriv(c - a) +
               log_antideriv(c - b);
    };
    return k;
}

KernelFactor smooth_hilbert_factor(double a) {
    KernelFactor k;
    k.point = [a](double x, double t) {
        const double u = x - t;
        return u / (u * u + a * a);
    };
    return k;
}

KernelFactor zero_factor() {
    KernelFactor k;
    k.point = [](double, double) { return 0.0; };
    k.cell_pair = [](double, double, double, double) { return 0.0; };
    return k;
}

double kernel_pairing(const KernelFactor& k, const GridFn& t_side, const GridFn& x_side) {
    double s = 0.0;
    if (k.cell_pair) {
        for (std::size_t i = 0; i < t_side.v.size(); ++i) {
            const double u = t_side.v[i];
            if (u == 0.0) continue;
            const double a = t_side.left + static_cast<double>(i) * t_side.h;
            const double b = a + t_side.h;
            double row = 0.0;
            for (std::size_t j = 0; j < x_side.v.size(); ++j) {
                const double v = x_side.v[j];
                if (v == 0.0) continue;
                const double c = x_side.left + static_cast<double>(j) * x_side.h;
                row += v * k.cell_pair(a, b, c, c + x_side.h);
            }
            s += u * row;
        }
        return s;
    }
    const double guard = 0.5 * (t_side.h + x_side.h);
    for (std::size_t i = 0; i < t_side.v.size(); ++i) {
        const double u = t_side.v[i];
        if (u == 0.0) continue;
        const double tc = t_side.center(i);
        double row = 0.0;
        for (std::size_t j = 0; j < x_side.v.size(); ++j) {
            const double v = x_side.v[j];
            if (v == 0.0) continue;
            const double xc = x_side.center(j);
            if (std::abs(xc - tc) <= guard) continue;
            row += v * k.point(xc, tc);
        }
        s += u * row * x_side.h;
    }
    return s * t_side.h;
}

TensorKernelForm tensor_hilbert_form() { return {hilbert_factor(), hilbert_factor(), 1.0}; }
TensorKernelForm zero_form() { return {zero_factor(), zero_factor(), 1.0}; }

GridFn cutoff_grid(const DyadicInterval& s, int k, std::size_t cells) {
    const double radius = std::ldexp(s.length(), k);
    const double c = s.center();
    GridFn g;
    g.left = c - 2.0 * radius;
    g.h = 4.0 * radius / static_cast<double>(cells);
    g.v.resize(cells);
    for (std::size_t i = 0; i < cells; ++i) g.v[i] = plateau_value(g.center(i), c, radius);
    return g;
}

double LimitSequence::max_ratio_tail(int from_k) const {
    double m = 0.0;
    for (std::size_t i = static_cast<std::size_t>(std::max(from_k - 1, 0)); i < ratios.size(); ++i)
        m = std::max(m, ratios[i]);
    return m;
}

namespace {
LimitSequence finish_sequence(std::vector<double>&& values) {
    LimitSequence seq;
    seq.values = std::move(values);
    for (std::size_t i = 0; i + 1 < seq.values.size(); ++i)
        seq.differences.push_back(std::abs(seq.values[i + 1] - seq.values[i]));
    for (std::size_t i = 0; i + 1 < seq.differences.size(); ++i)
        seq.ratios.push_back(seq.differences[i] > 0.0
                                 ? seq.differences[i + 1] / seq.differences[i]
                                 : 0.0);
    seq.value = seq.values.empty() ? 0.0 : seq.values.back();
    return seq;
}
} // namespace

LimitSequence t1_limit(const TensorKernelForm& form, const Signal2D& f, const DyadicRectangle& s,
                       int kmax, std::size_t cutoff_cells) {
    // marginal mean-zero precondition
    {
        const double h1 = f.window.i1.length() / static_cast<double>(f.n1());
        const double h2 = f.window.i2.length() / static_cast<double>(f.n2());
        const double scale = std::max(f.sup_norm(), 1e-300);
        for (std::size_t j = 0; j < f.n2(); ++j) {
            double col = 0.0;
            for (std::size_t i = 0; i < f.n1(); ++i) col += f.at(i, j);
            if (std::abs(col * h1) > 1e-10 * scale)
                throw std::invalid_argument("t1_limit: f not mean-zero in x1");
        }
        for (std::size_t i = 0; i < f.n1(); ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < f.n2(); ++j) row += f.at(i, j);
            if (std::abs(row * h2) > 1e-10 * scale)
                throw std::invalid_argument("t1_limit: f not mean-zero in x2");
        }
    }

    // detail expansion of f: tensor structure per coefficient
    const HaarCoeffs2D c = haar_forward(f);
    std::vector<double> values;
    for (int k = 1; k <= kmax; ++k) {
        const GridFn phi1 = cutoff_grid(s.i1, k, cutoff_cells);
        const GridFn phi2 = cutoff_grid(s.i2, k, cutoff_cells);
        // per-axis pairings against the distinct Haar intervals in play
        std::map<DyadicInterval, double> p1, p2;
        for (const auto& [r, v] : c.detail) {
            if (v == 0.0) continue;
            if (!p1.count(r.i1)) {
                const Signal1D h = haar_function(f.window.i1, f.res1, r.i1);
                p1[r.i1] = kernel_pairing(form.k1, phi1, GridFn::from_signal(h));
            }
            if (!p2.count(r.i2)) {
                const Signal1D h = haar_function(f.window.i2, f.res2, r.i2);
                p2[r.i2] = kernel_pairing(form.k2, phi2, GridFn::from_signal(h));
            }
        }
        double total = 0.0;
        for (const auto& [r, v] : c.detail)
            if (v != 0.0) total += v * p1[r.i1] * p2[r.i2];
        values.push_back(total);
    }
    return finish_sequence(std::move(values));
}

LimitSequence restricted_t1_limit(const TensorKernelForm& form, const GridFn& phi_s1,
                                  const GridFn& psi_s1, const DyadicInterval& s2, const GridFn& f,
                                  int kmax, std::size_t cutoff_cells) {
    if (std::abs(f.integral()) > 1e-10 * std::max(f.l1_norm(), 1e-300))
        throw std::invalid_argument("restricted_t1_limit: f must have mean zero");
    const double axis1 = kernel_pairing(form.k1, phi_s1, psi_s1);
    std::vector<double> values;
    for (int k = 1; k <= kmax; ++k) {
        const GridFn phi2 = cutoff_grid(s2, k, cutoff_cells);
        values.push_back(axis1 * kernel_pairing(form.k2, phi2, f));
    }
    return finish_sequence(std::move(values));
}

DisjointLimitResult disjoint_restricted_t1_limit(const TensorKernelForm& form,
                                                 const GridFn& phi_r2, const GridFn& psi_s2,
                                                 const DyadicInterval& r2,
                                                 const DyadicInterval& s2,
                                                 const DyadicInterval& s1, const GridFn& f,
                                                 int kmax, std::size_t cutoff_cells) {
    if (std::abs(f.integral()) > 1e-10 * std::max(f.l1_norm(), 1e-300))
        throw std::invalid_argument("disjoint_restricted_t1_limit: f must have mean zero");
    DisjointLimitResult out;
    const double axis2 = kernel_pairing(form.k2, phi_r2, psi_s2);
    std::vector<double> values;
    for (int k = 1; k <= kmax; ++k) {
        const GridFn phi1 = cutoff_grid(s1, k, cutoff_cells);
        values.push_back(kernel_pairing(form.k1, phi1, f) * axis2);
    }
    out.seq = finish_sequence(std::move(values));
    out.predicted_prefactor =
        std::pow(s2.length() / r2.length(), 0.5 + form.delta) *
        std::pow(diam_union(r2, s2) / r2.length(), -(1.0 + form.delta));
    return out;
}

// ---- bump decay ------------------------------------------------------

namespace {

// Mean-zero bump on its own grid, supported on 2I.
GridFn bump_grid(const DyadicInterval& i, std::size_t cells) {
    const double c = i.center(), r = i.length();
    GridFn g;
    g.left = c - r;
    g.h = 2.0 * r / static_cast<double>(cells);
    g.v.resize(cells);
    for (std::size_t j = 0; j < cells; ++j) {
        const double a = (g.left + static_cast<double>(j) * g.h - c) / r;
        const double b = a + g.h / r;
        g.v[j] = (bump_profile(b) - bump_profile(a)) / (b - a) / r;
    }
    const double n = g.l2_norm();
    for (double& x : g.v) x /= n;
    return g;
}

} // namespace

PlaneFit fit_plane(const std::vector<double>& u1, const std::vector<double>& u2,
                   const std::vector<double>& val) {
    const std::size_t n = val.size();
    if (n < 3) return {};
    Eigen::MatrixXd a(static_cast<Eigen::Index>(n), 3);
    Eigen::VectorXd y(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        a(static_cast<Eigen::Index>(i), 0) = 1.0;
        a(static_cast<Eigen::Index>(i), 1) = u1[i];
        a(static_cast<Eigen::Index>(i), 2) = u2[i];
        y[static_cast<Eigen::Index>(i)] = val[i];
    }
    const Eigen::VectorXd beta = (a.transpose() * a).ldlt().solve(a.transpose() * y);
    PlaneFit fit;
    fit.a = beta[0];
    fit.b1 = beta[1];
    fit.b2 = beta[2];
    const double ss_res = (y - a * beta).squaredNorm();
    const double ss_tot = (y.array() - y.mean()).matrix().squaredNorm();
    fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

DecayTable bump_decay_experiment(const TensorKernelForm& form, const std::vector<int>& es,
                                 const std::vector<std::int64_t>& ms, std::size_t bump_cells) {
    DecayTable out;
    const DyadicInterval base{0, 0}; // unit interval per axis
    const GridFn psi_r = bump_grid(base, bump_cells);

    // per-axis magnitude tables
    auto axis_table = [&](const KernelFactor& k) {
        std::vector<std::vector<double>> t(es.size(), std::vector<double>(ms.size(), 0.0));
        for (std::size_t ei = 0; ei < es.size(); ++ei) {
            for (std::size_t mi = 0; mi < ms.size(); ++mi) {
                // rightmost member of the class: S inside the band-m interval
                const auto fam = family(base, es[ei], ms[mi], ClipRange{-1e6, 1e6});
                if (fam.empty()) continue;
                const DyadicInterval s = fam.back();
                const GridFn psi_s = bump_grid(s, bump_cells);
                t[ei][mi] = std::abs(kernel_pairing(k, psi_r, psi_s));
            }
        }
        return t;
    };
    const auto t1 = axis_table(form.k1);
    const auto t2 = axis_table(form.k2);

    std::vector<double> ue, um, lv1, lv2;
    for (std::size_t ei = 0; ei < es.size(); ++ei) {
        for (std::size_t mi = 0; mi < ms.size(); ++mi) {
            if (t1[ei][mi] <= 0.0 || t2[ei][mi] <= 0.0) continue;
            ue.push_back(static_cast<double>(es[ei]));
            um.push_back(std::log(static_cast<double>(ms[mi])));
            lv1.push_back(std::log(t1[ei][mi]));
            lv2.push_back(std::log(t2[ei][mi]));
        }
    }
    const PlaneFit f1 = fit_plane(ue, um, lv1);
    const PlaneFit f2 = fit_plane(ue, um, lv2);
    out.fit.ecc_slope1 = -f1.b1 / std::log(2.0);
    out.fit.ecc_slope2 = -f2.b1 / std::log(2.0);
    out.fit.dist_slope1 = f1.b2;
    out.fit.dist_slope2 = f2.b2;
    out.fit.r2_axis1 = f1.r2;
    out.fit.r2_axis2 = f2.r2;

    for (std::size_t e1 = 0; e1 < es.size(); ++e1)
        for (std::size_t m1 = 0; m1 < ms.size(); ++m1)
            for (std::size_t e2 = 0; e2 < es.size(); ++e2)
                for (std::size_t m2 = 0; m2 < ms.size(); ++m2) {
                    DecayRow row;
                    row.e1 = es[e1];
                    row.e2 = es[e2];
                    row.m1 = ms[m1];
                    row.m2 = ms[m2];
                    row.value = t1[e1][m1] * t2[e2][m2];
                    row.ok = row.value > 0.0;
                    out.rows.push_back(row);
                }
    return out;
}

} // namespace dyadlab
