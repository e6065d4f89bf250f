#include "dyadlab/square.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dyadlab/bump.hpp"
#include "dyadlab/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dyadlab {

std::set<DyadicInterval> ShiftSpec::injective_domain() const {
    std::map<DyadicInterval, int> hits;
    for (const auto& [i, j] : sel) ++hits[j];
    std::set<DyadicInterval> out;
    for (const auto& [i, j] : sel)
        if (hits[j] == 1) out.insert(i);
    return out;
}

ShiftSpec ShiftSpec::inverse() const {
    ShiftSpec out;
    out.k = -k;
    out.n = n;
    const auto dom = injective_domain();
    for (const auto& i : dom) out.sel.emplace(sel.at(i), i);
    return out;
}

namespace {

template <class Chooser>
ShiftSpec build_selector(int k, std::int64_t n, const DyadicInterval& window, int res,
                         const ClipRange& ambient, Chooser&& choose) {
    ShiftSpec spec;
    spec.k = k;
    spec.n = n;
    Basis1D basis{window, res};
    for (std::size_t idx = 1; idx < basis.size(); ++idx) {
        const DyadicInterval i = basis.interval_of(idx);
        const auto fam = family(i, k, n, ambient);
        if (!fam.empty()) spec.sel.emplace(i, choose(i, fam));
    }
    return spec;
}

} // namespace

ShiftSpec leftmost_selector(int k, std::int64_t n, const DyadicInterval& window, int res,
                            const ClipRange& ambient) {
    return build_selector(k, n, window, res, ambient,
                          [](const DyadicInterval&, const std::vector<DyadicInterval>& fam) {
                              return fam.front();
                          });
}

ShiftSpec seeded_selector(int k, std::int64_t n, const DyadicInterval& window, int res,
                          const ClipRange& ambient, std::uint64_t seed) {
    return build_selector(
        k, n, window, res, ambient,
        [seed](const DyadicInterval& i, const std::vector<DyadicInterval>& fam) {
            Rng rng(mix_seed(seed, static_cast<std::uint64_t>(i.level),
                             static_cast<std::uint64_t>(i.offset)));
            return fam[rng.below(fam.size())];
        });
}

Signal1D square_fn(const Signal1D& f) {
    const HaarCoeffs1D c = haar_forward(f);
    Signal1D out(f.window, f.res);
    for (const auto& [i, v] : c.detail) {
        if (v == 0.0) continue;
        const double w = v * v / i.length();
        auto [lo, hi] = out.cell_range(i);
        for (std::size_t idx = lo; idx < hi; ++idx) out.v[idx] += w;
    }
    for (double& x : out.v) x = std::sqrt(x);
    return out;
}

StepFn square_fn(const DetailExpansion1D& f) { return f.square_function(); }

namespace {

StepFn boxes_sqrt(std::vector<std::pair<DyadicInterval, double>>&& boxes) {
    return StepFn::from_boxes(boxes).map([](double v) { return std::sqrt(std::max(v, 0.0)); });
}

} // namespace

StepFn modified_square_fn(const HaarCoeffs1D& c, const ShiftSpec& spec, double tol) {
    std::vector<std::pair<DyadicInterval, double>> boxes;
    for (const auto& [i, v] : c.detail) {
        if (v == 0.0) continue;
        const DyadicInterval* j = spec.target(i);
        if (!j) {
            if (std::abs(v) > tol)
                throw std::runtime_error("modified_square_fn: selector undefined for an interval "
                                         "carrying a coefficient");
            continue;
        }
        boxes.emplace_back(*j, v * v / j->length());
    }
    return boxes_sqrt(std::move(boxes));
}

StepFn modified_square_fn(const Signal1D& f, const ShiftSpec& spec, double tol) {
    return modified_square_fn(haar_forward(f), spec, tol);
}

DetailExpansion1D shift_op(const HaarCoeffs1D& c, const ShiftSpec& spec, double tol) {
    DetailExpansion1D out;
    for (const auto& [i, v] : c.detail) {
        if (v == 0.0) continue;
        const DyadicInterval* j = spec.target(i);
        if (!j) {
            if (std::abs(v) > tol)
                throw std::runtime_error("shift_op: selector undefined for an interval carrying "
                                         "a coefficient");
            continue;
        }
        out.coeff[*j] += v;
    }
    return out;
}

DetailExpansion1D shift_op(const Signal1D& f, const ShiftSpec& spec, double tol) {
    return shift_op(haar_forward(f), spec, tol);
}

StepFn class_square_fn(const HaarCoeffs1D& c, int k, std::int64_t n, const ClipRange& ambient) {
    std::vector<std::pair<DyadicInterval, double>> boxes;
    for (const auto& [i, v] : c.detail) {
        if (v == 0.0) continue;
        for (const auto& j : family(i, k, n, ambient))
            boxes.emplace_back(j, v * v / j.length());
    }
    return boxes_sqrt(std::move(boxes));
}

Signal2D double_square_fn(const Signal2D& f) {
    const HaarCoeffs2D c = haar_forward(f);
    Signal2D out(f.window, f.res1, f.res2);
    Signal1D ax1(f.window.i1, f.res1), ax2(f.window.i2, f.res2);
    for (const auto& [r, v] : c.detail) {
        if (v == 0.0) continue;
        const double w = v * v / r.area();
        auto [a_lo, a_hi] = ax1.cell_range(r.i1);
        auto [b_lo, b_hi] = ax2.cell_range(r.i2);
        for (std::size_t a = a_lo; a < a_hi; ++a)
            for (std::size_t b = b_lo; b < b_hi; ++b) out.at(a, b) += w;
    }
    for (double& x : out.v) x = std::sqrt(x);
    return out;
}

DetailExpansion2D double_shift_op(const HaarCoeffs2D& c, const ShiftSpec& s1, const ShiftSpec& s2,
                                  double tol) {
    DetailExpansion2D out;
    for (const auto& [r, v] : c.detail) {
        if (v == 0.0) continue;
        const DyadicInterval* j1 = s1.target(r.i1);
        const DyadicInterval* j2 = s2.target(r.i2);
        if (!j1 || !j2) {
            if (std::abs(v) > tol)
                throw std::runtime_error("double_shift_op: selector undefined for a rectangle "
                                         "carrying a coefficient");
            continue;
        }
        out.coeff[{*j1, *j2}] += v;
    }
    return out;
}

namespace {
double dyadic_overlap(const DyadicInterval& a, const DyadicInterval& b) {
    if (a.contains(b)) return b.length();
    if (b.contains(a)) return a.length();
    return 0.0;
}
} // namespace

double BoxSum2D::l2_norm() const {
    double s = 0.0;
    for (const auto& t : terms) s += t.w * t.a.length() * t.b.length();
    return std::sqrt(std::max(s, 0.0));
}

double BoxSum2D::l4_norm() const {
    // ∫ (Σ w χ)^2 = Σ_{t,u} w_t w_u |A_t ∩ A_u| |B_t ∩ B_u|
    double s = 0.0;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(terms.size());
#ifdef _OPENMP
#pragma omp parallel for reduction(+ : s) schedule(static)
#endif
    for (std::ptrdiff_t t = 0; t < n; ++t) {
        double row = 0.0;
        for (std::ptrdiff_t u = 0; u < n; ++u) {
            const double oa = dyadic_overlap(terms[t].a, terms[u].a);
            if (oa == 0.0) continue;
            const double ob = dyadic_overlap(terms[t].b, terms[u].b);
            if (ob == 0.0) continue;
            row += terms[u].w * oa * ob;
        }
        s += terms[t].w * row;
    }
    return std::pow(std::max(s, 0.0), 0.25);
}

double BoxSum2D::value_at(double x1, double x2) const {
    double s = 0.0;
    for (const auto& t : terms)
        if (t.a.contains_point(x1) && t.b.contains_point(x2)) s += t.w;
    return s;
}

BoxSum2D double_modified_square_fn(const HaarCoeffs2D& c, const ShiftSpec& s1,
                                   const ShiftSpec& s2, double tol) {
    BoxSum2D out;
    for (const auto& [r, v] : c.detail) {
        if (v == 0.0) continue;
        const DyadicInterval* j1 = s1.target(r.i1);
        const DyadicInterval* j2 = s2.target(r.i2);
        if (!j1 || !j2) {
            if (std::abs(v) > tol)
                throw std::runtime_error("double_modified_square_fn: selector undefined for a "
                                         "rectangle carrying a coefficient");
            continue;
        }
        out.terms.push_back({*j1, *j2, v * v / (j1->length() * j2->length())});
    }
    return out;
}

BoxSum2D double_class_square_fn(const HaarCoeffs2D& c, int k1, int k2, std::int64_t n1,
                                std::int64_t n2, const ClipRect& ambient) {
    BoxSum2D out;
    for (const auto& [r, v] : c.detail) {
        if (v == 0.0) continue;
        const auto f1 = family(r.i1, k1, n1, ambient.r1);
        const auto f2 = family(r.i2, k2, n2, ambient.r2);
        for (const auto& a : f1)
            for (const auto& b : f2)
                out.terms.push_back({a, b, v * v / (a.length() * b.length())});
    }
    return out;
}

// ---- test signals and operator norms ---------------------------------------

Signal1D make_test_signal(const DyadicInterval& window, int res, std::uint64_t seed,
                          std::string* kind) {
    Rng rng(seed);
    const int which = static_cast<int>(rng.below(3));
    Signal1D f(window, res);
    Basis1D basis{window, res};
    switch (which) {
        case 0: { // Haar-sparse
            if (kind) *kind = "sparse";
            const std::size_t n = f.size();
            const std::size_t terms = 1 + rng.below(std::max<std::size_t>(n / 8, 2));
            HaarCoeffs1D c;
            c.window = window;
            c.res = res;
            for (std::size_t t = 0; t < terms; ++t) {
                const std::size_t idx = 1 + rng.below(n - 1);
                c.detail[basis.interval_of(idx)] = rng.normal();
            }
            f = haar_inverse(c);
            break;
        }
        case 1: { // single smooth bump, occasionally mean-zero
            if (kind) *kind = "bump";
            const int depth = 2 + static_cast<int>(rng.below(std::max(res - 3, 1)));
            const std::int64_t pos = static_cast<std::int64_t>(
                1 + rng.below((std::uint64_t{1} << depth) - 2 > 0 ? (std::uint64_t{1} << depth) - 2
                                                                  : 1));
            BumpSpec spec{{window.level + depth, (window.offset << depth) + pos}, 2, 1.0,
                          rng.below(2) == 0};
            try {
                f = make_bump(spec, window, res);
            } catch (const std::invalid_argument&) {
                f = haar_function(window, res, window); // fallback at coarse depth
            }
            f *= rng.uniform(0.5, 2.0);
            break;
        }
        default: { // CZ-style spike: tall, thin, mean-zero pair
            if (kind) *kind = "spike";
            const std::size_t n = f.size();
            const std::size_t pos = rng.below(n - 1);
            const double height = std::exp(rng.uniform(0.0, 5.0));
            f.v[pos] = height;
            f.v[pos + 1] = -height;
            break;
        }
    }
    return f;
}

OpNormResult empirical_opnorm(const std::function<double(const Signal1D&)>& op_p_norm, double p,
                              int trials, std::uint64_t seed, const DyadicInterval& window,
                              int res) {
    if (trials < 1) throw std::domain_error("empirical_opnorm: trials < 1");
    if (!(p > 1.0) || std::isinf(p)) throw std::domain_error("empirical_opnorm: p outside (1,inf)");
    std::vector<double> ratio(static_cast<std::size_t>(trials), 0.0);
    std::vector<std::string> kinds(static_cast<std::size_t>(trials));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t t = 0; t < trials; ++t) {
        const Signal1D f =
            make_test_signal(window, res, mix_seed(seed, static_cast<std::uint64_t>(t)),
                             &kinds[static_cast<std::size_t>(t)]);
        const double denom = f.lp_norm(p);
        if (denom > 0.0) ratio[static_cast<std::size_t>(t)] = op_p_norm(f) / denom;
    }
    OpNormResult out;
    for (std::size_t t = 0; t < ratio.size(); ++t) {
        if (ratio[t] > out.norm) {
            out.norm = ratio[t];
            out.argmax_trial = t;
            out.argmax_kind = kinds[t];
        }
    }
    return out;
}

namespace ref {

Signal1D square_fn(const Signal1D& f) {
    const HaarCoeffs1D c = dyadlab::haar_forward(f);
    Signal1D out(f.window, f.res);
    for (std::size_t idx = 0; idx < f.size(); ++idx) {
        double s = 0.0;
        for (DyadicInterval i = f.cell(idx); i.level > f.window.level;) {
            i = i.parent();
            auto it = c.detail.find(i);
            if (it != c.detail.end()) s += it->second * it->second / i.length();
        }
        out.v[idx] = std::sqrt(s);
    }
    return out;
}

Signal2D double_square_fn(const Signal2D& f) {
    const HaarCoeffs2D c = dyadlab::haar_forward(f);
    Signal2D out(f.window, f.res1, f.res2);
    Signal1D ax1(f.window.i1, f.res1), ax2(f.window.i2, f.res2);
    for (std::size_t a = 0; a < out.n1(); ++a) {
        for (std::size_t b = 0; b < out.n2(); ++b) {
            double s = 0.0;
            for (DyadicInterval i = ax1.cell(a); i.level > f.window.i1.level;) {
                i = i.parent();
                for (DyadicInterval j = ax2.cell(b); j.level > f.window.i2.level;) {
                    j = j.parent();
                    auto it = c.detail.find({i, j});
                    if (it != c.detail.end())
                        s += it->second * it->second / (i.length() * j.length());
                }
            }
            out.at(a, b) = std::sqrt(s);
        }
    }
    return out;
}

} // namespace ref

} // namespace dyadlab
