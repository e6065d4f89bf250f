#include "dyadlab/haar.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dyadlab {

double HaarCoeffs2D::total_l2_sq() const {
    double s = coarse * coarse;
    for (const auto& [k, c] : half1) s += c * c;
    for (const auto& [k, c] : half2) s += c * c;
    for (const auto& [k, c] : detail) s += c * c;
    return s;
}

namespace {

// Dense in-place analysis of one row of 2^res piecewise-constant values with
// cell width h. Output layout: c[0] coarse, c[2^d + p] detail at depth d.
void vec_forward(const double* v, double* c, int res, double h, double window_len,
                 double* work) {
    const std::size_t n = std::size_t{1} << res;
    for (std::size_t i = 0; i < n; ++i) work[i] = v[i] * h; // leaf integrals
    for (int d = res - 1; d >= 0; --d) {
        const std::size_t m = std::size_t{1} << d;
        const double inv_sqrt_len = 1.0 / std::sqrt(std::ldexp(window_len, -d));
        for (std::size_t p = 0; p < m; ++p) {
            const double a = work[2 * p], b = work[2 * p + 1];
            c[m + p] = (a - b) * inv_sqrt_len;
            work[p] = a + b;
        }
    }
    c[0] = work[0] / std::sqrt(window_len);
}

void vec_inverse(const double* c, double* v, int res, double window_len) {
    v[0] = c[0] / std::sqrt(window_len);
    for (int d = 0; d < res; ++d) {
        const std::size_t m = std::size_t{1} << d;
        const double inv_sqrt_len = 1.0 / std::sqrt(std::ldexp(window_len, -d));
        for (std::size_t p = m; p-- > 0;) {
            const double base = v[p];
            const double delta = c[m + p] * inv_sqrt_len;
            v[2 * p] = base + delta;
            v[2 * p + 1] = base - delta;
        }
    }
}

} // namespace

HaarCoeffs1D haar_forward(const Signal1D& f) {
    HaarCoeffs1D out;
    out.window = f.window;
    out.res = f.res;
    const std::size_t n = f.size();
    std::vector<double> c(n), work(n);
    vec_forward(f.v.data(), c.data(), f.res, f.cell_width(), f.window.length(), work.data());
    out.coarse = c[0];
    Basis1D basis{f.window, f.res};
    for (std::size_t idx = 1; idx < n; ++idx)
        out.detail.emplace(basis.interval_of(idx), c[idx]);
    return out;
}

Signal1D haar_inverse(const HaarCoeffs1D& c) {
    Signal1D f(c.window, c.res);
    Basis1D basis{c.window, c.res};
    std::vector<double> cv(f.size(), 0.0);
    cv[0] = c.coarse;
    for (const auto& [key, val] : c.detail) {
        if (!c.window.contains(key) || key.level >= c.window.level + c.res)
            throw std::invalid_argument("haar_inverse: coefficient key outside window/resolution");
        cv[basis.index_of(key)] = val;
    }
    vec_inverse(cv.data(), f.v.data(), c.res, c.window.length());
    return f;
}

HaarCoeffs2D haar_forward(const Signal2D& f) {
    HaarCoeffs2D out;
    out.window = f.window;
    out.res1 = f.res1;
    out.res2 = f.res2;
    const std::size_t n1 = f.n1(), n2 = f.n2();
    const double h1 = std::ldexp(f.window.i1.length(), -f.res1);
    const double h2 = std::ldexp(f.window.i2.length(), -f.res2);

    std::vector<double> c(n1 * n2);
    // axis-2 pass: rows are independent
#ifdef _OPENMP
#pragma omp parallel
#endif
    {
        std::vector<double> work(n2);
#ifdef _OPENMP
#pragma omp for
#endif
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n1); ++i)
            vec_forward(&f.v[std::size_t(i) * n2], &c[std::size_t(i) * n2], f.res2, h2,
                        f.window.i2.length(), work.data());
    }
    // axis-1 pass: columns are independent
#ifdef _OPENMP
#pragma omp parallel
#endif
    {
        std::vector<double> col(n1), coef(n1), work(n1);
#ifdef _OPENMP
#pragma omp for
#endif
        for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(n2); ++j) {
            for (std::size_t i = 0; i < n1; ++i) col[i] = c[i * n2 + j];
            // column j holds x2-pairings, piecewise constant in x1
            vec_forward(col.data(), coef.data(), f.res1, h1, f.window.i1.length(), work.data());
            for (std::size_t i = 0; i < n1; ++i) c[i * n2 + j] = coef[i];
        }
    }

    Basis1D b1{f.window.i1, f.res1}, b2{f.window.i2, f.res2};
    out.coarse = c[0];
    for (std::size_t i = 1; i < n1; ++i) out.half1.emplace(b1.interval_of(i), c[i * n2]);
    for (std::size_t j = 1; j < n2; ++j) out.half2.emplace(b2.interval_of(j), c[j]);
    for (std::size_t i = 1; i < n1; ++i)
        for (std::size_t j = 1; j < n2; ++j)
            out.detail.emplace(DyadicRectangle{b1.interval_of(i), b2.interval_of(j)},
                               c[i * n2 + j]);
    return out;
}

Signal2D haar_inverse(const HaarCoeffs2D& c) {
    Signal2D f(c.window, c.res1, c.res2);
    const std::size_t n1 = f.n1(), n2 = f.n2();
    Basis1D b1{c.window.i1, c.res1}, b2{c.window.i2, c.res2};
    std::vector<double> m(n1 * n2, 0.0);
    m[0] = c.coarse;
    for (const auto& [k, val] : c.half1) m[b1.index_of(k) * n2] = val;
    for (const auto& [k, val] : c.half2) m[b2.index_of(k)] = val;
    for (const auto& [k, val] : c.detail) m[b1.index_of(k.i1) * n2 + b2.index_of(k.i2)] = val;

#ifdef _OPENMP
#pragma omp parallel
#endif
    {
        std::vector<double> col(n1), vals(n1);
#ifdef _OPENMP
#pragma omp for
#endif
        for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(n2); ++j) {
            for (std::size_t i = 0; i < n1; ++i) col[i] = m[i * n2 + j];
            vec_inverse(col.data(), vals.data(), c.res1, c.window.i1.length());
            for (std::size_t i = 0; i < n1; ++i) m[i * n2 + j] = vals[i];
        }
    }
#ifdef _OPENMP
#pragma omp parallel
#endif
    {
        std::vector<double> vals(n2);
#ifdef _OPENMP
#pragma omp for
#endif
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n1); ++i) {
            vec_inverse(&m[std::size_t(i) * n2], vals.data(), c.res2, c.window.i2.length());
            for (std::size_t j = 0; j < n2; ++j) f.v[std::size_t(i) * n2 + j] = vals[j];
        }
    }
    return f;
}

DyadicInterval Basis1D::interval_of(std::size_t idx) const {
    assert(idx >= 1 && idx < size());
    int d = 0;
    while ((std::size_t{2} << d) <= idx) ++d;
    const std::size_t p = idx - (std::size_t{1} << d);
    return {window.level + d, (window.offset << d) + static_cast<std::int64_t>(p)};
}

std::size_t Basis1D::index_of(const DyadicInterval& i) const {
    assert(window.contains(i));
    const int d = i.level - window.level;
    const std::int64_t p = i.offset - (window.offset << d);
    return (std::size_t{1} << d) + static_cast<std::size_t>(p);
}

Signal1D Basis1D::function_of(std::size_t idx) const {
    if (idx == 0) {
        Signal1D f = indicator(window, res, window);
        f *= 1.0 / std::sqrt(window.length());
        return f;
    }
    return haar_function(window, res, interval_of(idx));
}

double Basis1D::average_on(std::size_t idx, const DyadicInterval& i) const {
    if (idx == 0) return window.contains(i) ? 1.0 / std::sqrt(window.length()) : 0.0;
    const DyadicInterval j = interval_of(idx);
    if (!j.contains(i) || j == i) return 0.0;
    // i lies strictly inside j, hence inside one half
    const bool left = !j.child_right().contains(i);
    return (left ? 1.0 : -1.0) / std::sqrt(j.length());
}

std::vector<double> coeff_vector(const HaarCoeffs1D& c) {
    Basis1D basis{c.window, c.res};
    std::vector<double> out(std::size_t{1} << c.res, 0.0);
    out[0] = c.coarse;
    for (const auto& [k, v] : c.detail) out[basis.index_of(k)] = v;
    return out;
}

std::vector<double> coeff_vector(const HaarCoeffs2D& c) {
    Basis1D b1{c.window.i1, c.res1}, b2{c.window.i2, c.res2};
    const std::size_t n2 = std::size_t{1} << c.res2;
    std::vector<double> out((std::size_t{1} << c.res1) * n2, 0.0);
    out[0] = c.coarse;
    for (const auto& [k, v] : c.half1) out[b1.index_of(k) * n2] = v;
    for (const auto& [k, v] : c.half2) out[b2.index_of(k)] = v;
    for (const auto& [k, v] : c.detail) out[b1.index_of(k.i1) * n2 + b2.index_of(k.i2)] = v;
    return out;
}

namespace ref {

HaarCoeffs1D haar_forward(const Signal1D& f) {
    HaarCoeffs1D out;
    out.window = f.window;
    out.res = f.res;
    Basis1D basis{f.window, f.res};
    out.coarse = f.inner(basis.function_of(0));
    for (std::size_t idx = 1; idx < f.size(); ++idx)
        out.detail.emplace(basis.interval_of(idx), f.inner(basis.function_of(idx)));
    return out;
}

Signal1D haar_inverse(const HaarCoeffs1D& c) {
    Basis1D basis{c.window, c.res};
    Signal1D f(c.window, c.res);
    {
        Signal1D u = basis.function_of(0);
        u *= c.coarse;
        f += u;
    }
    for (const auto& [k, v] : c.detail) {
        Signal1D u = haar_function(c.window, c.res, k);
        u *= v;
        f += u;
    }
    return f;
}

HaarCoeffs2D haar_forward(const Signal2D& f) {
    HaarCoeffs2D out;
    out.window = f.window;
    out.res1 = f.res1;
    out.res2 = f.res2;
    Basis1D b1{f.window.i1, f.res1}, b2{f.window.i2, f.res2};
    auto pair_with = [&](std::size_t a1, std::size_t a2) {
        return f.inner(tensor(b1.function_of(a1), b2.function_of(a2)));
    };
    out.coarse = pair_with(0, 0);
    for (std::size_t i = 1; i < f.n1(); ++i) out.half1.emplace(b1.interval_of(i), pair_with(i, 0));
    for (std::size_t j = 1; j < f.n2(); ++j) out.half2.emplace(b2.interval_of(j), pair_with(0, j));
    for (std::size_t i = 1; i < f.n1(); ++i)
        for (std::size_t j = 1; j < f.n2(); ++j)
            out.detail.emplace(DyadicRectangle{b1.interval_of(i), b2.interval_of(j)},
                               pair_with(i, j));
    return out;
}

} // namespace ref

} // namespace dyadlab
