#include "dyadlab/dyadic.hpp"

#include <algorithm>
#include <cassert>

namespace dyadlab {

double diam_union(const DyadicInterval& a, const DyadicInterval& b) {
    return std::max(a.right(), b.right()) - std::min(a.left(), b.left());
}

std::int64_t band_index(const DyadicInterval& a, const DyadicInterval& b) {
    // Work in units of the finer cell 2^-L so everything stays integral.
    const int fine = std::max(a.level, b.level);
    const std::int64_t la = a.offset << (fine - a.level);
    const std::int64_t lb = b.offset << (fine - b.level);
    const std::int64_t ra = la + (std::int64_t{1} << (fine - a.level));
    const std::int64_t rb = lb + (std::int64_t{1} << (fine - b.level));
    const std::int64_t diam = std::max(ra, rb) - std::min(la, lb);
    const std::int64_t maxlen = std::int64_t{1} << (fine - std::min(a.level, b.level));
    return (diam + maxlen - 1) / maxlen; // ceil
}

std::vector<DyadicInterval> family(const DyadicInterval& i, int e, std::int64_t m,
                                   const ClipRange& window) {
    assert(m >= 1);
    const int lj = i.level + e;
    // Candidate offsets are limited by diam <= m * max(|I|,|J|).
    const double maxlen = std::max(i.length(), std::ldexp(1.0, -lj));
    const double lo = std::max(window.lo, i.right() - (double)m * maxlen);
    const double hi = std::min(window.hi, i.left() + (double)m * maxlen);
    if (lo >= hi) return {};
    const auto o_min = (std::int64_t)std::floor(std::ldexp(lo, lj));
    const auto o_max = (std::int64_t)std::ceil(std::ldexp(hi, lj));
    std::vector<DyadicInterval> out;
    for (std::int64_t o = o_min; o < o_max; ++o) {
        DyadicInterval j{lj, o};
        if (!window.intersects(j)) continue;
        if (band_index(i, j) == m) out.push_back(j);
    }
    std::sort(out.begin(), out.end(),
              [](const DyadicInterval& a, const DyadicInterval& b) { return a.left() < b.left(); });
    return out;
}

std::vector<DyadicRectangle> rect_family(const DyadicRectangle& r, int e1, int e2,
                                         std::int64_t m1, std::int64_t m2,
                                         const ClipRect& window) {
    const auto f1 = family(r.i1, e1, m1, window.r1);
    const auto f2 = family(r.i2, e2, m2, window.r2);
    std::vector<DyadicRectangle> out;
    out.reserve(f1.size() * f2.size());
    for (const auto& a : f1)
        for (const auto& b : f2) out.push_back({a, b});
    return out;
}

} // namespace dyadlab
