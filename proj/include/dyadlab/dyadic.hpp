#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <vector>

namespace dyadlab {

// Half-open interval [offset*2^-level, (offset+1)*2^-level).
// level may be negative (long intervals). All geometry derived from the
// (level, offset) pair is exact in double precision for the ranges used here
// (|level| < 48, |offset| < 2^52).
struct DyadicInterval {
    int level = 0;
    std::int64_t offset = 0;

    friend auto operator<=>(const DyadicInterval&, const DyadicInterval&) = default;

    double length() const { return std::ldexp(1.0, -level); }
    double left() const { return std::ldexp(static_cast<double>(offset), -level); }
    double right() const { return std::ldexp(static_cast<double>(offset) + 1.0, -level); }
    double center() const { return std::ldexp(static_cast<double>(offset) + 0.5, -level); }

    DyadicInterval parent() const { return {level - 1, offset >> 1}; }
    DyadicInterval child_left() const { return {level + 1, 2 * offset}; }
    DyadicInterval child_right() const { return {level + 1, 2 * offset + 1}; }

    // Ancestor at a coarser level (lv <= level).
    DyadicInterval ancestor(int lv) const { return {lv, offset >> (level - lv)}; }

    bool contains(const DyadicInterval& other) const {
        return other.level >= level && (other.offset >> (other.level - level)) == offset;
    }
    bool contains_point(double x) const { return left() <= x && x < right(); }
    bool intersects(const DyadicInterval& other) const {
        return contains(other) || other.contains(*this);
    }
};

struct DyadicRectangle {
    DyadicInterval i1, i2;

    friend auto operator<=>(const DyadicRectangle&, const DyadicRectangle&) = default;

    double area() const { return i1.length() * i2.length(); }
    bool contains(const DyadicRectangle& r) const {
        return i1.contains(r.i1) && i2.contains(r.i2);
    }
    bool intersects(const DyadicRectangle& r) const {
        return i1.intersects(r.i1) && i2.intersects(r.i2);
    }
};

// Clipping range for enumerations. Not required to be a dyadic interval, so
// symmetric ambients like [-2^W, 2^W) are expressible.
struct ClipRange {
    double lo = 0.0;
    double hi = 0.0;

    ClipRange() = default;
    ClipRange(double l, double h) : lo(l), hi(h) {}
    ClipRange(const DyadicInterval& w) : lo(w.left()), hi(w.right()) {}

    static ClipRange symmetric(int w) {
        return {-std::ldexp(1.0, w), std::ldexp(1.0, w)};
    }
    bool intersects(const DyadicInterval& i) const { return i.left() < hi && i.right() > lo; }
    bool contains(const DyadicInterval& i) const { return lo <= i.left() && i.right() <= hi; }
};

struct ClipRect {
    ClipRange r1, r2;

    ClipRect() = default;
    ClipRect(ClipRange a, ClipRange b) : r1(a), r2(b) {}
    ClipRect(const DyadicRectangle& w) : r1(w.i1), r2(w.i2) {}
};

// Length of the smallest closed interval containing a and b.
double diam_union(const DyadicInterval& a, const DyadicInterval& b);

// Relative-distance band index: ceil(diam(a ∪ b) / max(|a|,|b|)), computed in
// exact integer arithmetic. Always >= 1; equals 1 iff a and b are nested.
std::int64_t band_index(const DyadicInterval& a, const DyadicInterval& b);

// Eccentricity / relative-distance class membership: S ∈ R_{e,m}.
// |R| = 2^e |S| and band_index(R, S) == m.
struct EccentricityClass {
    int e = 0;
    std::int64_t m = 1;

    bool member(const DyadicInterval& r, const DyadicInterval& s) const {
        return s.level == r.level + e && band_index(r, s) == m;
    }
};

// All dyadic J with |I| = 2^e |J|, band_index(I, J) == m and J meeting the
// window; sorted left to right. Empty result is not an error.
std::vector<DyadicInterval> family(const DyadicInterval& i, int e, std::int64_t m,
                                   const ClipRange& window);

// Cartesian product of per-coordinate families.
std::vector<DyadicRectangle> rect_family(const DyadicRectangle& r, int e1, int e2,
                                         std::int64_t m1, std::int64_t m2,
                                         const ClipRect& window);

} // namespace dyadlab
