#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dyadlab/dyadic.hpp"

namespace dyadlab {

// Real-valued function sampled on a uniform grid over a dyadic window, with
// exact piecewise-constant semantics: the value of cell i is the value of the
// function on the whole half-open cell. Integrals and L^p norms are exact cell
// sums.
struct Signal1D {
    DyadicInterval window;
    int res = 0; // 2^res cells
    std::vector<double> v;

    Signal1D() = default;
    Signal1D(DyadicInterval w, int r) : window(w), res(r), v(std::size_t{1} << r, 0.0) {}

    std::size_t size() const { return v.size(); }
    double cell_width() const { return std::ldexp(window.length(), -res); }
    int cell_level() const { return window.level + res; }

    DyadicInterval cell(std::size_t i) const {
        return {cell_level(), (window.offset << res) + static_cast<std::int64_t>(i)};
    }
    double cell_center(std::size_t i) const { return cell(i).center(); }

    // Cell range [first, last) covered by a dyadic interval; empty if the
    // interval misses the window.
    std::pair<std::size_t, std::size_t> cell_range(const DyadicInterval& i) const;

    double integral() const;
    double inner(const Signal1D& g) const; // same grid required
    double lp_norm(double p) const;        // p in [1, inf]; exact on the grid
    double l2_norm() const { return lp_norm(2.0); }
    double sup_norm() const;

    Signal1D& operator*=(double c);
    Signal1D& operator+=(const Signal1D& g);
    Signal1D& operator-=(const Signal1D& g);
};

struct Signal2D {
    DyadicRectangle window;
    int res1 = 0, res2 = 0; // 2^res1 x 2^res2 cells
    std::vector<double> v;  // row-major: v[i1 * n2 + i2]

    Signal2D() = default;
    Signal2D(DyadicRectangle w, int r1, int r2)
        : window(w), res1(r1), res2(r2), v((std::size_t{1} << r1) * (std::size_t{1} << r2), 0.0) {}

    std::size_t n1() const { return std::size_t{1} << res1; }
    std::size_t n2() const { return std::size_t{1} << res2; }
    double& at(std::size_t i1, std::size_t i2) { return v[i1 * n2() + i2]; }
    double at(std::size_t i1, std::size_t i2) const { return v[i1 * n2() + i2]; }
    double cell_area() const {
        return std::ldexp(window.i1.length(), -res1) * std::ldexp(window.i2.length(), -res2);
    }

    double integral() const;
    double inner(const Signal2D& g) const;
    double lp_norm(double p) const;
    double l2_norm() const { return lp_norm(2.0); }
    double sup_norm() const;

    Signal2D& operator*=(double c);
    Signal2D& operator+=(const Signal2D& g);
    Signal2D& operator-=(const Signal2D& g);
};

// (f1 ⊗ f2)(x1, x2) = f1(x1) f2(x2), exact on the grid.
Signal2D tensor(const Signal1D& f1, const Signal1D& f2);

// Indicator of a dyadic interval/rectangle restricted to the grid.
Signal1D indicator(const DyadicInterval& window, int res, const DyadicInterval& i);
Signal1D haar_function(const DyadicInterval& window, int res, const DyadicInterval& i);

// Serialization: small header (window, resolution) + row-major values.
void save_csv(const Signal1D& f, const std::string& path);
void save_csv(const Signal2D& f, const std::string& path);
Signal1D load_csv_1d(const std::string& path);
Signal2D load_csv_2d(const std::string& path);
void save_binary(const Signal1D& f, const std::string& path);
Signal1D load_binary_1d(const std::string& path);

} // namespace dyadlab
