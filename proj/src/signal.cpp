#include "dyadlab/signal.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dyadlab {

std::pair<std::size_t, std::size_t> Signal1D::cell_range(const DyadicInterval& i) const {
    const int cl = cell_level();
    std::int64_t lo, hi; // in cell units relative to window start
    const std::int64_t base = window.offset << res;
    if (i.level <= cl) {
        lo = (i.offset << (cl - i.level)) - base;
        hi = ((i.offset + 1) << (cl - i.level)) - base;
    } else {
        // finer than a cell: covers at most the single containing cell, which
        // would break exact piecewise-constant semantics; treat as empty
        return {0, 0};
    }
    lo = std::max<std::int64_t>(lo, 0);
    hi = std::min<std::int64_t>(hi, static_cast<std::int64_t>(size()));
    if (lo >= hi) return {0, 0};
    return {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
}

double Signal1D::integral() const {
    double s = 0.0;
    for (double x : v) s += x;
    return s * cell_width();
}

double Signal1D::inner(const Signal1D& g) const {
    assert(window == g.window && res == g.res);
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * g.v[i];
    return s * cell_width();
}

double Signal1D::sup_norm() const {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double Signal1D::lp_norm(double p) const {
    if (p < 1.0) throw std::domain_error("lp_norm: p < 1");
    if (std::isinf(p)) return sup_norm();
    double s = 0.0;
    for (double x : v) s += std::pow(std::abs(x), p);
    return std::pow(s * cell_width(), 1.0 / p);
}

Signal1D& Signal1D::operator*=(double c) {
    for (double& x : v) x *= c;
    return *this;
}
Signal1D& Signal1D::operator+=(const Signal1D& g) {
    assert(window == g.window && res == g.res);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += g.v[i];
    return *this;
}
Signal1D& Signal1D::operator-=(const Signal1D& g) {
    assert(window == g.window && res == g.res);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= g.v[i];
    return *this;
}

double Signal2D::integral() const {
    double s = 0.0;
    for (double x : v) s += x;
    return s * cell_area();
}

double Signal2D::inner(const Signal2D& g) const {
    assert(window == g.window && res1 == g.res1 && res2 == g.res2);
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * g.v[i];
    return s * cell_area();
}

double Signal2D::sup_norm() const {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double Signal2D::lp_norm(double p) const {
    if (p < 1.0) throw std::domain_error("lp_norm: p < 1");
    if (std::isinf(p)) return sup_norm();
    double s = 0.0;
    for (double x : v) s += std::pow(std::abs(x), p);
    return std::pow(s * cell_area(), 1.0 / p);
}

Signal2D& Signal2D::operator*=(double c) {
    for (double& x : v) x *= c;
    return *this;
}
Signal2D& Signal2D::operator+=(const Signal2D& g) {
    assert(window == g.window);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += g.v[i];
    return *this;
}
Signal2D& Signal2D::operator-=(const Signal2D& g) {
    assert(window == g.window);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= g.v[i];
    return *this;
}

Signal2D tensor(const Signal1D& f1, const Signal1D& f2) {
    Signal2D out({f1.window, f2.window}, f1.res, f2.res);
    for (std::size_t i = 0; i < f1.size(); ++i)
        for (std::size_t j = 0; j < f2.size(); ++j) out.at(i, j) = f1.v[i] * f2.v[j];
    return out;
}

Signal1D indicator(const DyadicInterval& window, int res, const DyadicInterval& i) {
    Signal1D f(window, res);
    auto [lo, hi] = f.cell_range(i);
    for (std::size_t k = lo; k < hi; ++k) f.v[k] = 1.0;
    return f;
}

Signal1D haar_function(const DyadicInterval& window, int res, const DyadicInterval& i) {
    Signal1D f(window, res);
    const double a = 1.0 / std::sqrt(i.length());
    auto [ll, lh] = f.cell_range(i.child_left());
    for (std::size_t k = ll; k < lh; ++k) f.v[k] = a;
    auto [rl, rh] = f.cell_range(i.child_right());
    for (std::size_t k = rl; k < rh; ++k) f.v[k] = -a;
    return f;
}

// ---- serialization ---------------------------------------------------------

void save_csv(const Signal1D& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_csv: cannot open " + path);
    out << "signal1d," << f.window.level << "," << f.window.offset << "," << f.res << "\r\n";
    out.precision(17);
    for (std::size_t i = 0; i < f.size(); ++i) out << f.v[i] << "\r\n";
}

void save_csv(const Signal2D& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_csv: cannot open " + path);
    out << "signal2d," << f.window.i1.level << "," << f.window.i1.offset << ","
        << f.window.i2.level << "," << f.window.i2.offset << "," << f.res1 << "," << f.res2
        << "\r\n";
    out.precision(17);
    for (std::size_t i = 0; i < f.n1(); ++i) {
        for (std::size_t j = 0; j < f.n2(); ++j) {
            if (j) out << ",";
            out << f.at(i, j);
        }
        out << "\r\n";
    }
}

namespace {
std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        if (!field.empty() && field.back() == '\r') field.pop_back();
        out.push_back(field);
    }
    return out;
}
} // namespace

Signal1D load_csv_1d(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_csv_1d: cannot open " + path);
    std::string line;
    std::getline(in, line);
    auto hdr = split_line(line);
    if (hdr.size() != 4 || hdr[0] != "signal1d")
        throw std::runtime_error("load_csv_1d: bad header in " + path);
    Signal1D f({std::stoi(hdr[1]), std::stoll(hdr[2])}, std::stoi(hdr[3]));
    for (std::size_t i = 0; i < f.size(); ++i) {
        std::getline(in, line);
        f.v[i] = std::stod(line);
    }
    return f;
}

Signal2D load_csv_2d(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_csv_2d: cannot open " + path);
    std::string line;
    std::getline(in, line);
    auto hdr = split_line(line);
    if (hdr.size() != 7 || hdr[0] != "signal2d")
        throw std::runtime_error("load_csv_2d: bad header in " + path);
    Signal2D f({{std::stoi(hdr[1]), std::stoll(hdr[2])}, {std::stoi(hdr[3]), std::stoll(hdr[4])}},
               std::stoi(hdr[5]), std::stoi(hdr[6]));
    for (std::size_t i = 0; i < f.n1(); ++i) {
        std::getline(in, line);
        auto row = split_line(line);
        for (std::size_t j = 0; j < f.n2(); ++j) f.at(i, j) = std::stod(row[j]);
    }
    return f;
}

void save_binary(const Signal1D& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_binary: cannot open " + path);
    std::int64_t hdr[3] = {f.window.level, f.window.offset, f.res};
    out.write(reinterpret_cast<const char*>(hdr), sizeof(hdr));
    out.write(reinterpret_cast<const char*>(f.v.data()),
              static_cast<std::streamsize>(f.v.size() * sizeof(double)));
}

Signal1D load_binary_1d(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_binary_1d: cannot open " + path);
    std::int64_t hdr[3];
    in.read(reinterpret_cast<char*>(hdr), sizeof(hdr));
    Signal1D f({static_cast<int>(hdr[0]), hdr[1]}, static_cast<int>(hdr[2]));
    in.read(reinterpret_cast<char*>(f.v.data()),
            static_cast<std::streamsize>(f.v.size() * sizeof(double)));
    return f;
}

} // namespace dyadlab
