#include "dyadlab/step_fn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dyadlab {

StepFn StepFn::from_boxes(const std::vector<std::pair<DyadicInterval, double>>& boxes) {
    StepFn out;
    if (boxes.empty()) return out;
    std::vector<std::pair<double, double>> events; // (position, weight delta)
    events.reserve(2 * boxes.size());
    for (const auto& [iv, w] : boxes) {
        events.emplace_back(iv.left(), w);
        events.emplace_back(iv.right(), -w);
    }
    std::sort(events.begin(), events.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    double acc = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < events.size();) {
        const double x = events[i].first;
        double delta = 0.0;
        while (i < events.size() && events[i].first == x) delta += events[i++].second;
        if (!out.bp_.empty()) out.val_.push_back(acc);
        out.bp_.push_back(x);
        acc += delta;
        scale = std::max(scale, std::abs(acc));
    }
    // cancellation dust (the accumulator returns to ~0 past the last box)
    // would otherwise survive the sqrt maps that follow
    for (double& v : out.val_)
        if (std::abs(v) <= 1e-12 * scale) v = 0.0;
    return out;
}

double StepFn::value_at(double x) const {
    if (bp_.empty() || x < bp_.front() || x >= bp_.back()) return 0.0;
    const auto it = std::upper_bound(bp_.begin(), bp_.end(), x);
    return val_[static_cast<std::size_t>(it - bp_.begin()) - 1];
}

double StepFn::lp_norm(double p) const {
    if (p < 1.0) throw std::domain_error("StepFn::lp_norm: p < 1");
    if (std::isinf(p)) return sup_norm();
    double s = 0.0;
    for (std::size_t i = 0; i < val_.size(); ++i)
        s += std::pow(std::abs(val_[i]), p) * piece_length(i);
    return std::pow(s, 1.0 / p);
}

double StepFn::sup_norm() const {
    double m = 0.0;
    for (double v : val_) m = std::max(m, std::abs(v));
    return m;
}

double StepFn::superlevel_measure(double lambda) const {
    double s = 0.0;
    for (std::size_t i = 0; i < val_.size(); ++i)
        if (val_[i] > lambda) s += piece_length(i);
    return s;
}

double StepFn::weak_l1_sup() const {
    // lambda |{f > lambda}| is maximized as lambda tends to a piece value
    // from below: sort pieces by value descending and scan cumulative length.
    std::vector<std::pair<double, double>> pieces;
    pieces.reserve(val_.size());
    for (std::size_t i = 0; i < val_.size(); ++i)
        if (val_[i] > 0.0) pieces.emplace_back(val_[i], piece_length(i));
    std::sort(pieces.begin(), pieces.end(), [](const auto& a, const auto& b) {
        return a.first > b.first;
    });
    double best = 0.0, cum = 0.0;
    for (const auto& [v, len] : pieces) {
        cum += len;
        best = std::max(best, v * cum);
    }
    return best;
}

double StepFn::max_abs_difference(const StepFn& a, const StepFn& b) {
    std::vector<double> cuts;
    cuts.reserve(a.bp_.size() + b.bp_.size());
    cuts.insert(cuts.end(), a.bp_.begin(), a.bp_.end());
    cuts.insert(cuts.end(), b.bp_.begin(), b.bp_.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double x = 0.5 * (cuts[i] + cuts[i + 1]);
        m = std::max(m, std::abs(a.value_at(x) - b.value_at(x)));
    }
    return m;
}

double DetailExpansion1D::inner(const Signal1D& g) const {
    double s = 0.0;
    const double h = g.cell_width();
    for (const auto& [j, c] : coeff) {
        if (c == 0.0) continue;
        const double a = 1.0 / std::sqrt(j.length());
        double acc = 0.0;
        auto [ll, lh] = g.cell_range(j.child_left());
        for (std::size_t i = ll; i < lh; ++i) acc += g.v[i];
        auto [rl, rh] = g.cell_range(j.child_right());
        for (std::size_t i = rl; i < rh; ++i) acc -= g.v[i];
        s += c * a * acc * h;
    }
    return s;
}

StepFn DetailExpansion1D::square_function() const {
    std::vector<std::pair<DyadicInterval, double>> boxes;
    boxes.reserve(coeff.size());
    for (const auto& [j, c] : coeff)
        if (c != 0.0) boxes.emplace_back(j, c * c / j.length());
    return StepFn::from_boxes(boxes).map([](double v) { return std::sqrt(std::max(v, 0.0)); });
}

Signal1D DetailExpansion1D::sample(const DyadicInterval& window, int res) const {
    Signal1D f(window, res);
    for (const auto& [j, c] : coeff) {
        if (c == 0.0) continue;
        const double a = c / std::sqrt(j.length());
        auto [ll, lh] = f.cell_range(j.child_left());
        for (std::size_t i = ll; i < lh; ++i) f.v[i] += a;
        auto [rl, rh] = f.cell_range(j.child_right());
        for (std::size_t i = rl; i < rh; ++i) f.v[i] -= a;
    }
    return f;
}

double DetailExpansion2D::inner(const Signal2D& g) const {
    double s = 0.0;
    Signal1D ax1(g.window.i1, g.res1), ax2(g.window.i2, g.res2);
    const double area = g.cell_area();
    for (const auto& [r, c] : coeff) {
        if (c == 0.0) continue;
        const double a1 = 1.0 / std::sqrt(r.i1.length());
        const double a2 = 1.0 / std::sqrt(r.i2.length());
        auto [l1, h1] = ax1.cell_range(r.i1.child_left());
        auto [rl1, rh1] = ax1.cell_range(r.i1.child_right());
        auto [l2, h2] = ax2.cell_range(r.i2.child_left());
        auto [rl2, rh2] = ax2.cell_range(r.i2.child_right());
        double acc = 0.0;
        for (std::size_t i = l1; i < h1; ++i) {
            for (std::size_t j = l2; j < h2; ++j) acc += g.at(i, j);
            for (std::size_t j = rl2; j < rh2; ++j) acc -= g.at(i, j);
        }
        for (std::size_t i = rl1; i < rh1; ++i) {
            for (std::size_t j = l2; j < h2; ++j) acc -= g.at(i, j);
            for (std::size_t j = rl2; j < rh2; ++j) acc += g.at(i, j);
        }
        s += c * a1 * a2 * acc * area;
    }
    return s;
}

Signal2D DetailExpansion2D::sample(const DyadicRectangle& window, int res1, int res2) const {
    Signal2D f(window, res1, res2);
    for (const auto& [r, c] : coeff) {
        if (c == 0.0) continue;
        const Signal1D a = haar_function(window.i1, res1, r.i1);
        const Signal1D b = haar_function(window.i2, res2, r.i2);
        for (std::size_t i = 0; i < f.n1(); ++i) {
            if (a.v[i] == 0.0) continue;
            const double ca = c * a.v[i];
            for (std::size_t j = 0; j < f.n2(); ++j) f.at(i, j) += ca * b.v[j];
        }
    }
    return f;
}

} // namespace dyadlab
