#include "dyadlab/cz.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dyadlab/bump.hpp"
#include "dyadlab/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dyadlab {

Signal1D CZSplit::bad_sum() const {
    Signal1D b(good.window, good.res);
    for (const auto& [i, piece] : bad_pieces) b += piece;
    return b;
}

namespace {

// Depth-first stopping walk. sums[] are prefix sums of |f| and f per cell.
void stop_walk(const Signal1D& f, const std::vector<double>& abs_prefix,
               const std::vector<double>& prefix, double lambda, const DyadicInterval& node,
               CZSplit& out) {
    auto [lo, hi] = f.cell_range(node);
    const double h = f.cell_width();
    const double mass = (abs_prefix[hi] - abs_prefix[lo]) * h;
    const double len = node.length();
    if (mass > lambda * len) {
        // first hit: maximal interval
        const double mean = (prefix[hi] - prefix[lo]) * h / len;
        Signal1D piece(f.window, f.res);
        for (std::size_t i = lo; i < hi; ++i) {
            piece.v[i] = f.v[i] - mean;
            out.good.v[i] = mean;
        }
        out.bad_pieces.emplace_back(node, std::move(piece));
        out.bad_set_measure += len;
        return;
    }
    if (hi - lo <= 1) return; // cell scale
    stop_walk(f, abs_prefix, prefix, lambda, node.child_left(), out);
    stop_walk(f, abs_prefix, prefix, lambda, node.child_right(), out);
}

} // namespace

CZSplit cz_decompose(const Signal1D& f, double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("cz_decompose: lambda must be positive");
    const double root_avg = [&] {
        double s = 0.0;
        for (double x : f.v) s += std::abs(x);
        return s * f.cell_width() / f.window.length();
    }();
    if (root_avg > lambda)
        throw std::domain_error("cz_decompose: lambda below the window average of |f|; no "
                                "maximal interval exists inside the window");

    CZSplit out;
    out.lambda = lambda;
    out.good = f;
    std::vector<double> abs_prefix(f.size() + 1, 0.0), prefix(f.size() + 1, 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        abs_prefix[i + 1] = abs_prefix[i] + std::abs(f.v[i]);
        prefix[i + 1] = prefix[i] + f.v[i];
    }
    stop_walk(f, abs_prefix, prefix, lambda, f.window, out);
    return out;
}

BumpFamily haar_bump_family(const DyadicInterval& window, int res) {
    return [window, res](const DyadicInterval& i) -> std::optional<Signal1D> {
        if (!window.contains(i) || i.level >= window.level + res) return std::nullopt;
        return haar_function(window, res, i);
    };
}

BumpFamily smooth_bump_family(const DyadicInterval& window, int res) {
    return [window, res](const DyadicInterval& i) -> std::optional<Signal1D> {
        BumpSpec spec{i, 2, 1.0, true};
        try {
            return make_bump(spec, window, res);
        } catch (const std::invalid_argument&) {
            return std::nullopt;
        }
    };
}

LowOscillationReport low_oscillation_sum(const Signal1D& f, const DyadicInterval& iprime,
                                         const BumpFamily& bumps, int min_level, int max_level,
                                         const ClipRange& ambient) {
    LowOscillationReport rep;
    rep.l1_norm = f.lp_norm(1.0);
    if (std::abs(f.integral()) > 1e-10 * std::max(rep.l1_norm, 1e-300))
        throw std::invalid_argument("low_oscillation_sum: f must have mean zero");
    {
        auto [lo, hi] = f.cell_range(iprime);
        for (std::size_t i = 0; i < f.size(); ++i)
            if ((i < lo || i >= hi) && f.v[i] != 0.0)
                throw std::invalid_argument("low_oscillation_sum: f not supported in I'");
    }

    // 3I' as a plain range
    const double c = iprime.center(), r3 = 1.5 * iprime.length();
    auto inside_3iprime = [&](const DyadicInterval& i) {
        return c - r3 <= i.left() && i.right() <= c + r3;
    };

    for (int lv = min_level; lv <= max_level; ++lv) {
        const auto o_min = (std::int64_t)std::floor(std::ldexp(ambient.lo, lv));
        const auto o_max = (std::int64_t)std::ceil(std::ldexp(ambient.hi, lv));
        for (std::int64_t o = o_min; o < o_max; ++o) {
            const DyadicInterval i{lv, o};
            if (!ambient.intersects(i) || inside_3iprime(i)) continue;
            const auto phi = bumps(i);
            if (!phi) {
                ++rep.skipped;
                continue;
            }
            rep.sum += std::abs(f.inner(*phi)) * std::sqrt(i.length());
            ++rep.terms;
        }
    }
    rep.ratio = rep.l1_norm > 0.0 ? rep.sum / rep.l1_norm : 0.0;
    return rep;
}

std::vector<WeakTypeCell> weak_type_experiment(const std::vector<int>& ks,
                                               const std::vector<std::int64_t>& ns, int trials,
                                               std::uint64_t seed, const DyadicInterval& window,
                                               int res, const ClipRange& ambient) {
    std::vector<WeakTypeCell> cells;
    for (int k : ks)
        for (std::int64_t n : ns) cells.push_back({k, n, 0.0, 0.0, 0, ""});

    const std::ptrdiff_t ncells = static_cast<std::ptrdiff_t>(cells.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t ci = 0; ci < ncells; ++ci) {
        WeakTypeCell& cell = cells[static_cast<std::size_t>(ci)];
        const ShiftSpec spec = leftmost_selector(cell.k, cell.n, window, res, ambient);
        for (int t = 0; t < trials; ++t) {
            std::string kind;
            const Signal1D f = make_test_signal(
                window, res, mix_seed(seed, static_cast<std::uint64_t>(ci), static_cast<std::uint64_t>(t)),
                &kind);
            const double l1 = f.lp_norm(1.0);
            if (l1 == 0.0) continue;
            // selector gaps only drop coefficient mass, which can only lower
            // the level sets; tolerate them (window-edge effect)
            const StepFn s = modified_square_fn(f, spec, std::numeric_limits<double>::infinity());
            const double c = s.weak_l1_sup() / l1;
            if (c > cell.constant) {
                cell.constant = c;
                cell.argmax_trial = static_cast<std::uint64_t>(t);
                cell.argmax_kind = kind;
            }
        }
        cell.normalized = cell.constant / (std::ldexp(1.0, -cell.k) * static_cast<double>(cell.n) + 1.0);
    }
    return cells;
}

} // namespace dyadlab
