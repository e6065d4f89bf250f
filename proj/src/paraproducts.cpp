#include "dyadlab/paraproducts.hpp"

#include <cmath>
#include <stdexcept>

#include "dyadlab/norms.hpp"

namespace dyadlab {

RectCoeffs detail_coeffs(const Signal2D& b, double tol) {
    const HaarCoeffs2D c = haar_forward(b);
    const double scale = std::max(1.0, b.l2_norm());
    if (std::abs(c.coarse) > tol * scale)
        throw std::invalid_argument("detail_coeffs: symbol has a coarse component");
    for (const auto& [k, v] : c.half1)
        if (std::abs(v) > tol * scale)
            throw std::invalid_argument("detail_coeffs: symbol not mean-zero per variable");
    for (const auto& [k, v] : c.half2)
        if (std::abs(v) > tol * scale)
            throw std::invalid_argument("detail_coeffs: symbol not mean-zero per variable");
    RectCoeffs out;
    for (const auto& [k, v] : c.detail)
        if (v != 0.0) out.emplace(k, v);
    return out;
}

namespace {

// Per-axis average tables A[a][i] = average of basis function a over the
// detail interval with index i (column 0 unused).
std::vector<double> average_table(const Basis1D& b) {
    const std::size_t n = b.size();
    std::vector<double> a(n * n, 0.0);
    for (std::size_t idx = 0; idx < n; ++idx)
        for (std::size_t i = 1; i < n; ++i) a[idx * n + i] = b.average_on(idx, b.interval_of(i));
    return a;
}

} // namespace

FiniteBilinearForm paraproduct_classical(const RectCoeffs& b, const TensorBasis& basis) {
    FiniteBilinearForm out(basis);
    const auto a1 = average_table(basis.b1), a2 = average_table(basis.b2);
    const std::size_t n1 = basis.n1(), n2 = basis.n2();
    for (const auto& [r, bv] : b) {
        const std::size_t s1 = basis.b1.index_of(r.i1), s2 = basis.b2.index_of(r.i2);
        const auto col = static_cast<Eigen::Index>(basis.flat(s1, s2));
        for (std::size_t k1 = 0; k1 < n1; ++k1) {
            const double v1 = a1[k1 * n1 + s1];
            if (v1 == 0.0) continue;
            for (std::size_t k2 = 0; k2 < n2; ++k2) {
                const double v2 = a2[k2 * n2 + s2];
                if (v2 == 0.0) continue;
                out.m(static_cast<Eigen::Index>(basis.flat(k1, k2)), col) += bv * v1 * v2;
            }
        }
    }
    return out;
}

FiniteBilinearForm paraproduct_classical_t(const RectCoeffs& b, const TensorBasis& basis) {
    FiniteBilinearForm out(basis);
    const auto a1 = average_table(basis.b1), a2 = average_table(basis.b2);
    const std::size_t n1 = basis.n1(), n2 = basis.n2();
    for (const auto& [r, bv] : b) {
        const std::size_t s1 = basis.b1.index_of(r.i1), s2 = basis.b2.index_of(r.i2);
        const auto row = static_cast<Eigen::Index>(basis.flat(s1, s2));
        for (std::size_t k1 = 0; k1 < n1; ++k1) {
            const double v1 = a1[k1 * n1 + s1];
            if (v1 == 0.0) continue;
            for (std::size_t k2 = 0; k2 < n2; ++k2) {
                const double v2 = a2[k2 * n2 + s2];
                if (v2 == 0.0) continue;
                out.m(row, static_cast<Eigen::Index>(basis.flat(k1, k2))) += bv * v1 * v2;
            }
        }
    }
    return out;
}

FiniteBilinearForm paraproduct_mixed(const RectCoeffs& b, const TensorBasis& basis) {
    // rows (a1, R2) averaged in axis 1; columns (R1, b2) averaged in axis 2
    FiniteBilinearForm out(basis);
    const auto a1 = average_table(basis.b1), a2 = average_table(basis.b2);
    const std::size_t n1 = basis.n1(), n2 = basis.n2();
    for (const auto& [r, bv] : b) {
        const std::size_t s1 = basis.b1.index_of(r.i1), s2 = basis.b2.index_of(r.i2);
        for (std::size_t k1 = 0; k1 < n1; ++k1) {
            const double v1 = a1[k1 * n1 + s1];
            if (v1 == 0.0) continue;
            for (std::size_t k2 = 0; k2 < n2; ++k2) {
                const double v2 = a2[k2 * n2 + s2];
                if (v2 == 0.0) continue;
                out.m(static_cast<Eigen::Index>(basis.flat(k1, s2)),
                      static_cast<Eigen::Index>(basis.flat(s1, k2))) += bv * v1 * v2;
            }
        }
    }
    return out;
}

FiniteBilinearForm paraproduct_mixed_t(const RectCoeffs& b, const TensorBasis& basis) {
    // rows (R1, a2) averaged in axis 2; columns (b1, S2) averaged in axis 1
    FiniteBilinearForm out(basis);
    const auto a1 = average_table(basis.b1), a2 = average_table(basis.b2);
    const std::size_t n1 = basis.n1(), n2 = basis.n2();
    for (const auto& [r, bv] : b) {
        const std::size_t s1 = basis.b1.index_of(r.i1), s2 = basis.b2.index_of(r.i2);
        for (std::size_t k2 = 0; k2 < n2; ++k2) {
            const double v2 = a2[k2 * n2 + s2];
            if (v2 == 0.0) continue;
            for (std::size_t k1 = 0; k1 < n1; ++k1) {
                const double v1 = a1[k1 * n1 + s1];
                if (v1 == 0.0) continue;
                out.m(static_cast<Eigen::Index>(basis.flat(s1, k2)),
                      static_cast<Eigen::Index>(basis.flat(k1, s2))) += bv * v2 * v1;
            }
        }
    }
    return out;
}

FiniteBilinearForm paraproduct_classical(const Signal2D& b, const TensorBasis& basis) {
    return paraproduct_classical(detail_coeffs(b), basis);
}
FiniteBilinearForm paraproduct_mixed(const Signal2D& b, const TensorBasis& basis) {
    return paraproduct_mixed(detail_coeffs(b), basis);
}

double BmoSequence::bound(const DyadicInterval& r, const DyadicInterval& s, double delta) {
    const double mn = std::min(r.length(), s.length());
    const double mx = std::max(r.length(), s.length());
    const double rel = diam_union(r, s) / mx;
    return std::pow(mn / mx, 0.5 + delta) * std::pow(rel, -(1.0 + delta));
}

BmoSequenceReport bmo_sequence_check(const BmoSequence& b) {
    BmoSequenceReport rep;
    for (const auto& [key, coeffs] : b.entries) {
        BmoSequenceReport::Row row;
        row.r = key.first;
        row.s = key.second;
        row.norm = dyadic_bmo_norm(coeffs);
        row.bound = BmoSequence::bound(key.first, key.second, b.delta);
        row.ratio = row.bound > 0.0 ? row.norm / row.bound : (row.norm > 0.0 ? 1e300 : 0.0);
        rep.max_ratio = std::max(rep.max_ratio, row.ratio);
        rep.rows.push_back(row);
    }
    return rep;
}

FiniteBilinearForm paraproduct_third_slot(const BmoSequence& b, const TensorBasis& basis,
                                          int slot) {
    FiniteBilinearForm out(basis);
    const auto a1 = average_table(basis.b1), a2 = average_table(basis.b2);
    const std::size_t n1 = basis.n1(), n2 = basis.n2();
    for (const auto& [key, coeffs] : b.entries) {
        const auto& [r, s] = key;
        for (const auto& [i, beta] : coeffs.detail) {
            if (beta == 0.0) continue;
            switch (slot) {
                case 5: { // rows (R1, a2), cols (S1, I2)
                    const std::size_t r1 = basis.b1.index_of(r), s1 = basis.b1.index_of(s);
                    const std::size_t i2 = basis.b2.index_of(i);
                    for (std::size_t k2 = 0; k2 < n2; ++k2) {
                        const double v = a2[k2 * n2 + i2];
                        if (v == 0.0) continue;
                        out.m(static_cast<Eigen::Index>(basis.flat(r1, k2)),
                              static_cast<Eigen::Index>(basis.flat(s1, i2))) += beta * v;
                    }
                    break;
                }
                case 6: { // rows (a1, R2), cols (I1, S2)
                    const std::size_t r2 = basis.b2.index_of(r), s2 = basis.b2.index_of(s);
                    const std::size_t i1 = basis.b1.index_of(i);
                    for (std::size_t k1 = 0; k1 < n1; ++k1) {
                        const double v = a1[k1 * n1 + i1];
                        if (v == 0.0) continue;
                        out.m(static_cast<Eigen::Index>(basis.flat(k1, r2)),
                              static_cast<Eigen::Index>(basis.flat(i1, s2))) += beta * v;
                    }
                    break;
                }
                case 7: { // rows (R1, I2), cols (S1, b2)
                    const std::size_t r1 = basis.b1.index_of(r), s1 = basis.b1.index_of(s);
                    const std::size_t i2 = basis.b2.index_of(i);
                    for (std::size_t k2 = 0; k2 < n2; ++k2) {
                        const double v = a2[k2 * n2 + i2];
                        if (v == 0.0) continue;
                        out.m(static_cast<Eigen::Index>(basis.flat(r1, i2)),
                              static_cast<Eigen::Index>(basis.flat(s1, k2))) += beta * v;
                    }
                    break;
                }
                case 8: { // rows (I1, R2), cols (b1, S2)
                    const std::size_t r2 = basis.b2.index_of(r), s2 = basis.b2.index_of(s);
                    const std::size_t i1 = basis.b1.index_of(i);
                    for (std::size_t k1 = 0; k1 < n1; ++k1) {
                        const double v = a1[k1 * n1 + i1];
                        if (v == 0.0) continue;
                        out.m(static_cast<Eigen::Index>(basis.flat(i1, r2)),
                              static_cast<Eigen::Index>(basis.flat(k1, s2))) += beta * v;
                    }
                    break;
                }
                default:
                    throw std::invalid_argument("paraproduct_third_slot: slot must be 5..8");
            }
        }
    }
    return out;
}

FiniteBilinearForm paraproduct_third(const BmoSequence& b, const TensorBasis& basis,
                                     double hypothesis_tol) {
    if (std::isfinite(hypothesis_tol)) {
        const BmoSequenceReport rep = bmo_sequence_check(b);
        for (const auto& row : rep.rows)
            if (row.ratio > hypothesis_tol)
                throw std::invalid_argument(
                    "paraproduct_third: decay hypothesis fails at (R2,S2) = (" +
                    std::to_string(row.r.level) + "," + std::to_string(row.r.offset) + "),(" +
                    std::to_string(row.s.level) + "," + std::to_string(row.s.offset) +
                    "), ratio " + std::to_string(row.ratio));
    }
    return paraproduct_third_slot(b, basis, 6);
}

CancellationResiduals cancellation_residuals(const FiniteBilinearForm& l) {
    CancellationResiduals out;
    const TensorBasis& basis = l.basis;
    const std::size_t n1 = basis.n1(), n2 = basis.n2();
    const double sqw1 = std::sqrt(basis.b1.window.length());
    const double sqw2 = std::sqrt(basis.b2.window.length());
    const double sqw = sqw1 * sqw2;
    auto entry = [&](std::size_t r, std::size_t c) {
        return std::abs(l.m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
    };
    for (std::size_t a1 = 1; a1 < n1; ++a1) {
        for (std::size_t a2 = 1; a2 < n2; ++a2) {
            const std::size_t q = basis.flat(a1, a2);
            out.family[0] = std::max(out.family[0], sqw * entry(basis.flat(0, 0), q));
            out.family[1] = std::max(out.family[1], sqw * entry(q, basis.flat(0, 0)));
            out.family[2] = std::max(out.family[2], sqw * entry(basis.flat(a1, 0), basis.flat(0, a2)));
            out.family[3] = std::max(out.family[3], sqw * entry(basis.flat(0, a2), basis.flat(a1, 0)));
        }
    }
    // restricted families over (R, S, I)
    for (std::size_t r1 = 1; r1 < n1; ++r1)
        for (std::size_t s1 = 1; s1 < n1; ++s1)
            for (std::size_t i2 = 1; i2 < n2; ++i2) {
                out.family[4] = std::max(out.family[4],
                                         sqw2 * entry(basis.flat(r1, 0), basis.flat(s1, i2)));
                out.family[6] = std::max(out.family[6],
                                         sqw2 * entry(basis.flat(r1, i2), basis.flat(s1, 0)));
            }
    for (std::size_t r2 = 1; r2 < n2; ++r2)
        for (std::size_t s2 = 1; s2 < n2; ++s2)
            for (std::size_t i1 = 1; i1 < n1; ++i1) {
                out.family[5] = std::max(out.family[5],
                                         sqw1 * entry(basis.flat(0, r2), basis.flat(i1, s2)));
                out.family[7] = std::max(out.family[7],
                                         sqw1 * entry(basis.flat(i1, r2), basis.flat(0, s2)));
            }
    return out;
}

ReductionResult reduce_to_special_cancellation(const FiniteBilinearForm& l) {
    const TensorBasis& basis = l.basis;
    const std::size_t n1 = basis.n1(), n2 = basis.n2();
    const double sqw1 = std::sqrt(basis.b1.window.length());
    const double sqw2 = std::sqrt(basis.b2.window.length());
    const double sqw = sqw1 * sqw2;

    ReductionResult res;
    auto entry = [](const FiniteBilinearForm& f, std::size_t r, std::size_t c) {
        return f.m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    };

    for (std::size_t a1 = 1; a1 < n1; ++a1) {
        for (std::size_t a2 = 1; a2 < n2; ++a2) {
            const DyadicRectangle r{basis.b1.interval_of(a1), basis.b2.interval_of(a2)};
            const std::size_t q = basis.flat(a1, a2);
            const double v1 = sqw * entry(l, basis.flat(0, 0), q);
            const double v2 = sqw * entry(l, q, basis.flat(0, 0));
            const double v3 = sqw * entry(l, basis.flat(a1, 0), basis.flat(0, a2));
            const double v4 = sqw * entry(l, basis.flat(0, a2), basis.flat(a1, 0));
            if (v1 != 0.0) res.b1[r] = v1;
            if (v2 != 0.0) res.b2[r] = v2;
            if (v3 != 0.0) res.b3[r] = v3;
            if (v4 != 0.0) res.b4[r] = v4;
        }
    }

    res.p1 = paraproduct_classical(res.b1, basis);
    res.p2 = paraproduct_classical_t(res.b2, basis);
    res.p3 = paraproduct_mixed_t(res.b3, basis);
    res.p4 = paraproduct_mixed(res.b4, basis);

    FiniteBilinearForm partial = l;
    partial -= res.p1;
    partial -= res.p2;
    partial -= res.p3;
    partial -= res.p4;

    // third-type sequences from the partially reduced form
    res.b5.axis = 1;
    res.b6.axis = 2;
    res.b7.axis = 1;
    res.b8.axis = 2;
    auto coeffs1d = [&](int axis) {
        HaarCoeffs1D c;
        if (axis == 1) {
            c.window = basis.b2.window; // entries live on the other axis
            c.res = basis.b2.res;
        } else {
            c.window = basis.b1.window;
            c.res = basis.b1.res;
        }
        return c;
    };
    for (std::size_t r1 = 1; r1 < n1; ++r1) {
        for (std::size_t s1 = 1; s1 < n1; ++s1) {
            HaarCoeffs1D e5 = coeffs1d(1), e7 = coeffs1d(1);
            bool nz5 = false, nz7 = false;
            for (std::size_t i2 = 1; i2 < n2; ++i2) {
                const double v5 = sqw2 * entry(partial, basis.flat(r1, 0), basis.flat(s1, i2));
                const double v7 = sqw2 * entry(partial, basis.flat(r1, i2), basis.flat(s1, 0));
                if (v5 != 0.0) {
                    e5.detail[basis.b2.interval_of(i2)] = v5;
                    nz5 = true;
                }
                if (v7 != 0.0) {
                    e7.detail[basis.b2.interval_of(i2)] = v7;
                    nz7 = true;
                }
            }
            const auto key = std::make_pair(basis.b1.interval_of(r1), basis.b1.interval_of(s1));
            if (nz5) res.b5.entries.emplace(key, std::move(e5));
            if (nz7) res.b7.entries.emplace(key, std::move(e7));
        }
    }
    for (std::size_t r2 = 1; r2 < n2; ++r2) {
        for (std::size_t s2 = 1; s2 < n2; ++s2) {
            HaarCoeffs1D e6 = coeffs1d(2), e8 = coeffs1d(2);
            bool nz6 = false, nz8 = false;
            for (std::size_t i1 = 1; i1 < n1; ++i1) {
                const double v6 = sqw1 * entry(partial, basis.flat(0, r2), basis.flat(i1, s2));
                const double v8 = sqw1 * entry(partial, basis.flat(i1, r2), basis.flat(0, s2));
                if (v6 != 0.0) {
                    e6.detail[basis.b1.interval_of(i1)] = v6;
                    nz6 = true;
                }
                if (v8 != 0.0) {
                    e8.detail[basis.b1.interval_of(i1)] = v8;
                    nz8 = true;
                }
            }
            const auto key = std::make_pair(basis.b2.interval_of(r2), basis.b2.interval_of(s2));
            if (nz6) res.b6.entries.emplace(key, std::move(e6));
            if (nz8) res.b8.entries.emplace(key, std::move(e8));
        }
    }

    res.t5 = paraproduct_third_slot(res.b5, basis, 5);
    res.t6 = paraproduct_third_slot(res.b6, basis, 6);
    res.t7 = paraproduct_third_slot(res.b7, basis, 7);
    res.t8 = paraproduct_third_slot(res.b8, basis, 8);

    res.reduced = partial;
    res.reduced -= res.t5;
    res.reduced -= res.t6;
    res.reduced -= res.t7;
    res.reduced -= res.t8;
    return res;
}

} // namespace dyadlab
