#include "dyadlab/representation.hpp"

#include <cmath>
#include <stdexcept>

#include "dyadlab/rng.hpp"

namespace dyadlab {

namespace {

// Constant value of h_J on a strictly contained interval i.
double haar_value_on(const DyadicInterval& j, const DyadicInterval& i) {
    const bool left = !j.child_right().contains(i);
    return (left ? 1.0 : -1.0) / std::sqrt(j.length());
}

std::optional<Rel> relation(const DyadicInterval& r, const DyadicInterval& s) {
    if (r == s) return Rel::Eq;
    if (s.contains(r)) return Rel::Inside;
    if (r.contains(s)) return Rel::Contains;
    return std::nullopt;
}

} // namespace

NineTermDecomposition haar_representation(const FiniteBilinearForm& t, const Signal2D& f,
                                          const Signal2D& g) {
    if (!t.support_preserving(0.0)) {
        // name an offending pair for the error message
        for (std::size_t a = 0; a < t.basis.size(); ++a) {
            if (!t.basis.is_detail_rect(a)) continue;
            for (std::size_t b = 0; b < t.basis.size(); ++b) {
                if (!t.basis.is_detail_rect(b)) continue;
                if (!t.basis.rect_of(a).intersects(t.basis.rect_of(b)) &&
                    t.m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) != 0.0) {
                    const auto r = t.basis.rect_of(a);
                    const auto s = t.basis.rect_of(b);
                    throw std::invalid_argument(
                        "haar_representation: form not support-preserving at pair R=(" +
                        std::to_string(r.i1.level) + "," + std::to_string(r.i1.offset) + ")x(" +
                        std::to_string(r.i2.level) + "," + std::to_string(r.i2.offset) + "), S=(" +
                        std::to_string(s.i1.level) + "," + std::to_string(s.i1.offset) + ")x(" +
                        std::to_string(s.i2.level) + "," + std::to_string(s.i2.offset) + ")");
                }
            }
        }
        throw std::invalid_argument("haar_representation: form not support-preserving");
    }

    const TensorBasis& basis = t.basis;
    const std::size_t n1 = basis.n1(), n2 = basis.n2();
    const HaarCoeffs2D fc2 = haar_forward(f), gc2 = haar_forward(g);

    // dense detail coefficient tables indexed by (axis1 idx, axis2 idx)
    auto table = [&](const HaarCoeffs2D& c) {
        std::vector<double> out(n1 * n2, 0.0);
        for (const auto& [r, v] : c.detail)
            out[basis.flat(basis.b1.index_of(r.i1), basis.b2.index_of(r.i2))] = v;
        return out;
    };
    const std::vector<double> fc = table(fc2), gc = table(gc2);

    NineTermDecomposition out;

    // direct class sums over intersecting detail pairs
    for (std::size_t a1 = 1; a1 < n1; ++a1) {
        for (std::size_t a2 = 1; a2 < n2; ++a2) {
            const double fv = fc[basis.flat(a1, a2)];
            if (fv == 0.0) continue;
            const DyadicRectangle r{basis.b1.interval_of(a1), basis.b2.interval_of(a2)};
            for (std::size_t b1 = 1; b1 < n1; ++b1) {
                const auto rel1 = relation(r.i1, basis.b1.interval_of(b1));
                if (!rel1) continue;
                for (std::size_t b2 = 1; b2 < n2; ++b2) {
                    const auto rel2 = relation(r.i2, basis.b2.interval_of(b2));
                    if (!rel2) continue;
                    const double gv = gc[basis.flat(b1, b2)];
                    if (gv == 0.0) continue;
                    const double entry = t.m(static_cast<Eigen::Index>(basis.flat(a1, a2)),
                                             static_cast<Eigen::Index>(basis.flat(b1, b2)));
                    if (entry == 0.0) continue;
                    NineTermClass& cls =
                        out.cls[static_cast<int>(*rel1)][static_cast<int>(*rel2)];
                    const double term = fv * gv * entry;
                    cls.direct += term;
                    cls.terms.emplace_back(
                        r, DyadicRectangle{basis.b1.interval_of(b1), basis.b2.interval_of(b2)},
                        term);
                }
            }
        }
    }

    // <T f, g> over the detail spans (the coarse/half blocks of f and g do
    // not enter the representation)
    {
        Eigen::VectorXd fv = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
        Eigen::VectorXd gv = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
        for (std::size_t a1 = 1; a1 < n1; ++a1)
            for (std::size_t a2 = 1; a2 < n2; ++a2) {
                fv[static_cast<Eigen::Index>(basis.flat(a1, a2))] = fc[basis.flat(a1, a2)];
                gv[static_cast<Eigen::Index>(basis.flat(a1, a2))] = gc[basis.flat(a1, a2)];
            }
        out.bilinear_total = t.eval_vec(fv, gv);
    }

    // ---- lemma forms --------------------------------------------------

    const double sqw1 = std::sqrt(basis.b1.window.length());
    const double sqw2 = std::sqrt(basis.b2.window.length());
    const double sqw = sqw1 * sqw2;
    auto entry = [&](std::size_t row, std::size_t col) {
        return t.m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    };

    // average of the detail part over a rectangle, from coefficients of
    // strictly containing rectangles
    auto det_avg = [&](const std::vector<double>& c, std::size_t a1, std::size_t a2) {
        const DyadicInterval i1 = basis.b1.interval_of(a1), i2 = basis.b2.interval_of(a2);
        double s = 0.0;
        for (DyadicInterval p1 = i1; p1.level > basis.b1.window.level;) {
            p1 = p1.parent();
            const double v1 = haar_value_on(p1, i1);
            for (DyadicInterval p2 = i2; p2.level > basis.b2.window.level;) {
                p2 = p2.parent();
                s += c[basis.flat(basis.b1.index_of(p1), basis.b2.index_of(p2))] * v1 *
                     haar_value_on(p2, i2);
            }
        }
        return s;
    };
    // <·, h_{I1} ⊗ avg_{I2}> of a detail-only function: axis-1 detail fixed,
    // axis-2 averaged
    auto mixed_avg2 = [&](const std::vector<double>& c, std::size_t a1, std::size_t a2) {
        const DyadicInterval i2 = basis.b2.interval_of(a2);
        double s = 0.0;
        for (DyadicInterval p2 = i2; p2.level > basis.b2.window.level;) {
            p2 = p2.parent();
            s += c[basis.flat(a1, basis.b2.index_of(p2))] * haar_value_on(p2, i2);
        }
        return s;
    };
    auto mixed_avg1 = [&](const std::vector<double>& c, std::size_t a1, std::size_t a2) {
        const DyadicInterval i1 = basis.b1.interval_of(a1);
        double s = 0.0;
        for (DyadicInterval p1 = i1; p1.level > basis.b1.window.level;) {
            p1 = p1.parent();
            s += c[basis.flat(basis.b1.index_of(p1), a2)] * haar_value_on(p1, i1);
        }
        return s;
    };

    for (std::size_t a1 = 1; a1 < n1; ++a1) {
        for (std::size_t a2 = 1; a2 < n2; ++a2) {
            const std::size_t idx = basis.flat(a1, a2);
            // diagonal
            out.cls[0][0].lemma_form += fc[idx] * gc[idx] * entry(idx, idx);
            // T*(1): R strictly inside S on both axes
            out.cls[1][1].lemma_form +=
                fc[idx] * det_avg(gc, a1, a2) * sqw * entry(idx, basis.flat(0, 0));
            // T(1): S strictly inside R on both axes
            out.cls[2][2].lemma_form +=
                det_avg(fc, a1, a2) * gc[idx] * sqw * entry(basis.flat(0, 0), idx);
            // T1(1): Q = (f axis-1 interval, g axis-2 interval)
            out.cls[1][2].lemma_form += mixed_avg2(fc, a1, a2) * mixed_avg1(gc, a1, a2) * sqw *
                                        entry(basis.flat(a1, 0), basis.flat(0, a2));
            // T1*(1)
            out.cls[2][1].lemma_form += mixed_avg1(fc, a1, a2) * mixed_avg2(gc, a1, a2) * sqw *
                                        entry(basis.flat(0, a2), basis.flat(a1, 0));
            // half classes
            out.cls[0][2].lemma_form += mixed_avg2(fc, a1, a2) * gc[idx] * sqw2 *
                                        entry(basis.flat(a1, 0), idx); // <T(h_{S1}⊗1), h_S>
            out.cls[0][1].lemma_form += fc[idx] * mixed_avg2(gc, a1, a2) * sqw2 *
                                        entry(idx, basis.flat(a1, 0)); // <T*(h ⊗ 1), ...>
            out.cls[2][0].lemma_form += mixed_avg1(fc, a1, a2) * gc[idx] * sqw1 *
                                        entry(basis.flat(0, a2), idx); // <T(1 ⊗ h_{S2}), h_S>
            out.cls[1][0].lemma_form +=
                fc[idx] * mixed_avg1(gc, a1, a2) * sqw1 * entry(idx, basis.flat(0, a2));
        }
    }
    return out;
}

namespace {

struct SynthesisData {
    // all tables indexed by flat detail-pair index (a1, a2)
    std::vector<double> diag, t1, t1star, t11, t11star, c6, c7, c8, c9;
};

FiniteBilinearForm synthesize(const TensorBasis& basis, const SynthesisData& d) {
    FiniteBilinearForm out(basis);
    const std::size_t n1 = basis.n1(), n2 = basis.n2();
    const double sqw1 = std::sqrt(basis.b1.window.length());
    const double sqw2 = std::sqrt(basis.b2.window.length());
    const double sqw = sqw1 * sqw2;

    auto set = [&](std::size_t r, std::size_t c, double v) {
        out.m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
    };

    // detail-detail block
    for (std::size_t a1 = 1; a1 < n1; ++a1) {
        const DyadicInterval r1 = basis.b1.interval_of(a1);
        for (std::size_t b1 = 1; b1 < n1; ++b1) {
            const auto rel1 = relation(r1, basis.b1.interval_of(b1));
            if (!rel1) continue;
            for (std::size_t a2 = 1; a2 < n2; ++a2) {
                const DyadicInterval r2 = basis.b2.interval_of(a2);
                for (std::size_t b2 = 1; b2 < n2; ++b2) {
                    const auto rel2 = relation(r2, basis.b2.interval_of(b2));
                    if (!rel2) continue;
                    const DyadicInterval s1 = basis.b1.interval_of(b1);
                    const DyadicInterval s2 = basis.b2.interval_of(b2);
                    double v = 0.0;
                    if (*rel1 == Rel::Eq && *rel2 == Rel::Eq) {
                        v = d.diag[basis.flat(a1, a2)];
                    } else if (*rel1 == Rel::Inside && *rel2 == Rel::Inside) {
                        v = haar_value_on(s1, r1) * haar_value_on(s2, r2) *
                            d.t1star[basis.flat(a1, a2)];
                    } else if (*rel1 == Rel::Contains && *rel2 == Rel::Contains) {
                        v = haar_value_on(r1, s1) * haar_value_on(r2, s2) *
                            d.t1[basis.flat(b1, b2)];
                    } else if (*rel1 == Rel::Inside && *rel2 == Rel::Contains) {
                        v = haar_value_on(s1, r1) * haar_value_on(r2, s2) *
                            d.t11[basis.flat(a1, b2)];
                    } else if (*rel1 == Rel::Contains && *rel2 == Rel::Inside) {
                        v = haar_value_on(r1, s1) * haar_value_on(s2, r2) *
                            d.t11star[basis.flat(b1, a2)];
                    } else if (*rel1 == Rel::Eq && *rel2 == Rel::Contains) {
                        v = haar_value_on(r2, s2) * d.c6[basis.flat(a1, b2)];
                    } else if (*rel1 == Rel::Eq && *rel2 == Rel::Inside) {
                        v = haar_value_on(s2, r2) * d.c7[basis.flat(a1, a2)];
                    } else if (*rel1 == Rel::Contains && *rel2 == Rel::Eq) {
                        v = haar_value_on(r1, s1) * d.c8[basis.flat(b1, a2)];
                    } else { // Inside, Eq
                        v = haar_value_on(s1, r1) * d.c9[basis.flat(a1, a2)];
                    }
                    if (v != 0.0) set(basis.flat(a1, a2), basis.flat(b1, b2), v);
                }
            }
        }
    }

    // coarse-involving entries the lemma forms read
    for (std::size_t a1 = 1; a1 < n1; ++a1) {
        for (std::size_t a2 = 1; a2 < n2; ++a2) {
            const std::size_t q = basis.flat(a1, a2);
            set(q, basis.flat(0, 0), d.t1star[q] / sqw);
            set(basis.flat(0, 0), q, d.t1[q] / sqw);
            set(basis.flat(a1, 0), basis.flat(0, a2), d.t11[q] / sqw);
            set(basis.flat(0, a2), basis.flat(a1, 0), d.t11star[q] / sqw);
            set(basis.flat(a1, 0), q, d.c6[q] / sqw2);
            set(q, basis.flat(a1, 0), d.c7[q] / sqw2);
            set(basis.flat(0, a2), q, d.c8[q] / sqw1);
            set(q, basis.flat(0, a2), d.c9[q] / sqw1);
        }
    }
    return out;
}

SynthesisData random_data(const TensorBasis& basis, std::uint64_t seed) {
    const std::size_t n = basis.size();
    SynthesisData d;
    for (auto* tbl : {&d.diag, &d.t1, &d.t1star, &d.t11, &d.t11star, &d.c6, &d.c7, &d.c8, &d.c9})
        tbl->assign(n, 0.0);
    int which = 0;
    for (auto* tbl : {&d.diag, &d.t1, &d.t1star, &d.t11, &d.t11star, &d.c6, &d.c7, &d.c8, &d.c9}) {
        Rng local(mix_seed(seed, static_cast<std::uint64_t>(which++)));
        for (std::size_t a1 = 1; a1 < basis.n1(); ++a1)
            for (std::size_t a2 = 1; a2 < basis.n2(); ++a2)
                (*tbl)[basis.flat(a1, a2)] = local.normal();
    }
    return d;
}

} // namespace

FiniteBilinearForm random_local_form(const TensorBasis& basis, std::uint64_t seed) {
    return synthesize(basis, random_data(basis, seed));
}

FiniteBilinearForm single_class_form(const TensorBasis& basis, std::uint64_t seed) {
    SynthesisData d = random_data(basis, seed);
    for (auto* tbl : {&d.diag, &d.t1, &d.t1star, &d.t11, &d.t11star, &d.c7, &d.c8, &d.c9})
        tbl->assign(basis.size(), 0.0);
    return synthesize(basis, d);
}

} // namespace dyadlab
