#include "dyadlab/forms.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "dyadlab/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dyadlab {

Eigen::VectorXd TensorBasis::coeffs(const Signal2D& f) const {
    if (f.window.i1 != b1.window || f.window.i2 != b2.window || f.res1 != b1.res ||
        f.res2 != b2.res)
        throw std::invalid_argument("TensorBasis::coeffs: signal grid mismatch");
    const auto vec = coeff_vector(haar_forward(f));
    Eigen::VectorXd out(static_cast<Eigen::Index>(vec.size()));
    for (std::size_t i = 0; i < vec.size(); ++i) out[static_cast<Eigen::Index>(i)] = vec[i];
    return out;
}

Eigen::VectorXd TensorBasis::one() const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size()));
    out[0] = std::sqrt(b1.window.length() * b2.window.length());
    return out;
}

Eigen::VectorXd TensorBasis::half_haar(int axis, const DyadicInterval& i) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size()));
    if (axis == 1)
        out[static_cast<Eigen::Index>(flat(b1.index_of(i), 0))] = std::sqrt(b2.window.length());
    else
        out[static_cast<Eigen::Index>(flat(0, b2.index_of(i)))] = std::sqrt(b1.window.length());
    return out;
}

Eigen::VectorXd TensorBasis::unit(std::size_t a) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size()));
    out[static_cast<Eigen::Index>(a)] = 1.0;
    return out;
}

bool FiniteBilinearForm::support_preserving(double tol) const {
    for (std::size_t a = 0; a < basis.size(); ++a) {
        if (!basis.is_detail_rect(a)) continue;
        const DyadicRectangle r = basis.rect_of(a);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            if (!basis.is_detail_rect(b)) continue;
            if (r.intersects(basis.rect_of(b))) continue;
            if (std::abs(m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b))) > tol)
                return false;
        }
    }
    return true;
}

AdjointForms adjoint_forms(const FiniteBilinearForm& l) {
    AdjointForms out{FiniteBilinearForm(l.basis), FiniteBilinearForm(l.basis),
                     FiniteBilinearForm(l.basis)};
    const std::size_t n1 = l.basis.n1(), n2 = l.basis.n2();
    for (std::size_t a1 = 0; a1 < n1; ++a1)
        for (std::size_t a2 = 0; a2 < n2; ++a2)
            for (std::size_t b1 = 0; b1 < n1; ++b1)
                for (std::size_t b2 = 0; b2 < n2; ++b2) {
                    const auto row = static_cast<Eigen::Index>(l.basis.flat(a1, a2));
                    const auto col = static_cast<Eigen::Index>(l.basis.flat(b1, b2));
                    out.adj1.m(row, col) =
                        l.m(static_cast<Eigen::Index>(l.basis.flat(b1, a2)),
                            static_cast<Eigen::Index>(l.basis.flat(a1, b2)));
                    out.adj2.m(row, col) =
                        l.m(static_cast<Eigen::Index>(l.basis.flat(a1, b2)),
                            static_cast<Eigen::Index>(l.basis.flat(b1, a2)));
                }
    out.full.m = l.m.transpose();
    return out;
}

FiniteBilinearForm random_support_preserving_form(const TensorBasis& basis, std::uint64_t seed,
                                                  double scale) {
    // Build T column-wise in cell space: T(e_κ) is a random function
    // supported on supp e_κ. Then Λ(e_κ, e_μ) = <T(e_κ), e_μ>.
    const DyadicRectangle w = basis.window();
    const int res1 = basis.b1.res, res2 = basis.b2.res;
    FiniteBilinearForm out(basis);
    Signal1D ax1(w.i1, res1), ax2(w.i2, res2);
    for (std::size_t a = 0; a < basis.size(); ++a) {
        auto [a1, a2] = basis.unflat(a);
        const DyadicInterval s1 = a1 == 0 ? w.i1 : basis.b1.interval_of(a1);
        const DyadicInterval s2 = a2 == 0 ? w.i2 : basis.b2.interval_of(a2);
        Rng rng(mix_seed(seed, a));
        Signal2D img(w, res1, res2);
        auto [lo1, hi1] = ax1.cell_range(s1);
        auto [lo2, hi2] = ax2.cell_range(s2);
        for (std::size_t i = lo1; i < hi1; ++i)
            for (std::size_t j = lo2; j < hi2; ++j) img.at(i, j) = scale * rng.normal();
        const Eigen::VectorXd row = basis.coeffs(img);
        for (std::size_t b = 0; b < basis.size(); ++b)
            out.m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                row[static_cast<Eigen::Index>(b)];
    }
    return out;
}

FiniteBilinearForm kernel_matrix_form(const ProductKernel& k, const TensorBasis& basis) {
    FiniteBilinearForm out(basis);
    const DyadicRectangle w = basis.window();
    const std::size_t n1 = std::size_t{1} << basis.b1.res;
    const std::size_t n2 = std::size_t{1} << basis.b2.res;
    Signal1D ax1(w.i1, basis.b1.res), ax2(w.i2, basis.b2.res);
    const double h1 = ax1.cell_width(), h2 = ax2.cell_width();

    if (k.tensor()) {
        // Per-axis Gram matrices G[a][b] = Σ_{i≠j} e_a(t_i) e_b(x_j) k(x_j, t_i) h^2.
        auto gram = [](const Basis1D& basis1, const std::function<double(double, double)>& factor,
                       const Signal1D& ax, double h) {
            const std::size_t n = std::size_t{1} << basis1.res;
            // cell matrix first
            Eigen::MatrixXd cell(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    cell(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                        i == j ? 0.0 : factor(ax.cell_center(j), ax.cell_center(i)) * h * h;
            // basis matrix B[idx][cell]
            Eigen::MatrixXd b(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
            for (std::size_t idx = 0; idx < n; ++idx) {
                const Signal1D fn = basis1.function_of(idx);
                for (std::size_t c = 0; c < n; ++c)
                    b(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(c)) = fn.v[c];
            }
            // G = B * cell * B^T  (t index contracts with rows, x with cols)
            return Eigen::MatrixXd(b * cell * b.transpose());
        };
        const Eigen::MatrixXd g1 = gram(basis.b1, k.factor1, ax1, h1);
        const Eigen::MatrixXd g2 = gram(basis.b2, k.factor2, ax2, h2);
        for (std::size_t a1 = 0; a1 < basis.n1(); ++a1)
            for (std::size_t a2 = 0; a2 < basis.n2(); ++a2)
                for (std::size_t b1 = 0; b1 < basis.n1(); ++b1)
                    for (std::size_t b2 = 0; b2 < basis.n2(); ++b2)
                        out.m(static_cast<Eigen::Index>(basis.flat(a1, a2)),
                              static_cast<Eigen::Index>(basis.flat(b1, b2))) =
                            g1(static_cast<Eigen::Index>(a1), static_cast<Eigen::Index>(b1)) *
                            g2(static_cast<Eigen::Index>(a2), static_cast<Eigen::Index>(b2));
        return out;
    }

    // Generic: cell-space operator matrix, then conjugate by the basis.
    // K(cell_x, cell_t) with both diagonals skipped.
    const std::size_t n = n1 * n2;
    Eigen::MatrixXd cell(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(n); ++t) {
        const std::size_t t1 = std::size_t(t) / n2, t2 = std::size_t(t) % n2;
        for (std::size_t x = 0; x < n; ++x) {
            const std::size_t x1 = x / n2, x2 = x % n2;
            double val = 0.0;
            if (x1 != t1 && x2 != t2)
                val = k.eval(ax1.cell_center(x1), ax2.cell_center(x2), ax1.cell_center(t1),
                             ax2.cell_center(t2))
                          .real() *
                      (h1 * h2) * (h1 * h2);
            cell(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(x)) = val;
        }
    }
    // basis matrix in cell space, rows = flat basis index
    Eigen::MatrixXd b(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t a1 = 0; a1 < basis.n1(); ++a1) {
        const Signal1D f1 = basis.b1.function_of(a1);
        for (std::size_t a2 = 0; a2 < basis.n2(); ++a2) {
            const Signal1D f2 = basis.b2.function_of(a2);
            for (std::size_t i = 0; i < n1; ++i)
                for (std::size_t j = 0; j < n2; ++j)
                    b(static_cast<Eigen::Index>(basis.flat(a1, a2)),
                      static_cast<Eigen::Index>(i * n2 + j)) = f1.v[i] * f2.v[j];
        }
    }
    out.m = b * cell * b.transpose();
    return out;
}

void save_form(const FiniteBilinearForm& f, const std::string& path, double tol) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_form: cannot open " + path);
    const DyadicRectangle w = f.basis.window();
    out << "form," << w.i1.level << "," << w.i1.offset << "," << w.i2.level << "," << w.i2.offset
        << "," << f.basis.b1.res << "," << f.basis.b2.res << "\r\n";
    out.precision(17);
    for (Eigen::Index r = 0; r < f.m.rows(); ++r)
        for (Eigen::Index c = 0; c < f.m.cols(); ++c)
            if (std::abs(f.m(r, c)) > tol) out << r << "," << c << "," << f.m(r, c) << "\r\n";
}

FiniteBilinearForm load_form(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_form: cannot open " + path);
    std::string line;
    std::getline(in, line);
    int l1, l2, r1, r2;
    std::int64_t o1, o2;
    if (std::sscanf(line.c_str(), "form,%d,%ld,%d,%ld,%d,%d", &l1, &o1, &l2, &o2, &r1, &r2) != 6)
        throw std::runtime_error("load_form: bad header");
    TensorBasis basis({{l1, o1}, {l2, o2}}, r1, r2);
    FiniteBilinearForm f(basis);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        long row, col;
        double val;
        if (std::sscanf(line.c_str(), "%ld,%ld,%lf", &row, &col, &val) == 3)
            f.m(row, col) = val;
    }
    return f;
}

} // namespace dyadlab
