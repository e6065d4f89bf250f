#include "doctest.h"

#include <stdexcept>

#include "dyadlab/bump.hpp"
#include "dyadlab/dyadic.hpp"

using namespace dyadlab;

TEST_CASE("bump normalization and mean-zero contracts") {
    const DyadicInterval w{-4, 0}; // [0, 16)
    const DyadicInterval i{0, 4};  // [4, 5)
    const Signal1D phi = make_bump({i, 2, 1.0, false}, w, 10);
    CHECK(std::abs(phi.l2_norm() - 1.0) <= 1e-12);

    const Signal1D psi = make_bump({i, 2, 1.0, true}, w, 10);
    CHECK(std::abs(psi.l2_norm() - 1.0) <= 1e-12);
    CHECK(std::abs(psi.integral()) <= 1e-12);

    // support stays inside the declared multiple of I
    for (std::size_t k = 0; k < psi.size(); ++k) {
        const double x = psi.cell_center(k);
        if (std::abs(x - i.center()) > 2.0 * i.length()) CHECK(psi.v[k] == 0.0);
    }
}

TEST_CASE("bump preconditions") {
    const DyadicInterval w{0, 0};
    CHECK_THROWS_AS((void)make_bump({{3, 0}, 2, 1.0, false}, w, 5), std::invalid_argument);
    // support pokes out of the window
    CHECK_THROWS_AS((void)make_bump({{1, 0}, 2, 1.0, false}, w, 10), std::invalid_argument);
    CHECK_THROWS_AS((void)make_bump({{2, 1}, 2, 1.0, false, 1.0}, w, 10),
                    std::invalid_argument);
}

TEST_CASE("adaptedness constant: regression anchor and monotonicity") {
    const DyadicInterval w{-4, 0};
    const DyadicInterval i{0, 4};
    const Signal1D phi = make_bump({i, 2, 1.0, false}, w, 13);
    const double c2 = adaptedness_constant(phi, i, 2);
    CHECK(c2 >= 0.5);
    CHECK(c2 <= 50.0);

    // increasing the measured order never decreases the constant
    double prev = adaptedness_constant(phi, i, 0);
    for (int n = 1; n <= 4; ++n) {
        const double c = adaptedness_constant(phi, i, n);
        CHECK(c >= prev - 1e-12);
        prev = c;
    }

    CHECK_THROWS_AS((void)adaptedness_constant(phi, i, 6), std::invalid_argument);
}

TEST_CASE("dilation covariance of the certifier") {
    // same analytic profile sampled on I and on 2I: constants agree within 5%
    const DyadicInterval w{-5, 0};  // [0, 32)
    const DyadicInterval i{0, 8};   // [8, 9)
    const DyadicInterval i2{-1, 4}; // [8, 10)
    const Signal1D a = make_bump({i, 2, 1.0, false}, w, 13);
    const Signal1D b = make_bump({i2, 2, 1.0, false}, w, 13);
    const double ca = adaptedness_constant(a, i, 2);
    const double cb = adaptedness_constant(b, i2, 2);
    CHECK(std::abs(ca - cb) <= 0.05 * std::max(ca, cb));
}

TEST_CASE("recentred certification obeys the size-transfer bound") {
    // bump on J measured against nearby I with |c(I)-c(J)| < max(|I|,|J|):
    // constant against I <= constant against J * (max/min)^{N+1/2}
    const DyadicInterval w{-5, 0};
    const DyadicInterval j{1, 20}; // [10, 10.5)
    const Signal1D phi = make_bump({j, 2, 1.0, false}, w, 13);
    const int order = 2;
    const double cj = adaptedness_constant(phi, j, order);
    for (const DyadicInterval i :
         {DyadicInterval{0, 10}, DyadicInterval{-1, 5}, DyadicInterval{2, 41}}) {
        if (std::abs(i.center() - j.center()) >= std::max(i.length(), j.length())) continue;
        const double ci = adaptedness_constant(phi, i, order);
        const double ratio = std::max(i.length(), j.length()) / std::min(i.length(), j.length());
        CHECK(ci <= cj * std::pow(ratio, order + 0.5) * (1.0 + 1e-9));
    }
}

TEST_CASE("tail-cut bump decays like the transfer lemma predicts") {
    // psi = phi_J * (1 - plateau at lambda J), lambda = (diam(I∪J)/|J|)^theta,
    // measured against I at order floor(theta N / 4). The certified constant
    // tracks (|J|/|I|)^{theta N/4 - 1/2} (diam(I∪J)/|I|)^{-theta N/2} up to a
    // single prefactor: ratios stay in a fixed band while the values span
    // several orders of magnitude.
    const double theta = 1.0 / 3.0;
    const int big_n = 24;
    const int meas_order = static_cast<int>(theta * big_n / 4.0); // = 2
    const DyadicInterval w{-7, 0}; // [0, 128)
    const DyadicInterval j{0, 24}; // [24, 25)
    const Signal1D phi =
        make_bump({j, big_n, 1.0, false, 4.0, BumpProfile::PolynomialTail, 12}, w, 14);

    double vmin = 1e300, vmax = 0.0;
    std::vector<double> ratios;
    for (const DyadicInterval i :
         {DyadicInterval{-2, 3}, DyadicInterval{-2, 8}, DyadicInterval{-2, 15},
          DyadicInterval{-2, 21}, DyadicInterval{-3, 4}, DyadicInterval{-3, 7},
          DyadicInterval{-3, 10}, DyadicInterval{-4, 3}, DyadicInterval{-4, 4}}) {
        const double lambda = std::pow(diam_union(i, j) / j.length(), theta);
        Signal1D cut = phi;
        for (std::size_t k = 0; k < cut.size(); ++k)
            cut.v[k] *=
                1.0 - plateau_value(cut.cell_center(k), j.center(), 0.5 * lambda * j.length());
        const double meas = adaptedness_constant(cut, i, meas_order);
        const double shape = std::pow(j.length() / i.length(), theta * big_n / 4.0 - 0.5) *
                             std::pow(diam_union(i, j) / i.length(), -theta * big_n / 2.0);
        REQUIRE(meas > 0.0);
        vmin = std::min(vmin, meas);
        vmax = std::max(vmax, meas);
        ratios.push_back(meas / shape);
    }
    CHECK(vmax / vmin >= 1e3); // the sweep genuinely exercises the decay
    for (double r : ratios) {
        CHECK(r <= 8.0);
        CHECK(r >= 0.02);
    }
}
