#include <doctest.h>

#include "eop/moments.hpp"

using namespace eop;

TEST_CASE("contour quadrature basics")
{
    LatticeData L = lattice_from_tau(cplx(0, 1));
    CHECK(std::abs(contour_quadrature([](cplx) { return cplx(1.0); }, L) - 1.0) < 1e-15);
    // int wp = -(zeta(tau/2 + 1) - zeta(tau/2))
    CHECK(rel_err(contour_quadrature([&](cplx z) { return wp(z, L); }, L), -L.eta1_shift) < 1e-10);
    CHECK(rel_err(contour_quadrature([&](cplx z) { cplx p = wp(z, L); return p * p; }, L), L.g2 / 12.0) < 1e-10);
}

TEST_CASE("low moments at the square lattice")
{
    LatticeData L = lattice_from_tau(cplx(0, 1));
    auto w = WeightSpec::one();
    CHECK(std::abs(even_moment(0, L, w) - 1.0) < 1e-14);
    CHECK(rel_err(even_moment(1, L, w), -2.0 * L.eta1) < 1e-12);
    CHECK(rel_err(even_moment(3, L, w), (L.g3 - 3.0 * L.g2 * L.eta1) / 10.0) < 1e-10);
}

TEST_CASE("recursion against quadrature")
{
    LatticeData L = lattice_from_tau(cplx(0, 1.1));
    MomentTable Tq = moments_by_quadrature(L, WeightSpec::one(), 10);
    MomentTable Tr = extend_by_recursion(Tq, 10);
    for (int j = 0; j <= 10; ++j)
        CHECK(rel_err(Tq.even[j], Tr.even[j]) < 1e-10);
    CHECK(Tr.even_src[5] == Provenance::Recursion);
    CHECK(rel_err(Tr.even[2], L.g2 / 12.0) < 1e-12);
    LatticeData Li = lattice_from_tau(cplx(0, 1));
    MomentTable Ti = moments_exact(Li, 4);
    CHECK(rel_err(Ti.even[3], 3.0 * Li.g2 * Ti.even[1] / 20.0) < 1e-12);
}

TEST_CASE("recursion needs the constant weight")
{
    LatticeData L = lattice_from_tau(cplx(0, 1));
    auto w = WeightSpec::user([](double s) { return cplx(1.0 + 0.5 * std::cos(2 * pi * s)); }, true);
    MomentTable T = moments_by_quadrature(L, w, 4);
    try {
        extend_by_recursion(T, 8);
        FAIL("expected WeightNotConstant");
    } catch (const Error& e) {
        CHECK(e.kind() == Err::WeightNotConstant);
    }
}

TEST_CASE("parity claim is checked")
{
    auto bad = WeightSpec::user([](double s) { return cplx(s); }, true);
    CHECK_THROWS_AS(bad.check_parity(), Error);
    auto good = WeightSpec::user([](double s) { return cplx(1.0 + s * (1.0 - s)); }, true);
    CHECK_NOTHROW(good.check_parity());
}

TEST_CASE("mixed moments")
{
    LatticeData L = lattice_from_tau(cplx(0, 1));
    MomentTable T = moments_by_quadrature(L, WeightSpec::one(), 10);
    CHECK(std::abs(mixed_moment(0, 0, T) - 1.0) < 1e-14);
    double mx = 0;
    for (int i = 0; i <= 9; ++i)
        for (int j = 0; j <= 9; ++j)
            if (i != 1 && j != 1)
                mx = std::max(mx, std::abs(mixed_moment(i, j, T)));
    for (int i = 0; i <= 9; ++i)
        for (int j = 0; j <= 9; ++j) {
            if (i == 1 || j == 1)
                continue;
            bool odd_i = i >= 3 && i % 2 == 1, odd_j = j >= 3 && j % 2 == 1;
            if (odd_i != odd_j)
                CHECK(std::abs(mixed_moment(i, j, T)) < 1e-10 * mx);
            CHECK(mixed_moment(i, j, T) == mixed_moment(j, i, T));
        }
    cplx d = contour_quadrature([&](cplx z) { return weierstrass(z, L).dp * weierstrass(z, L).dp; }, L);
    CHECK(rel_err(mixed_moment(3, 3, T), d / 4.0) < 1e-10);
    CHECK(rel_err(mixed_moment(3, 3, T), (4.0 * T.even[3] - L.g2 * T.even[1] - L.g3 * T.even[0]) / 4.0) < 1e-10);
    CHECK_THROWS_AS(mixed_moment(1, 2, T), Error);
}

TEST_CASE("depth guard")
{
    LatticeData L = lattice_from_tau(cplx(0, 1));
    CHECK_THROWS_AS(even_moment(25, L, WeightSpec::one()), Error);
}
