#include <doctest.h>

#include <random>

#include "eop/elliptic.hpp"

using namespace eop;

namespace {

// e_i from the AGM integrals, independent of the theta route
struct KForms {
    cplx e1, e2, e3, eta1;
};
KForms k_forms(cplx t)
{
    KE ke = elliptic_KE(t);
    cplx K2 = ke.K * ke.K;
    return {4.0 / 3.0 * K2 * (2.0 - t), -4.0 / 3.0 * K2 * (1.0 + t), 4.0 / 3.0 * K2 * (2.0 * t - 1.0),
            2.0 / 3.0 * ke.K * ((t - 2.0) * ke.K + 3.0 * ke.E)};
}

} // namespace

TEST_CASE("theta constants: small nome and Jacobi quartic")
{
    ThetaConstants th = theta_constants(cplx(0, 12));
    CHECK(std::abs(th.th3 - 1.0) < 1e-15);
    CHECK(rel_err(th.th2, 2.0 * std::exp(-3.0 * pi)) < 1e-12); // 2 q^{1/4}
    ThetaConstants j = theta_constants(cplx(1, 1));
    cplx lhs = std::pow(j.th3, 4), rhs = std::pow(j.th2, 4) + std::pow(j.th4, 4);
    CHECK(rel_err(lhs, rhs) < 1e-14);
}

TEST_CASE("theta constants refuse a large nome")
{
    CHECK_THROWS_AS(theta_constants(cplx(0, 0.04)), Error);
    try {
        theta_constants(cplx(0, 0.04));
    } catch (const Error& e) {
        CHECK(e.kind() == Err::NomeTooLarge);
    }
}

TEST_CASE("square lattice")
{
    LatticeData L = lattice_from_tau(cplx(0, 1));
    CHECK(std::abs(L.e3) < 1e-12);
    CHECK(std::abs(L.g3) < 1e-12);
    CHECK(std::abs(L.t - 0.5) < 1e-12);
    KE ke = elliptic_KE(0.5);
    CHECK(rel_err(L.e1 - L.e2, 4.0 * ke.K * ke.K) < 1e-10);
}

TEST_CASE("lattice invariants")
{
    for (cplx tau : {cplx(0, 1.2), cplx(0.3, 1.1), cplx(-0.2, 0.7)}) {
        LatticeData L = lattice_from_tau(tau);
        double es = std::max({std::abs(L.e1), std::abs(L.e2), std::abs(L.e3)});
        CHECK(std::abs(L.e1 + L.e2 + L.e3) < 1e-12 * es);
        CHECK(rel_err(L.g2, -4.0 * (L.e1 * L.e2 + L.e1 * L.e3 + L.e2 * L.e3)) < 1e-12);
        CHECK(rel_err(L.g3, 4.0 * L.e1 * L.e2 * L.e3) < 1e-12);
        CHECK(rel_err(L.eta1_shift, 2.0 * L.eta1) < 1e-12);
        CHECK(std::abs(L.q) < 1.0);
        CHECK(rel_err(L.e1 - L.e2, 4.0 * L.K * L.K) < 1e-10);
    }
}

TEST_CASE("theta and AGM forms agree near the imaginary axis")
{
    for (cplx tau : {cplx(0, 1.2), cplx(0.3, 1.1)}) {
        LatticeData L = lattice_from_tau(tau);
        KForms f = k_forms(L.t);
        CHECK(rel_err(L.eta1, f.eta1) < 1e-10);
        CHECK(rel_err(L.e1, f.e1) < 1e-10);
        CHECK(rel_err(L.e2, f.e2) < 1e-10);
        CHECK(rel_err(L.e3, f.e3) < 1e-10);
    }
}

TEST_CASE("lattice_from_t inverts lambda")
{
    LatticeData L = lattice_from_tau(cplx(0, 1.3));
    LatticeData Lt = lattice_from_t(L.t);
    CHECK(std::abs(Lt.tau - L.tau) < 1e-12);
    CHECK(rel_err(Lt.g2, L.g2) < 1e-11);
    CHECK(rel_err(Lt.g3, L.g3) < 1e-11);
}

TEST_CASE("weierstrass: cubic, parity, periodicity, half periods")
{
    LatticeData L = lattice_from_tau(cplx(0.1, 0.9));
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int i = 0; i < 50; ++i) {
        cplx z = u(rng) + u(rng) * L.tau;
        if (lattice_distance(z, L) < 0.05)
            continue;
        WpValues W = weierstrass(z, L);
        cplx rhs = 4.0 * W.p * W.p * W.p - L.g2 * W.p - L.g3;
        CHECK(std::abs(W.dp * W.dp - rhs) < 1e-10 * std::max(std::abs(rhs), std::abs(4.0 * W.p * W.p * W.p)));
        WpValues M = weierstrass(-z, L);
        CHECK(rel_err(M.p, W.p) < 1e-12);
        CHECK(rel_err(M.zeta, -W.zeta) < 1e-12);
        CHECK(rel_err(wp(z + 1.0, L), W.p) < 1e-10);
        CHECK(rel_err(wp(z + L.tau, L), W.p) < 1e-10);
        CHECK(std::abs(weierstrass(z + 1.0, L).zeta - W.zeta - L.eta1_shift) < 1e-11 * std::max(1.0, std::abs(L.eta1_shift)));
        // duplication: wp(2z) = (wp''/(2 wp'))^2 - 2 wp, wp'' = 6 wp^2 - g2/2
        if (lattice_distance(2.0 * z, L) > 0.05) {
            cplx r = (6.0 * W.p * W.p - L.g2 / 2.0) / (2.0 * W.dp);
            CHECK(rel_err(wp(2.0 * z, L), r * r - 2.0 * W.p) < 1e-9);
        }
    }
    CHECK(rel_err(wp(0.5, L), L.e1) < 1e-11);
    CHECK(rel_err(wp(L.tau / 2.0, L), L.e2) < 1e-11);
    CHECK(rel_err(wp((1.0 + L.tau) / 2.0, L), L.e3) < 1e-11);
}

TEST_CASE("weierstrass near the origin and at a lattice point")
{
    LatticeData L = lattice_from_tau(cplx(0, 1));
    cplx z = 1e-3 * std::exp(I * 0.4);
    CHECK(std::abs(z * z * wp(z, L) - 1.0) < 1e-5);
    CHECK_THROWS_AS(weierstrass(1.0 + L.tau, L), Error);
}

TEST_CASE("elliptic integrals")
{
    KE k0 = elliptic_KE(0.0);
    CHECK(std::abs(k0.K - pi / 2) < 1e-15);
    CHECK(std::abs(k0.E - pi / 2) < 1e-15);
    for (cplx t : {cplx(0.3), cplx(0.2, 0.1)}) {
        KE a = elliptic_KE(t), b = elliptic_KE(1.0 - t);
        CHECK(std::abs(a.E * b.K + b.E * a.K - a.K * b.K - pi / 2) < 1e-12);
    }
    CHECK_THROWS_AS(elliptic_KE(1.5), Error);
}

TEST_CASE("lattice_from_tau is deterministic")
{
    LatticeData a = lattice_from_tau(cplx(0.3, 1.1)), b = lattice_from_tau(cplx(0.3, 1.1));
    CHECK(a.g2 == b.g2);
    CHECK(a.eta1 == b.eta1);
}
