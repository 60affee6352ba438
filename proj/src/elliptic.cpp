#include "eop/elliptic.hpp"

#include <array>
#include <cmath>

namespace eop {

const char* err_name(Err e)
{
    switch (e) {
    case Err::NomeTooLarge: return "NomeTooLarge";
    case Err::NonConvergent: return "NonConvergent";
    case Err::LatticePoint: return "LatticePoint";
    case Err::BranchCut: return "BranchCut";
    case Err::BranchAmbiguity: return "BranchAmbiguity";
    case Err::WeightNotConstant: return "WeightNotConstant";
    case Err::InvalidBasisIndex: return "InvalidBasisIndex";
    case Err::DepthExceeded: return "DepthExceeded";
    case Err::MissingMoments: return "MissingMoments";
    case Err::SingularLadder: return "SingularLadder";
    case Err::SingularMomentMatrix: return "SingularMomentMatrix";
    case Err::SingularRecurrence: return "SingularRecurrence";
    case Err::TooCloseToContour: return "TooCloseToContour";
    case Err::PoleOfSystem: return "PoleOfSystem";
    case Err::FormulaMismatch: return "FormulaMismatch";
    case Err::DegenerateU: return "DegenerateU";
    case Err::NonConstantS: return "NonConstantS";
    case Err::Usage: return "Usage";
    }
    return "Unknown";
}

namespace {

// exp(i pi tau x) for real x
cplx qpow(cplx tau, double x) { return std::exp(I * pi * tau * x); }

} // namespace

ThetaConstants theta_constants(cplx tau, const TruncationPolicy& pol)
{
    if (tau.imag() <= 0.0)
        throw Error(Err::Usage, "Im tau must be positive");
    double aq = std::exp(-pi * tau.imag());
    if (aq > pol.max_abs_q)
        throw Error(Err::NomeTooLarge, "|q| = " + std::to_string(aq));

    ThetaConstants th{};
    cplx s3 = 0, s4 = 0;
    bool done = false;
    for (int n = 1; n <= pol.max_terms; ++n) {
        cplx b = qpow(tau, double(n) * n);
        s3 += b;
        s4 += (n % 2 ? -b : b);
        if (std::abs(b) < pol.rel_tol) {
            done = true;
            break;
        }
    }
    if (!done)
        throw Error(Err::NonConvergent, "theta_3/theta_4 series");
    th.th3 = 1.0 + 2.0 * s3;
    th.th4 = 1.0 + 2.0 * s4;

    cplx s2 = 0, s1p = 0, s1ppp = 0;
    done = false;
    for (int n = 0; n <= pol.max_terms; ++n) {
        double h = n + 0.5;
        cplx a = qpow(tau, h * h);
        double sg = (n % 2) ? -1.0 : 1.0;
        double m = 2 * n + 1;
        s2 += a;
        s1p += sg * m * a;
        s1ppp += sg * m * m * m * a;
        if (n > 0 && std::abs(a) * m * m * m < pol.rel_tol * std::abs(s1ppp)) {
            done = true;
            break;
        }
    }
    if (!done)
        throw Error(Err::NonConvergent, "theta_1/theta_2 series");
    th.th2 = 2.0 * s2;
    th.th1p = 2.0 * s1p;
    th.th1ppp = -2.0 * s1ppp;
    return th;
}

KE elliptic_KE(cplx t)
{
    if (t.imag() == 0.0 && t.real() >= 1.0)
        throw Error(Err::BranchCut, "t on [1, inf)");
    cplx a = 1.0, b = std::sqrt(1.0 - t);
    cplx csum = 0.5 * t; // sum 2^{n-1} c_n^2 with c_0^2 = t
    double pw = 0.5;
    for (int it = 0; it < 60; ++it) {
        cplx an = 0.5 * (a + b);
        cplx bn = std::sqrt(a * b);
        if (std::abs(an - bn) > std::abs(an + bn))
            bn = -bn;
        cplx c = 0.5 * (a - b);
        pw *= 2.0;
        csum += pw * c * c;
        a = an;
        b = bn;
        if (std::abs(c) < 1e-17 * std::abs(a))
            break;
    }
    KE r;
    r.K = pi / (2.0 * a);
    r.E = r.K * (1.0 - csum);
    return r;
}

LatticeData lattice_from_tau(cplx tau, const TruncationPolicy& pol)
{
    LatticeData L;
    L.tau = tau;
    L.pol = pol;
    L.q = std::exp(I * pi * tau);
    L.th = theta_constants(tau, pol);
    const auto& th = L.th;
    cplx t2 = std::pow(th.th2, 4), t3 = std::pow(th.th3, 4), t4 = std::pow(th.th4, 4);
    double c = pi * pi / 3.0;
    L.e1 = c * (t3 + t4);
    L.e2 = -c * (t2 + t3);
    L.e3 = c * (t2 - t4);
    L.g2 = -4.0 * (L.e1 * L.e2 + L.e1 * L.e3 + L.e2 * L.e3);
    L.g3 = 4.0 * L.e1 * L.e2 * L.e3;
    L.t = t2 / t3;
    L.eta1 = -(pi * pi / 6.0) * th.th1ppp / th.th1p;
    L.eta1_shift = 2.0 * L.eta1;
    L.eta2_shift = tau * L.eta1_shift - two_pi_i;
    // K and E consistent with this lattice (the AGM principal branch is not,
    // away from the imaginary axis)
    L.K = 0.5 * pi * th.th3 * th.th3;
    L.E = (1.5 * L.eta1 / L.K - (L.t - 2.0) * L.K) / 3.0;
    L.from_theta = true;
    return L;
}

LatticeData lattice_from_t(cplx t, const TruncationPolicy& pol)
{
    LatticeData L;
    L.pol = pol;
    L.t = t;
    KE ke = elliptic_KE(t);
    KE kc = elliptic_KE(1.0 - t);
    L.K = ke.K;
    L.E = ke.E;
    L.tau = I * kc.K / ke.K;
    L.q = std::exp(I * pi * L.tau);
    cplx K2 = ke.K * ke.K;
    L.e1 = 4.0 / 3.0 * K2 * (2.0 - t);
    L.e2 = -4.0 / 3.0 * K2 * (1.0 + t);
    L.e3 = 4.0 / 3.0 * K2 * (2.0 * t - 1.0);
    L.g2 = 64.0 / 3.0 * (t * t - t + 1.0) * K2 * K2;
    L.g3 = 256.0 / 27.0 * (2.0 * t - 1.0) * (t - 2.0) * (t + 1.0) * K2 * K2 * K2;
    L.eta1 = 2.0 / 3.0 * ke.K * ((t - 2.0) * ke.K + 3.0 * ke.E);
    L.eta1_shift = 2.0 * L.eta1;
    L.eta2_shift = L.tau * L.eta1_shift - two_pi_i;
    if (std::abs(L.q) <= pol.max_abs_q)
        L.th = theta_constants(L.tau, pol);
    L.from_theta = false;
    return L;
}

Reduced reduce(cplx z, cplx tau)
{
    double y = z.imag() / tau.imag();
    double n = std::round(y);
    cplx z1 = z - n * tau;
    double m = std::round(z1.real());
    cplx z0 = z1 - m;
    // re-centre on the nearest lattice point among the neighbours
    double best = std::abs(z0);
    double bm = 0, bn = 0;
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b) {
            double d = std::abs(z0 - double(a) - double(b) * tau);
            if (d < best) {
                best = d;
                bm = a;
                bn = b;
            }
        }
    return {z0 - bm - bn * tau, m + bm, n + bn};
}

double lattice_distance(cplx z, const LatticeData& lat)
{
    return std::abs(reduce(z, lat.tau).z0);
}

namespace {

struct ThetaAt {
    cplx th1, th1p, th2, th3, th4;
};

ThetaAt theta_at(cplx v, const LatticeData& lat)
{
    const cplx tau = lat.tau;
    const int nmax = lat.pol.max_terms;
    cplx w = std::exp(I * v), wi = 1.0 / w;
    cplx w2 = w * w, wi2 = wi * wi;
    // odd harmonics for theta_1, theta_2
    cplx s1 = 0, s1p = 0, s2 = 0;
    cplx wp = w, wm = wi;
    for (int n = 0; n <= nmax; ++n) {
        double h = n + 0.5;
        cplx a = qpow(tau, h * h);
        double sg = (n % 2) ? -1.0 : 1.0;
        double m = 2 * n + 1;
        cplx sn = (wp - wm) / (2.0 * I);
        cplx cs = 0.5 * (wp + wm);
        s1 += sg * a * sn;
        s1p += sg * a * m * cs;
        s2 += a * cs;
        double mag = std::abs(a) * std::max(std::abs(wp), std::abs(wm)) * m;
        if (n > 1 && mag < 1e-18 * (std::abs(s1) + std::abs(s2) + 1e-300))
            break;
        wp *= w2;
        wm *= wi2;
    }
    // even harmonics for theta_3, theta_4
    cplx s3 = 0, s4 = 0;
    wp = w2;
    wm = wi2;
    for (int n = 1; n <= nmax; ++n) {
        cplx b = qpow(tau, double(n) * n);
        cplx cs = 0.5 * (wp + wm);
        s3 += b * cs;
        s4 += ((n % 2) ? -1.0 : 1.0) * b * cs;
        double mag = std::abs(b) * std::max(std::abs(wp), std::abs(wm));
        if (mag < 1e-18)
            break;
        wp *= w2;
        wm *= wi2;
    }
    return {2.0 * s1, 2.0 * s1p, 2.0 * s2, 1.0 + 2.0 * s3, 1.0 + 2.0 * s4};
}

// Laurent coefficients c_k of wp = z^-2 + sum_{k>=2} c_k z^{2k-2}
std::array<cplx, 8> laurent_coeffs(cplx g2, cplx g3)
{
    std::array<cplx, 8> c{};
    c[2] = g2 / 20.0;
    c[3] = g3 / 28.0;
    for (int k = 4; k < 8; ++k) {
        cplx s = 0;
        for (int m = 2; m <= k - 2; ++m)
            s += c[m] * c[k - m];
        c[k] = 3.0 / double((2 * k + 1) * (k - 3)) * s;
    }
    return c;
}

} // namespace

WpValues weierstrass(cplx z, const LatticeData& lat)
{
    Reduced r = reduce(z, lat.tau);
    cplx z0 = r.z0;
    double d = std::abs(z0);
    if (d < 1e-8)
        throw Error(Err::LatticePoint, "z on the lattice");
    WpValues out;
    if (d < 1e-3) {
        auto c = laurent_coeffs(lat.g2, lat.g3);
        cplx z2 = z0 * z0;
        cplx p = 1.0 / z2, dp = -2.0 / (z2 * z0), ze = 1.0 / z0;
        cplx pw = z2; // z^{2k-2}
        for (int k = 2; k <= 7; ++k) {
            p += c[k] * pw;
            dp += double(2 * k - 2) * c[k] * pw / z0;
            ze -= c[k] * pw * z0 / double(2 * k - 1);
            pw *= z2;
        }
        out = {p, dp, ze};
    } else {
        const auto& th = lat.th;
        cplx v = pi * z0;
        ThetaAt T = theta_at(v, lat);
        cplx f = pi * th.th3 * th.th4 * T.th2 / T.th1;
        out.p = lat.e1 + f * f;
        out.dp = -2.0 * pi * pi * pi * th.th1p * th.th1p * T.th2 * T.th3 * T.th4 /
                 (T.th1 * T.th1 * T.th1);
        out.zeta = lat.eta1_shift * z0 + pi * T.th1p / T.th1;
    }
    out.zeta += r.m * lat.eta1_shift + r.n * lat.eta2_shift;
    return out;
}

cplx wp(cplx z, const LatticeData& lat) { return weierstrass(z, lat).p; }

} // namespace eop
