#include "eop/polynomials.hpp"

#include <algorithm>
#include <cmath>

namespace eop {

cplx basis_value(int i, const WpValues& W)
{
    if (i < 0 || i == 1)
        throw Error(Err::InvalidBasisIndex, "basis index " + std::to_string(i));
    if (i % 2 == 0)
        return std::pow(W.p, i / 2);
    return -0.5 * W.dp * std::pow(W.p, (i - 3) / 2);
}

EllipticPolynomial build_pi(int n, const MomentTable& T)
{
    if (n < 0 || n == 1)
        throw Error(Err::InvalidBasisIndex, "no polynomial of degree " + std::to_string(n));
    EllipticPolynomial p;
    p.degree = n;
    p.coeff.assign(size_t(n) + 1, 0.0);
    p.coeff[n] = 1.0;
    if (n == 0)
        return p;
    auto idx = basis_indices(n);
    int m = int(idx.size());
    MatX S(m, m);
    VecX rhs(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j)
            S(i, j) = T.mixed(idx[i], idx[j]);
        rhs(i) = -T.mixed(n, idx[i]);
    }
    DetResult d = lu_det(S);
    if (d.singular())
        throw Error(Err::SingularMomentMatrix, "D_" + std::to_string(n) + " vanishes");
    VecX c = S.partialPivLu().solve(rhs);
    for (int i = 0; i < m; ++i)
        p.coeff[idx[i]] = c(i);
    return p;
}

cplx eval_pi(const EllipticPolynomial& p, const WpValues& W)
{
    // Horner in wp for the even and odd parts separately
    cplx ev = 0, od = 0;
    for (int i = p.degree; i >= 0; --i) {
        if (i == 1)
            continue;
        if (i % 2 == 0)
            ev = ev * W.p + p.coeff[i];
    }
    for (int i = p.degree; i >= 3; --i)
        if (i % 2 == 1)
            od = od * W.p + p.coeff[i];
    return ev - 0.5 * W.dp * od;
}

cplx eval_pi(const EllipticPolynomial& p, cplx z, const LatticeData& lat)
{
    return eval_pi(p, weierstrass(z, lat));
}

cplx pairing(const EllipticPolynomial& p, int m, const MomentTable& T)
{
    cplx s = 0;
    for (int i = 0; i <= p.degree; ++i)
        if (i != 1 && p.coeff[i] != 0.0)
            s += p.coeff[i] * T.mixed(i, m);
    return s;
}

cplx pairing(const EllipticPolynomial& p, const EllipticPolynomial& q, const MomentTable& T)
{
    cplx s = 0;
    for (int j = 0; j <= q.degree; ++j)
        if (j != 1 && q.coeff[j] != 0.0)
            s += q.coeff[j] * pairing(p, j, T);
    return s;
}

double contour_distance(cplx z, const LatticeData& lat)
{
    const cplx tau = lat.tau;
    const cplx a = 0.5 * tau;
    double best = 1e300;
    double n0 = std::round((z.imag() - a.imag()) / tau.imag());
    for (int dn = -1; dn <= 1; ++dn) {
        cplx P1 = z - (n0 + dn) * tau;
        double x = (P1 - a).real();
        double m0 = std::floor(x);
        for (int dm = -1; dm <= 1; ++dm) {
            cplx P = P1 - (m0 + dm);
            double s = std::clamp((P - a).real(), 0.0, 1.0);
            best = std::min(best, std::abs(P - a - s));
        }
    }
    return best;
}

cplx cauchy_transform(const EllipticPolynomial& p, cplx z, const MomentTable& T,
                      const CauchyOptions& opt)
{
    const LatticeData& lat = T.lat;
    if (contour_distance(z, lat) < opt.min_distance)
        throw Error(Err::TooCloseToContour, "z within the contour exclusion band");
    const cplx a = 0.5 * lat.tau;
    auto f = [&](cplx w) -> cplx {
        WpValues W = weierstrass(w, lat);
        cplx zw = weierstrass(w - z, lat).zeta;
        double s = (w - a).real();
        return eval_pi(p, W) * (zw - W.zeta) * T.weight(s);
    };
    QuadResult q = integrate_segment(f, a, a + 1.0, opt.tol);
    cplx c = q.value / two_pi_i;
    if (opt.periodic_completion)
        c += weierstrass(z, lat).zeta * pairing(p, 0, T) / two_pi_i;
    return c;
}

Mat2 RHPMatrix::operator()(cplx z) const
{
    WpValues W = weierstrass(z, table.lat);
    Mat2 Y;
    cplx s = two_pi_i / h_low;
    Y(0, 0) = eval_pi(top, W);
    Y(0, 1) = cauchy_transform(top, z, table, opt);
    Y(1, 0) = s * eval_pi(low, W);
    Y(1, 1) = s * cauchy_transform(low, z, table, opt);
    return Y;
}

RHPMatrix assemble_Y(int n, const MomentTable& T)
{
    if (n < 3)
        throw Error(Err::InvalidBasisIndex, "general Y_n needs n >= 3");
    RHPMatrix Y;
    Y.n = n;
    Y.table = T;
    Y.top = build_pi(n, T);
    Y.low = build_pi(n - 1, T);
    Y.h_top = pairing(Y.top, n, T);
    Y.h_low = pairing(Y.low, n - 1, T);
    return Y;
}

RHPMatrix assemble_Y_even(int k, const MomentTable& T)
{
    if (k < 1)
        throw Error(Err::InvalidBasisIndex, "even Y_{2k} needs k >= 1");
    RHPMatrix Y;
    Y.n = 2 * k;
    Y.even = true;
    Y.table = T;
    Y.top = build_pi(2 * k, T);
    Y.low = build_pi(2 * k - 2, T);
    Y.h_top = pairing(Y.top, 2 * k, T);
    Y.h_low = pairing(Y.low, 2 * k - 2, T);
    return Y;
}

double series_radius(const LatticeData& lat) { return std::min(0.25, lat.tau.imag() / 4.0); }

SeriesCoeffs series_coeffs(const EllipticPolynomial& p, const MomentTable& T)
{
    const int n = p.degree;
    const double r = series_radius(T.lat);
    const int N = 64;
    cplx h = pairing(p, n, T);
    auto a = taylor_circle([&](cplx z) { return std::pow(z, n) * eval_pi(p, z, T.lat); }, 0.0, r, N);
    auto b = taylor_circle(
        [&](cplx z) { return two_pi_i / h * std::pow(z, 1 - n) * cauchy_transform(p, z, T); }, 0.0,
        r, N);
    return {a[2], a[4], b[2], b[4]};
}

} // namespace eop
