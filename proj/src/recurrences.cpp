#include "eop/recurrences.hpp"

#include <algorithm>
#include <cmath>

namespace eop {

namespace {

// probe points in the cell, scaled to stay away from gamma (Im = Im tau / 2)
const std::array<std::pair<double, double>, 5> probes = {
    {{0.13, 0.17}, {0.31, -0.14}, {-0.22, 0.31}, {0.41, 0.04}, {0.07, -0.27}}};

std::map<int, EllipticPolynomial> polys_upto(int n, const MomentTable& T)
{
    std::map<int, EllipticPolynomial> P;
    for (int m = 0; m <= n; ++m)
        if (m != 1)
            P[m] = build_pi(m, T);
    return P;
}

} // namespace

RecurrenceLadder ladder_direct(int n_max, const MomentTable& T)
{
    if (!T.weight.is_one())
        throw Error(Err::WeightNotConstant, "recurrence ladder needs the constant weight");
    RecurrenceLadder lad;
    lad.lat = T.lat;
    HankelLadder H = build_ladder(T, n_max);
    lad.h = H.h;
    lad.beta[2] = H.h.at(2) / H.h.at(0);
    for (int n = 3; n <= n_max; ++n)
        lad.beta[n] = H.h.at(n) / H.h.at(n - 1);
    double ti = T.lat.tau.imag();
    for (int n = 3; n <= n_max; ++n) {
        RHPMatrix Y = assemble_Y(n, T);
        std::vector<cplx> vals;
        for (auto [x, y] : probes) {
            cplx z(x, y * ti);
            vals.push_back(Y(z).determinant() - wp(z, T.lat));
        }
        cplx mean = 0;
        for (cplx v : vals)
            mean += v;
        mean /= double(vals.size());
        double spread = 0;
        for (cplx v : vals)
            spread = std::max(spread, std::abs(v - mean));
        spread /= std::max(1.0, std::abs(mean));
        if (spread > 1e-8)
            throw Error(Err::NonConvergent,
                        "alpha_" + std::to_string(n) + " probe spread exceeds 1e-8");
        lad.alpha[n] = mean;
        lad.alpha_src[n] = AlphaSource::Direct;
        lad.alpha_spread[n] = spread;
    }
    for (int n = 3; n < n_max; ++n)
        lad.B[n] = lad.beta.at(n + 1) + lad.beta.at(n) + lad.alpha.at(n) + lad.alpha.at(n + 1);
    return lad;
}

cplx alpha_step(cplx ap, cplx a, int n, const LatticeData& lat, AlphaVariant v)
{
    const cplx g2 = lat.g2, g3 = lat.g3;
    const double nn = n;
    cplx a3 = a * a * a;
    cplx num = (1.0 - nn) * a * (4.0 * a3 - 3.0 * g2 * a + 4.0 * g3) -
               ap * (4.0 * (nn - 2) * a3 + nn * g2 * a - (2 * nn - 1) * g3);
    cplx head = 4.0 * nn * a3 + (nn - 1) * ap * (g2 - 12.0 * a * a) + g2 * (nn - 2) * a;
    cplx tail = (2 * nn - 3) * (v == AlphaVariant::MinusG3  ? -g3
                                : v == AlphaVariant::PlusG3 ? g3
                                                            : -g2);
    cplx den = head + tail;
    double scale = std::abs(head) + std::abs(tail);
    if (std::abs(den) <= 1e-12 * scale)
        throw Error(Err::SingularRecurrence, "alpha recurrence denominator vanishes");
    return num / den;
}

cplx alpha_xy(cplx am, cplx a, cplx ap, int n, const LatticeData& lat)
{
    const cplx g2 = lat.g2, g3 = lat.g3;
    const double nn = n;
    cplx X = ap * (2.0 * g2 * (1 - 2 * nn) * a +
                   am * (4.0 * (nn - 2) * a * a + 2.0 * g2 * nn + g2) +
                   4.0 * (nn - 1) * a * a * a + g3 * (2 * nn - 3)) -
             g3 * (2 * nn + 1) * (am - a) + 4.0 * nn * (a - am) * ap * ap * ap -
             4.0 * (2 * nn - 1) * (am - a) * a * ap * ap;
    cplx Y = a * (4.0 * a * ((nn - 2) * am + (nn - 1) * a) + g2 * (3 - 2 * nn)) +
             4.0 * (nn + 1) * (am - a) * ap * ap + 4.0 * (2 * nn - 1) * a * (a - am) * ap +
             g3 * (2 * nn - 3);
    if (std::abs(Y) == 0.0)
        throw Error(Err::SingularRecurrence, "X/Y denominator vanishes");
    return X / Y;
}

cplx beta_rec(cplx am, cplx a, cplx ap, const LatticeData& lat)
{
    cplx den = 4.0 * (am - a) * (a - ap);
    if (std::abs(den) == 0.0)
        throw Error(Err::SingularRecurrence, "beta recurrence denominator vanishes");
    return (lat.g3 - lat.g2 * a + 4.0 * a * a * a) / den;
}

RecurrenceLadder ladder_recursed(const RecurrenceLadder& d, int n_max, AlphaVariant v)
{
    RecurrenceLadder r = d;
    for (int n = 4; n < n_max; ++n) {
        r.alpha[n + 1] = alpha_step(r.alpha.at(n - 1), r.alpha.at(n), n, d.lat, v);
        r.alpha_src[n + 1] = AlphaSource::Recursed;
        r.alpha_spread.erase(n + 1);
    }
    return r;
}

cplx comrec_residual(int n, const RecurrenceLadder& lad)
{
    const cplx g2 = lad.lat.g2, g3 = lad.lat.g3;
    cplx a = lad.alpha.at(n), am = lad.alpha.at(n - 1), ap = lad.alpha.at(n + 1);
    return -a * a * a + g2 * a / 4.0 - g3 / 4.0 - lad.beta.at(n) * (am - a) * (ap - a);
}

cplx three_term_residual(int n, cplx z, const RecurrenceLadder& lad, const MomentTable& T)
{
    if (n < 4)
        throw Error(Err::InvalidBasisIndex, "three-term relation needs n >= 4");
    auto P = polys_upto(n + 2, T);
    WpValues W = weierstrass(z, T.lat);
    cplx bb = lad.beta.at(n) * lad.beta.at(n - 1);
    return eval_pi(P[n + 2], W) - (W.p - lad.B.at(n)) * eval_pi(P[n], W) +
           bb * eval_pi(P[n - 2], W);
}

cplx one_step_residual(int n, cplx z, const RecurrenceLadder& lad, const MomentTable& T)
{
    if (n < 3)
        throw Error(Err::InvalidBasisIndex, "one-step relation needs n >= 3");
    auto P = polys_upto(n + 1, T);
    WpValues W = weierstrass(z, T.lat);
    cplx fn = lad.f(n, W.p), fn1 = lad.f(n + 1, W.p);
    return eval_pi(P[n + 1], W) + W.dp * eval_pi(P[n], W) / (2.0 * fn) +
           lad.beta.at(n) * fn1 * eval_pi(P[n - 1], W) / fn;
}

LaxPair lax_matrices(int n, const WpValues& W, const RecurrenceLadder& lad)
{
    cplx fn = lad.f(n, W.p);
    if (std::abs(fn) < 1e-10)
        throw Error(Err::PoleOfSystem, "f_" + std::to_string(n) + "(z) vanishes");
    cplx fp = lad.f(n + 1, W.p), fm = lad.f(n - 1, W.p);
    cplx hn = lad.h.at(n), hm = lad.h.at(n - 1);
    const double nn = n;
    LaxPair lp;
    lp.R << -W.dp / 2.0, -hn / two_pi_i * fp, two_pi_i / hn * fn, 0.0;
    lp.R /= fn;
    lp.L << nn * W.dp / 2.0, hn / two_pi_i * ((nn - 1) * fn + nn * fp),
        two_pi_i / hm * ((2 - nn) * fm + (1 - nn) * fn), (2 - nn) * W.dp / 2.0;
    lp.L /= fn;
    return lp;
}

LaxPair lax_matrices(int n, cplx z, const RecurrenceLadder& lad)
{
    return lax_matrices(n, weierstrass(z, lad.lat), lad);
}

double compatibility_residual(int n, cplx z, const RecurrenceLadder& lad)
{
    WpValues W = weierstrass(z, lad.lat);
    LaxPair a = lax_matrices(n, W, lad), b = lax_matrices(n + 1, W, lad);
    cplx fn = lad.f(n, W.p), fp = lad.f(n + 1, W.p);
    cplx hn = lad.h.at(n);
    cplx ddp = 6.0 * W.p * W.p - lad.lat.g2 / 2.0;
    Mat2 M, dM;
    M << -W.dp / 2.0, -hn / two_pi_i * fp, two_pi_i / hn * fn, 0.0;
    dM << -ddp / 2.0, -hn / two_pi_i * W.dp, two_pi_i / hn * W.dp, 0.0;
    Mat2 dR = dM / fn - W.dp / (fn * fn) * M;
    Mat2 res = dR - b.L * a.R + a.R * a.L;
    return res.cwiseAbs().maxCoeff();
}

std::array<cplx, 4> q_residuals(int n, const RecurrenceLadder& lad)
{
    const cplx g2 = lad.lat.g2, g3 = lad.lat.g3;
    const double nn = n;
    cplx am = lad.alpha.at(n - 1), a = lad.alpha.at(n), a1 = lad.alpha.at(n + 1),
         a2 = lad.alpha.at(n + 2);
    cplx b = lad.beta.at(n), b1 = lad.beta.at(n + 1);
    std::array<cplx, 4> r;
    r[0] = (nn - 2) * a - (nn + 1) * a1 + (2 * nn - 3) * b - (2 * nn + 1) * b1;
    r[1] = 3.0 * a * a1 + g2 / 2.0 -
           (((nn - 2) * am + (nn - 1) * a + 2 * (2 * nn - 3) * a1) * b -
            ((4 * nn + 2) * a + nn * a1 + (nn + 1) * a2) * b1);
    r[2] = 3.0 * g3 + g2 * nn * a - g2 * (nn - 1) * a1 -
           (4.0 * a1 * (2 * (nn - 2) * am + 2 * (nn - 1) * a + (2 * nn - 3) * a1) * b -
            4.0 * a * ((2 * nn + 1) * a + 2 * nn * a1 + 2 * (nn + 1) * a2) * b1);
    r[3] = -a1 * (g2 * a + g3 * (nn - 2)) + g3 * (nn + 1) * a -
           (-4.0 * (nn * a1 + (nn + 1) * a2) * a * a * b1 +
            4.0 * ((nn - 2) * am + (nn - 1) * a) * a1 * a1 * b);
    return r;
}

} // namespace eop
