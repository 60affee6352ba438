#include "eop/painleve.hpp"

#include <algorithm>
#include <cmath>

namespace eop {

namespace {

Mat2 comm(const Mat2& a, const Mat2& b) { return a * b - b * a; }

double mat_norm(const Mat2& m) { return m.cwiseAbs().maxCoeff(); }

Mat2 to_mat(const std::vector<std::vector<cplx>>& a, int j)
{
    Mat2 m;
    m << a[0][j], a[1][j], a[2][j], a[3][j];
    return m;
}

std::vector<cplx> flatten(const Mat2& m) { return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)}; }

// radius for z-derivatives of Y: clear of gamma and of the lattice
double z_radius(cplx z, const LatticeData& lat)
{
    double d = std::min(contour_distance(z, lat), lattice_distance(z, lat));
    return std::min(0.02, 0.2 * d);
}

Taylor lift(const std::vector<cplx>& a, int order)
{
    return Taylor(std::vector<cplx>(a.begin(), a.begin() + order));
}

Taylor log_deriv(const Taylor& f) { return f.derivative() / f; }

struct UV {
    Taylor t, u, v;
};

UV uv_series(int k, const TJets& J)
{
    UV r;
    r.u = u_series(k, J);
    r.t = J.t;
    const Taylor& t = r.t;
    const Taylor& u = r.u;
    cplx u0 = u.value(), t0 = t.value();
    for (cplx s : {cplx(0.0), cplx(1.0), t0})
        if (std::abs(u0 - s) < 1e-10)
            throw Error(Err::DegenerateU, "u_k meets 0, 1 or t");
    Taylor du = u.derivative();
    Taylor one = Taylor::constant(1.0, u.size());
    Taylor w = t * (t - one);
    Taylor num = w * du + cplx(0.5) * t - u * (t - cplx(0.5) * u);
    Taylor den = cplx(2.0) * u * (u - t) * (u - one);
    r.v = num / den;
    return r;
}

Taylor zeta_uv(int k, const UV& s)
{
    const Taylor &t = s.t, &u = s.u, &v = s.v;
    Taylor one = Taylor::constant(1.0, u.size());
    double kk = k;
    Taylor z = u * (u - t) * (u - one) * v * v -
               cplx(0.5) * (t - cplx(2.0) * (one + t) * u + cplx(3.0) * u * u) * v;
    z = z + cplx(-0.5 * kk * (2 * kk - 3)) * u + cplx(0.25 * (4 * kk * kk - 6 * kk + 1)) * t;
    return cplx(-0.125) + z;
}

} // namespace

Mat2 EvenLaxData::L(const WpValues& W) const
{
    return (Lt2 * W.p * W.p + Lt1 * W.p + Lt0) / W.dp;
}

Mat2 EvenLaxData::L_partial(const WpValues& W) const
{
    const cplx e[3] = {lat.e1, lat.e2, lat.e3};
    Mat2 s = Mat2::Zero();
    for (int i = 0; i < 3; ++i)
        s += res[i] * W.dp / (W.p - e[i]);
    return s;
}

EvenLaxData even_lax(int k, const MomentTable& T)
{
    if (k < 1 || k > 5)
        throw Error(Err::InvalidBasisIndex, "even Lax pair needs 1 <= k <= 5");
    EvenLaxData d;
    d.k = k;
    d.lat = T.lat;
    const cplx g2 = T.lat.g2;
    DetResult D = delta_ext(2 * k, T), Dp = delta_ext(2 * k + 2, T),
              Dm = delta_ext(2 * k - 2, T);
    for (auto [n, r] : {std::pair{2 * k - 2, Dm}, {2 * k, D}, {2 * k + 2, Dp}})
        if (r.singular())
            throw Error(Err::SingularLadder, "Delta_" + std::to_string(n) + " vanishes");
    auto [G, Lam] = bordered(2 * k, T);
    cplx Gp = bordered(2 * k + 2, T).first, Gm = bordered(2 * k - 2, T).first;
    cplx h = Dp.value / D.value, hm = D.value / Dm.value;
    cplx c = G / D.value;

    d.theta = Mat2::Zero();
    d.theta(0, 0) = double(-2 * k);
    d.theta(1, 1) = double(2 * k - 3);
    d.U << -c, h / two_pi_i, two_pi_i / hm, c;
    cplx v11 = Lam / D.value + double(k) * g2 / 20.0;
    d.V << v11, Gp / (two_pi_i * D.value), -two_pi_i * Gm / D.value,
        -g2 / 20.0 - d.U.determinant() - v11;

    const Mat2& U = d.U;
    const Mat2& V = d.V;
    const Mat2& Th = d.theta;
    d.Lt2 = -2.0 * Th;
    d.Lt1 = -2.0 * (2.0 * U + comm(U, Th));
    d.Lt0 = -2.0 * (4.0 * V - 2.0 * U * U + comm(V, Th) - comm(U, Th) * U - 3.0 * g2 / 20.0 * Th);

    const cplx e[3] = {T.lat.e1, T.lat.e2, T.lat.e3};
    for (int i = 0; i < 3; ++i) {
        cplx prod = 1.0;
        for (int j = 0; j < 3; ++j)
            if (j != i)
                prod *= e[i] - e[j];
        d.res[i] = (d.Lt2 * e[i] * e[i] + d.Lt1 * e[i] + d.Lt0) / (4.0 * prod);
        d.res_free[i] = d.res[i] - 0.25 * Mat2::Identity();
    }
    return d;
}

MatJet y_jet(const RHPMatrix& Y, cplx z)
{
    double r = z_radius(z, Y.table.lat);
    auto a = taylor_circle_multi([&](cplx w) { return flatten(Y(w)); }, z, r, 32);
    return {to_mat(a, 0), to_mat(a, 1)};
}

double even_lax_residual(const EvenLaxData& d, const RHPMatrix& Y, cplx z)
{
    MatJet J = y_jet(Y, z);
    Mat2 L = d.L(weierstrass(z, d.lat));
    return mat_norm(J.dY - L * J.Y) / mat_norm(J.Y);
}

TauFlowResult tau_flow_residual(int k, cplx tau, cplx z)
{
    LatticeData lat = lattice_from_tau(tau);
    MomentTable T = moments_exact(lat, 2 * k + 4);
    EvenLaxData d = even_lax(k, T);
    double r = std::min(0.02, 0.5 * contour_distance(z, lat));
    auto a = taylor_circle_multi(
        [&](cplx tp) {
            LatticeData l = lattice_from_tau(tp);
            MomentTable t = moments_exact(l, 2 * k + 4);
            RHPMatrix Y = assemble_Y_even(k, t);
            auto v = flatten(Y(z));
            v.push_back(wp(z, l));
            v.push_back(l.e1);
            v.push_back(l.e2);
            v.push_back(l.e3);
            return v;
        },
        tau, r, 16);
    Mat2 Y = to_mat(a, 0), dY = to_mat(a, 1);
    cplx p = a[4][0], pdot = a[4][1];
    const cplx e[3] = {lat.e1, lat.e2, lat.e3};
    Mat2 M = Mat2::Zero();
    for (int i = 0; i < 3; ++i)
        M += d.res[i] * (pdot - a[5 + i][1]) / (p - e[i]);
    TauFlowResult out;
    out.without_half = mat_norm(dY - M * Y) / mat_norm(Y);
    out.with_half = mat_norm(dY - 0.5 * M * Y) / mat_norm(Y);
    return out;
}

FuchsianData fuchsian(int k, const MomentTable& T)
{
    EvenLaxData d = even_lax(k, T);
    const LatticeData& lat = T.lat;
    cplx s12 = lat.e1 - lat.e2;
    if (s12.real() < 0 && std::abs(s12.imag()) <= 1e-8 * std::abs(s12))
        throw Error(Err::BranchAmbiguity, "e1 - e2 on the principal cut");
    cplx s = std::pow(s12, (4.0 * k - 3.0) / 4.0);
    FuchsianData f;
    f.k = k;
    f.t = lat.t;
    f.theta0 = 1.5 - 2.0 * k;
    const cplx e[3] = {lat.e1, lat.e2, lat.e3};
    for (int i = 0; i < 3; ++i) {
        f.x[i] = (e[i] - lat.e2) / s12;
        Mat2 A = d.res_free[i];
        A(0, 1) /= s * s;
        A(1, 0) *= s * s;
        f.A[i] = A;
    }
    // numerator of sum A_i12/(x - x_i) over prod (x - x_j): c1 x + c0
    cplx c1 = 0, c0 = 0;
    for (int i = 0; i < 3; ++i) {
        cplx sum = 0, prod = 1;
        for (int j = 0; j < 3; ++j)
            if (j != i) {
                sum += f.x[j];
                prod *= f.x[j];
            }
        c1 -= f.A[i](0, 1) * sum;
        c0 += f.A[i](0, 1) * prod;
    }
    f.u_zero = -c0 / c1;
    f.g_coord = -2.0 * c1 / f.theta0;
    return f;
}

TJets t_jets(int kmax, double t0, int order)
{
    if (!(t0 > 0.0 && t0 < 1.0))
        throw Error(Err::Usage, "t must lie in (0, 1)");
    TJets J;
    J.t0 = t0;
    J.radius = std::min(0.05, 0.3 * std::min(t0, 1.0 - t0));
    const int jmax = kmax + 1;
    auto a = taylor_circle_multi(
        [&](cplx t) {
            LatticeData lat = lattice_from_t(t);
            MomentTable T = moments_exact(lat, 2 * jmax + 2);
            std::vector<cplx> v{lat.K, lat.E};
            for (int j = 0; j <= jmax; ++j)
                v.push_back(delta(2 * j, T));
            for (int j = 0; j <= jmax; ++j)
                v.push_back(bordered(2 * j, T).first);
            return v;
        },
        t0, J.radius, 32);
    J.t = Taylor::variable(t0, order);
    J.K = lift(a[0], order);
    J.E = lift(a[1], order);
    for (int j = 0; j <= jmax; ++j) {
        J.delta[j] = lift(a[2 + j], order);
        J.gamma[j] = lift(a[3 + jmax + j], order);
    }
    return J;
}

Taylor u_series(int k, const TJets& J)
{
    const Taylor& t = J.t;
    Taylor one = Taylor::constant(1.0, t.size());
    Taylor dl = log_deriv(J.delta.at(k)) - log_deriv(J.delta.at(k + 1));
    return cplx(2.0 / (4 * k - 1)) * t * (t - one) * dl + one - J.E / J.K;
}

Taylor u_gamma_series(int k, const TJets& J)
{
    const Taylor& t = J.t;
    Taylor one = Taylor::constant(1.0, t.size());
    Taylor wq = cplx((4 * k - 3) / double(4 * k - 1)) * (J.gamma.at(k) / J.delta.at(k)) -
                cplx((4 * k + 1) / double(4 * k - 1)) * (J.gamma.at(k + 1) / J.delta.at(k + 1));
    return wq / (cplx(4.0) * J.K * J.K) + cplx(1.0 / 3.0) * (one + t);
}

UResult u_of_t(int k, double t)
{
    TJets J = t_jets(k, t);
    UResult r;
    r.series = u_series(k, J);
    r.u = r.series.value();
    r.u_gamma = u_gamma_series(k, J).value();
    if (rel_err(r.u, r.u_gamma) > 1e-5)
        throw Error(Err::FormulaMismatch, "log-derivative and Gamma/Delta routes disagree");
    return r;
}

cplx pvi_defect(int k, cplx t, cplx u, cplx du, cplx ddu)
{
    double a = 2.0 * k - 0.5;
    cplx rhs = 0.5 * (1.0 / u + 1.0 / (u - 1.0) + 1.0 / (u - t)) * du * du -
               (1.0 / t + 1.0 / (t - 1.0) + 1.0 / (u - t)) * du +
               u * (u - 1.0) * (u - t) / (2.0 * t * t * (t - 1.0) * (t - 1.0)) *
                   (a * a - t / (4.0 * u * u) + (t - 1.0) / (4.0 * (u - 1.0) * (u - 1.0)) +
                    3.0 * t * (t - 1.0) / (4.0 * (u - t) * (u - t)));
    return ddu - rhs;
}

PviResidual pvi_residual(int k, double t)
{
    TJets J = t_jets(k, t);
    Taylor u = u_series(k, J);
    cplx u0 = u.value(), du = u.deriv(1), ddu = u.deriv(2);
    PviResidual r;
    r.abs = std::abs(pvi_defect(k, t, u0, du, ddu));
    // magnitude of the individual terms, for a relative reading
    r.scale = std::abs(ddu) + std::abs(ddu - pvi_defect(k, t, u0, du, ddu));
    return r;
}

VGZeta v_g_zeta(int k, double t)
{
    TJets J = t_jets(k, t);
    UV s = uv_series(k, J);
    VGZeta out;
    out.v = s.v.value();
    out.zeta = zeta_uv(k, s).value();
    out.zeta_closed = zeta_series(k, J).value();

    double kk = k;
    cplx c = -(4 * kk - 1) / (4.0 * pi * I * (4 * kk - 3));
    Taylor g = c * pow(J.K, 1.0 - 4 * kk) * J.delta.at(k + 1) / J.delta.at(k);
    out.g = g.value();
    cplx u0 = s.u.value(), tt = t;
    out.gauge_defect = g.deriv(1) / g.value() - (1 - 4 * kk) * (u0 - tt) / (2.0 * tt * (tt - 1.0));

    double th0 = 1.5 - 2 * kk;
    cplx v0 = out.v;
    cplx rhs = 3.0 / 16 + th0 / 4 * (th0 - 2) - tt * v0 * (1.0 + v0) + v0 * u0 +
               2.0 * (1.0 + tt) * v0 * v0 * u0 - 3.0 * v0 * v0 * u0 * u0;
    out.vdot_defect = tt * (tt - 1.0) * s.v.deriv(1) - rhs;
    return out;
}

Taylor zeta_series(int k, const TJets& J)
{
    const Taylor& t = J.t;
    Taylor one = Taylor::constant(1.0, t.size());
    double kk = k;
    Taylor w = t * (t - one);
    Taylor z = w * log_deriv(J.delta.at(k)) +
               cplx(kk * (2 * kk - 3) / 2) * (J.E / J.K + t - one);
    return z + cplx(0.125) * (cplx(2.0) * t - one);
}

cplx sigma_residual(int k, double t, bool printed_corner)
{
    TJets J = t_jets(k, t);
    Taylor z = zeta_series(k, J);
    cplx Z = z.value(), dZ = z.deriv(1), ddZ = z.deriv(2);
    double th0 = 1.5 - 2.0 * k;
    double corner = (printed_corner ? 0.375 : 0.1875) - th0 * th0 / 4;
    Eigen::Matrix3cd M;
    cplx a = t * dZ - Z, b = corner + dZ, c = (t - 1.0) * dZ - Z;
    M << 0.125, a, b, a, 0.125, c, b, c, 0.125;
    cplx lhs = t * (t - 1.0) * ddZ;
    return lhs * lhs + 2.0 * M.determinant();
}

Taylor tau_series(int k, const TJets& J, double n)
{
    const Taylor& t = J.t;
    Taylor one = Taylor::constant(1.0, t.size());
    Taylor pre = pow(t, 0.125) * pow(one - t, 0.125);
    return pre * pow(cplx(2.0) * J.K, -n * (2.0 * k - 3.0)) * J.delta.at(k);
}

namespace {

double exponent_fit(int k, const TJets& J)
{
    UV s = uv_series(k, J);
    cplx zeta = zeta_uv(k, s).value();
    Taylor base = tau_series(k, J, 0.0);
    cplx tt = J.t0;
    cplx w = tt * (tt - 1.0);
    cplx A = w * base.deriv(1) / base.value();
    cplx B = w * (2.0 * k - 3.0) * J.K.deriv(1) / J.K.value();
    return ((A - zeta) / B).real();
}

} // namespace

double tau_exponent_fit(int k, double t) { return exponent_fit(k, t_jets(k, t)); }

TauSk tau_and_sk(int kmax, const std::vector<double>& grid)
{
    if (kmax < 1 || kmax > 5)
        throw Error(Err::DepthExceeded, "s_k needs 1 <= kmax <= 5");
    if (grid.size() < 5)
        throw Error(Err::Usage, "t grid needs at least 5 points");
    TauSk out;
    out.grid = grid;
    std::vector<TJets> jets;
    for (double t : grid)
        jets.push_back(t_jets(kmax + 1, t));

    // n_k from the tau definition for k = 1..3 (higher k lose digits in the
    // u' needed by zeta), then the integer-linear law n = a k + b for all k
    std::map<int, double> fit;
    for (int k = 1; k <= 3; ++k) {
        std::vector<double> v;
        for (const auto& J : jets)
            v.push_back(exponent_fit(k, J));
        std::sort(v.begin(), v.end());
        fit[k] = v[v.size() / 2];
        if (std::abs(fit[k] - std::round(fit[k])) > 1e-4)
            throw Error(Err::FormulaMismatch, "tau exponent is not an integer");
    }
    double a = std::round(fit[2] - fit[1]), b = std::round(fit[1]) - a;
    if (std::abs(a * 3 + b - std::round(fit[3])) > 0.5)
        throw Error(Err::FormulaMismatch, "tau exponent is not linear in k");
    for (int k = 0; k <= kmax + 1; ++k)
        out.exponent[k] = a * k + b;

    std::map<int, std::vector<Taylor>> Ts;
    for (int k = 0; k <= kmax + 1; ++k)
        for (const auto& J : jets) {
            Ts[k].push_back(tau_series(k, J, out.exponent[k]));
            out.T[k].push_back(Ts[k].back().value());
        }

    for (int k = 1; k <= kmax; ++k) {
        double kk = k;
        cplx mean = 0;
        for (size_t g = 0; g < grid.size(); ++g) {
            cplx t = grid[g];
            cplx w = t * (t - 1.0);
            const Taylor& T = Ts[k][g];
            cplx T0 = T.value(), d1 = T.deriv(1), d2 = T.deriv(2);
            cplx rhs = 4 * (4 * kk - 3) * (4 * kk - 3) * w * w * T0 * d2 -
                       4 * (4 * kk - 1) * (4 * kk - 5) * w * w * d1 * d1 +
                       2 * ((4 * kk - 3) * (4 * kk - 3) + 1) * w * (2.0 * t - 1.0) * T0 * d1 +
                       (2 * (kk - 1) * (2 * kk - 1) * (4 * kk * kk - 6 * kk + 1.0 + t - t * t) -
                        0.25) *
                           T0 * T0;
            cplx s = rhs / (Ts[k - 1][g].value() * Ts[k + 1][g].value());
            out.s_at[k].push_back(s);
            mean += s;
        }
        mean /= double(grid.size());
        out.s[k] = mean;
        double spread = 0;
        for (cplx s : out.s_at[k])
            spread = std::max(spread, rel_err(s, mean));
        out.spread[k] = spread;
    }
    for (auto [k, sp] : out.spread)
        if (sp > 1e-4)
            throw Error(Err::NonConstantS, "s_" + std::to_string(k) + " varies along the grid");
    return out;
}

cplx hitchin_u1(double t)
{
    LatticeData lat = lattice_from_t(t);
    cplx e = lat.eta1, g2 = lat.g2, g3 = lat.g3;
    cplx pH = lat.e1 + lat.e2 + 2.0 * (16.0 * e * e * e + g2 * e - g3) / (48.0 * e * e - g2);
    return (pH - lat.e1) / (lat.e2 - lat.e1);
}

} // namespace eop
