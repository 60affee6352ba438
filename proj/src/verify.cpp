#include "eop/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <functional>
#include <random>
#include <thread>

#include <json.hpp>

#include "eop/painleve.hpp"
#include "eop/recurrences.hpp"
#include "eop/scan.hpp"

namespace eop {

std::string fmt_num(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double RunConfig::tol(const std::string& name, double fallback) const
{
    auto it = tolerances.find(name);
    return it == tolerances.end() ? fallback : it->second;
}

void RunConfig::validate() const
{
    if (!(tau.imag() > 0.0))
        throw Error(Err::Usage, "Im tau must be positive");
    for (auto& [k, v] : tolerances)
        if (!(v > 0.0))
            throw Error(Err::Usage, "tolerance " + k + " must be positive");
    if (weight != "one" && weight != "cos")
        throw Error(Err::Usage, "weight must be one or cos");
    if (jobs < 1)
        throw Error(Err::Usage, "jobs must be positive");
}

bool SuiteResult::pass() const
{
    if (!error.empty())
        return false;
    for (auto& c : checks)
        if (!c.pass)
            return false;
    return true;
}

double SuiteResult::worst() const
{
    double w = 0;
    for (auto& c : checks)
        w = std::max(w, c.tol > 0 ? c.residual / c.tol : c.residual);
    return w;
}

bool VerifyReport::all_pass() const
{
    for (auto& s : suites)
        if (!s.pass() && !s.expected_failure)
            return false;
    return true;
}

namespace {

using nlohmann::ordered_json;

ordered_json num(double x)
{
    if (std::isfinite(x) && x != 0.0 && std::abs(std::log10(std::abs(x))) > 300)
        return fmt_num(x);
    if (!std::isfinite(x))
        return fmt_num(x);
    return x;
}

} // namespace

std::string VerifyReport::json() const
{
    ordered_json j;
    j["tau"] = {num(cfg.tau.real()), num(cfg.tau.imag())};
    j["weight"] = cfg.weight;
    j["seed"] = cfg.seed;
    j["pass"] = all_pass();
    ordered_json arr = ordered_json::array();
    for (auto& s : suites) {
        ordered_json js;
        js["suite"] = s.name;
        js["pass"] = s.pass();
        js["expected_failure"] = s.expected_failure;
        if (!s.error.empty())
            js["error"] = s.error;
        js["worst_ratio"] = num(s.worst());
        ordered_json cs = ordered_json::array();
        for (auto& c : s.checks) {
            ordered_json jc;
            jc["name"] = c.name;
            jc["residual"] = num(c.residual);
            jc["tol"] = num(c.tol);
            jc["pass"] = c.pass;
            if (!c.note.empty())
                jc["note"] = c.note;
            cs.push_back(jc);
        }
        js["checks"] = cs;
        arr.push_back(js);
    }
    j["suites"] = arr;
    return j.dump(2) + "\n";
}

namespace {

struct Ctx {
    const RunConfig& cfg;
    SuiteResult& out;

    // keep the worst residual per named check
    void check(const std::string& name, double residual, double fallback_tol,
               const std::string& note = "")
    {
        double tol = cfg.tol(name, fallback_tol);
        for (auto& c : out.checks)
            if (c.name == name) {
                if (!(residual <= c.residual)) {
                    c.residual = residual;
                    if (!note.empty())
                        c.note = note;
                }
                c.pass = c.residual <= c.tol;
                return;
            }
        out.checks.push_back({name, residual, tol, residual <= tol, note});
    }
};

WeightSpec make_weight(const std::string& w)
{
    if (w == "cos")
        return WeightSpec::user([](double s) { return cplx(1.0 + 0.5 * std::cos(2 * pi * s)); }, true);
    return WeightSpec::one();
}

// random points in the cell, clear of lattice and contour
std::vector<cplx> probes(const LatticeData& lat, std::uint64_t seed, int count)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    std::vector<cplx> out;
    while (int(out.size()) < count) {
        cplx z = u(rng) + u(rng) * lat.tau;
        if (lattice_distance(z, lat) > 0.1 && contour_distance(z, lat) > 0.05)
            out.push_back(z);
    }
    return out;
}

double relv(cplx a, cplx b, double scale)
{
    return std::abs(a - b) / std::max(scale, 1e-300);
}

void suite_elliptic(Ctx& c)
{
    LatticeData L = lattice_from_tau(c.cfg.tau);
    for (cplx z : probes(L, c.cfg.seed, 8)) {
        WpValues W = weierstrass(z, L);
        cplx rhs = 4.0 * W.p * W.p * W.p - L.g2 * W.p - L.g3;
        c.check("cubic", relv(W.dp * W.dp, rhs, std::max(std::abs(rhs), std::abs(4.0 * W.p * W.p * W.p))), 1e-10);
        cplx z1 = weierstrass(z + 1.0, L).zeta, zt = weierstrass(z + L.tau, L).zeta;
        c.check("legendre", relv(zt - W.zeta, L.tau * (z1 - W.zeta) - two_pi_i, std::abs(L.tau * L.eta1_shift)), 1e-10);
        c.check("zeta_shift", relv(z1 - W.zeta, L.eta1_shift, std::abs(L.eta1_shift)), 1e-10);
    }
    double es = std::max({std::abs(L.e1), std::abs(L.e2), std::abs(L.e3)});
    double hp = std::max({relv(wp(0.5, L), L.e1, es), relv(wp(L.tau / 2.0, L), L.e2, es),
                          relv(wp((1.0 + L.tau) / 2.0, L), L.e3, es)});
    c.check("half_periods", hp, 1e-10);
    LatticeData Lt = lattice_from_t(L.t);
    if (std::abs(Lt.tau - L.tau) < 1e-8)
        c.check("eta1_theta_vs_KE", rel_err(L.eta1, Lt.eta1), 1e-10);
    else
        c.check("eta1_theta_vs_KE", 0.0, 1e-10, "principal AGM branch does not reach this tau; skipped");
}

void suite_moments(Ctx& c)
{
    LatticeData L = lattice_from_tau(c.cfg.tau);
    WeightSpec w = make_weight(c.cfg.weight);
    MomentTable Tq = moments_by_quadrature(L, w, 10);
    double cs = 0;
    for (size_t j = 0; j < Tq.cross.size(); ++j)
        cs = std::max(cs, std::abs(Tq.cross[j]) / std::max(1.0, std::abs(Tq.even[j])));
    c.check("cross_moments_vanish", cs, 1e-10);
    if (!w.is_one())
        return;
    MomentTable Tr = moments_exact(L, 10);
    MomentTable Tr13 = moments_exact(L, 13);
    double gap = 0, ogap = 0;
    for (int j = 0; j <= 10; ++j) {
        gap = std::max(gap, rel_err(Tq.even[j], Tr.even[j]));
        // the odd moments cancel inside 4 m_{j+3} - g2 m_{j+1} - g3 m_j
        double terms = 4 * std::abs(Tr13.even[j + 3]) + std::abs(L.g2 * Tr13.even[j + 1]) +
                       std::abs(L.g3 * Tr13.even[j]);
        ogap = std::max(ogap, std::abs(Tq.odd[j] - Tr.odd[j]) / terms);
    }
    c.check("quadrature_vs_recursion", gap, 1e-10);
    c.check("odd_quadrature_vs_recursion", ogap, 1e-9);
    c.check("m0", std::abs(Tq.even[0] - 1.0), 1e-9);
    c.check("m1", rel_err(Tq.even[1], -2.0 * L.eta1), 1e-9);
    c.check("m2", rel_err(Tq.even[2], L.g2 / 12.0), 1e-9);
}

void suite_hankel(Ctx& c)
{
    LatticeData L = lattice_from_tau(c.cfg.tau);
    WeightSpec w = make_weight(c.cfg.weight);
    MomentTable Tq = moments_by_quadrature(L, w, 12);
    for (int n = 2; n <= 9; ++n)
        c.check("D_factorisation", rel_err(checkerboard_D(n, Tq), delta(n, Tq) * delta(n + 1, Tq)), 1e-9);
    for (int n = 0; n <= 7; ++n) {
        if (n == 1)
            continue;
        cplx hq = contour_quadrature(
            [&](cplx z) {
                cplx v = eval_pi(build_pi(n, Tq), z, L);
                return v * v * w((z - L.tau / 2.0).real());
            },
            L);
        c.check("h_vs_quadrature", rel_err(norm_h(n, Tq), hq), 1e-8);
    }
    if (!w.is_one())
        return;
    cplx g2 = L.g2, g3 = L.g3, e = L.eta1;
    MomentTable T = moments_exact(L, 14);
    c.check("delta4_closed", rel_err(delta(4, T), (g2 - 48.0 * e * e) / 12.0), 1e-9);
    cplx d6 = (25.0 * g2 * g2 * g2 - 378.0 * g3 * g3 + 108.0 * g2 * g3 * e - 1872.0 * g2 * g2 * e * e +
               43200.0 * g3 * e * e * e) / 37800.0;
    c.check("delta6_closed", rel_err(delta(6, T), d6), 1e-8);
    c.check("h2_closed", rel_err(norm_h(2, T), -4.0 * e * e + g2 / 12.0), 1e-9);
    c.check("h3_quadrature", rel_err(norm_h(3, T), Tq.odd[0] / 4.0), 1e-9);
    // Delta_{2k}(-conj tau) = conj Delta_{2k}(tau), Delta(tau + 2) = Delta(tau)
    MomentTable Tm = moments_exact(lattice_from_tau(-std::conj(c.cfg.tau)), 14);
    MomentTable Tp = moments_exact(lattice_from_tau(c.cfg.tau + 2.0), 14);
    for (int k = 2; k <= 4; ++k) {
        c.check("symmetry_reflect", rel_err(delta(2 * k, Tm), std::conj(delta(2 * k, T))), 1e-9);
        c.check("symmetry_shift", rel_err(delta(2 * k, Tp), delta(2 * k, T)), 1e-9);
    }
}

void suite_polynomials(Ctx& c)
{
    LatticeData L = lattice_from_tau(c.cfg.tau);
    MomentTable T = moments_exact(L, 24);
    std::vector<EllipticPolynomial> P;
    std::vector<int> deg{0, 2, 3, 4, 5, 6, 7, 8};
    for (int n : deg)
        P.push_back(build_pi(n, T));
    size_t N = deg.size();
    MatX G(N, N);
    for (size_t a = 0; a < N; ++a)
        for (size_t b = a; b < N; ++b) {
            G(a, b) = contour_quadrature(
                [&](cplx z) {
                    WpValues W = weierstrass(z, L);
                    return eval_pi(P[a], W) * eval_pi(P[b], W);
                },
                L);
            G(b, a) = G(a, b);
        }
    double dmax = G.diagonal().cwiseAbs().maxCoeff(), off = 0;
    for (size_t a = 0; a < N; ++a)
        for (size_t b = 0; b < N; ++b)
            if (a != b)
                off = std::max(off, std::abs(G(a, b)));
    c.check("gram_offdiagonal", off / dmax, 1e-8);

    auto zs = probes(L, c.cfg.seed + 1, 20);
    for (cplx z : zs)
        for (size_t a = 0; a < N; ++a) {
            cplx p = eval_pi(P[a], z, L), m = eval_pi(P[a], -z, L);
            double par = deg[a] % 2 == 0 ? std::abs(m - p) : std::abs(m + p);
            c.check("parity", par / std::max(1.0, std::abs(p)), 1e-10);
        }

    RecurrenceLadder lad = ladder_direct(8, T);
    for (int n = 3; n <= 7; ++n) {
        RHPMatrix Y = assemble_Y(n, T);
        for (cplx z : zs) {
            WpValues W = weierstrass(z, L);
            c.check("det_Yn", std::abs(Y(z).determinant() - (W.p + lad.alpha.at(n))), 1e-7);
        }
    }
    for (int k = 1; k <= 3; ++k) {
        RHPMatrix Y = assemble_Y_even(k, T);
        for (cplx z : zs) {
            WpValues W = weierstrass(z, L);
            c.check("det_Y2k", std::abs(Y(z).determinant() + W.dp / 2.0), 1e-7);
        }
    }
    for (int n = 2; n <= 5; ++n) {
        cplx z = zs[n];
        cplx a = cauchy_transform(P[n - 1], z, T), b = cauchy_transform(P[n - 1], z + 1.0, T);
        c.check("cauchy_periodicity", std::abs(b - a), 1e-9);
    }
}

void suite_recurrences(Ctx& c)
{
    LatticeData L = lattice_from_tau(c.cfg.tau);
    MomentTable T = moments_exact(L, 24);
    RecurrenceLadder D = ladder_direct(8, T);
    cplx g2 = L.g2, g3 = L.g3, e = L.eta1;
    cplx a3 = (3.0 * g3 - 4.0 * g2 * e) / (g2 - 48.0 * e * e);
    cplx a4 = (5.0 * g2 * g2 * g2 - 108.0 * g3 * g3 + 108.0 * g2 * g3 * e - 432.0 * g2 * g2 * e * e +
               8640.0 * g3 * e * e * e) /
              (18.0 * (3.0 * g3 - 4.0 * g2 * e) * (g2 - 48.0 * e * e));
    c.check("alpha3_closed", rel_err(D.alpha.at(3), a3), 1e-8);
    c.check("alpha4_closed", rel_err(D.alpha.at(4), a4), 1e-8);
    RecurrenceLadder R = ladder_recursed(D, 8);
    for (int n = 5; n <= 8; ++n)
        c.check("alpha_recursed_vs_direct", rel_err(R.alpha.at(n), D.alpha.at(n)), 1e-6);
    for (int n = 4; n <= 6; ++n) {
        // alpha has the weight of wp, beta of wp^2: residual of weight d is
        // measured against s^d
        double s = std::max({1.0, std::abs(D.alpha.at(n - 1)), std::abs(D.alpha.at(n)),
                             std::abs(D.alpha.at(n + 1)), std::abs(D.alpha.at(n + 2)),
                             std::sqrt(std::abs(D.beta.at(n))), std::sqrt(std::abs(D.beta.at(n + 1))),
                             std::sqrt(std::abs(g2)), std::cbrt(std::abs(g3))});
        c.check("comrec", std::abs(comrec_residual(n, D)) / std::pow(s, 3), 1e-8);
        auto q = q_residuals(n, D);
        for (int i = 0; i < 4; ++i)
            c.check("q_equations", std::abs(q[i]) / std::pow(s, i + 1), 1e-8);
    }
    for (cplx z : probes(L, c.cfg.seed + 2, 4)) {
        c.check("three_term", std::abs(three_term_residual(4, z, D, T)), 1e-8);
        c.check("one_step", std::abs(one_step_residual(4, z, D, T)), 1e-8);
        for (int n = 4; n <= 6; ++n)
            c.check("lax_compatibility", compatibility_residual(n, z, D), 1e-6);
    }
}

void suite_painleve(Ctx& c)
{
    LatticeData L = lattice_from_tau(c.cfg.tau);
    MomentTable T = moments_exact(L, 24);
    cplx z = probes(L, c.cfg.seed + 3, 1)[0];
    for (int k = 1; k <= 3; ++k) {
        EvenLaxData d = even_lax(k, T);
        RHPMatrix Y = assemble_Y_even(k, T);
        c.check("even_lax", even_lax_residual(d, Y, z), 1e-6);
        Mat2 S = Mat2::Zero();
        for (int i = 0; i < 3; ++i) {
            Eigen::ComplexEigenSolver<Mat2> es(d.res_free[i]);
            auto ev = es.eigenvalues();
            double m = std::max(std::abs(2.0 * ev(0)), std::abs(2.0 * ev(1)));
            c.check("exponent_half_period", std::abs(m - 0.5) + std::abs(ev(0) + ev(1)), 1e-8);
            S += d.res_free[i];
        }
        Eigen::ComplexEigenSolver<Mat2> es(S);
        double m = std::max(std::abs(2.0 * es.eigenvalues()(0)), std::abs(2.0 * es.eigenvalues()(1)));
        c.check("exponent_origin", std::abs(m - (4.0 * k - 3.0) / 2.0), 1e-8);
        FuchsianData f = fuchsian(k, T);
        Mat2 A = f.A[0] + f.A[1] + f.A[2];
        Mat2 target = Mat2::Zero();
        target(0, 0) = -f.theta0 / 2;
        target(1, 1) = f.theta0 / 2;
        c.check("fuchsian_trace", (A - target).cwiseAbs().maxCoeff(), 1e-8);
        for (int i = 0; i < 3; ++i)
            c.check("fuchsian_det", std::abs(f.A[i].determinant() + 1.0 / 16.0), 1e-8);
    }
    for (int k = 0; k <= 2; ++k)
        for (double t : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
            PviResidual p = pvi_residual(k, t);
            c.check(k == 2 ? "pvi_k2" : "pvi_k01", p.abs, k == 2 ? 1e-5 : 1e-6);
            c.check("sigma_form", std::abs(sigma_residual(k, t)), 1e-5);
            if (k == 0) {
                TJets J = t_jets(1, t);
                c.check("zeta0", std::abs(zeta_series(0, J).value() - (2 * t - 1) / 8), 1e-12);
            }
        }
    for (double t : {0.2, 0.37, 0.6})
        c.check("hitchin", rel_err(hitchin_u1(t), u_of_t(1, t).u), 1e-7);
    TauSk S = tau_and_sk(5, {0.3, 0.4, 0.5, 0.6, 0.7});
    const double ref[] = {0, -3, 525, 6237, 27885, 82365};
    for (int k = 1; k <= 5; ++k) {
        double tol = k <= 2 ? 1e-6 : 1e-4;
        c.check("s" + std::to_string(k), rel_err(S.s.at(k), ref[k]), tol);
        c.check("s_spread", S.spread.at(k), 1e-4);
    }
}

void suite_scan(Ctx& c)
{
    ScanConfig sc;
    sc.n_re = sc.n_im = 40;
    ScanReport r = scan_zeros(sc);
    c.check("scan_found", r.zeros.empty() ? 1.0 : 0.0, 0.5,
            std::to_string(r.zeros.size()) + " zeros of Delta_4");
    double hx = (sc.re_max - sc.re_min) / sc.n_re, hy = (sc.im_max - sc.im_min) / sc.n_im;
    for (auto& z : r.zeros) {
        LatticeData L = lattice_from_tau(z.tau);
        c.check("delta4_zero_condition", std::abs(L.g2 - 48.0 * L.eta1 * L.eta1) / std::abs(L.g2), 1e-8);
        double best = 1e300;
        for (auto& w : r.zeros)
            best = std::min(best, std::abs(w.tau + std::conj(z.tau)));
        c.check("reflection_symmetry", best / sc.dedupe_radius, 1.0);
        cplx centre(sc.re_min + (z.cell_re + 0.5) * hx, sc.im_min + (z.cell_im + 0.5) * hy);
        c.check("cell_soundness", std::abs(z.tau - centre) / std::hypot(hx, hy), 1.0);
    }
}

const std::vector<std::pair<std::string, std::function<void(Ctx&)>>>& suites()
{
    static const std::vector<std::pair<std::string, std::function<void(Ctx&)>>> s{
        {"elliptic", suite_elliptic},       {"moments", suite_moments},
        {"hankel", suite_hankel},           {"polynomials", suite_polynomials},
        {"recurrences", suite_recurrences}, {"painleve", suite_painleve},
        {"scan", suite_scan},
    };
    return s;
}

// a Delta_n (n <= 9) that is numerically zero at tau
bool at_delta_zero(cplx tau)
{
    try {
        MomentTable T = moments_exact(lattice_from_tau(tau), 14);
        for (int n = 4; n <= 9; ++n)
            if (delta_ext(n, T).rcond < 1e-10)
                return true;
    } catch (const Error&) {
    }
    return false;
}

} // namespace

std::vector<std::string> suite_names()
{
    std::vector<std::string> n;
    for (auto& s : suites())
        n.push_back(s.first);
    return n;
}

VerifyReport run_verify(const RunConfig& cfg)
{
    cfg.validate();
    VerifyReport rep;
    rep.cfg = cfg;
    const auto& S = suites();
    rep.suites.resize(S.size());
    bool zero = at_delta_zero(cfg.tau);
    std::atomic<size_t> next{0};
    auto work = [&]() {
        for (;;) {
            size_t i = next++;
            if (i >= S.size())
                return;
            SuiteResult& out = rep.suites[i];
            out.name = S[i].first;
            Ctx c{cfg, out};
            try {
                S[i].second(c);
            } catch (const Error& e) {
                out.error = e.what();
                bool singular = e.kind() == Err::SingularLadder || e.kind() == Err::SingularMomentMatrix ||
                                e.kind() == Err::SingularRecurrence;
                out.expected_failure = singular && zero;
            } catch (const std::exception& e) {
                out.error = e.what();
            }
        }
    };
    std::vector<std::thread> th;
    for (int w = 1; w < std::min<int>(cfg.jobs, int(S.size())); ++w)
        th.emplace_back(work);
    work();
    for (auto& t : th)
        t.join();
    return rep;
}

} // namespace eop
