// eop: command-line front end for the elliptic orthogonal polynomial library.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "eop/config.hpp"
#include "eop/painleve.hpp"
#include "eop/recurrences.hpp"
#include "eop/scan.hpp"
#include "eop/verify.hpp"

using namespace eop;
using nlohmann::ordered_json;

namespace {

struct Common {
    std::string tau = "0,1";
    std::vector<std::string> tol;
    std::string out;
    std::string format;
    int jobs = 1;
    std::uint64_t seed = 1;
    std::string config;
    std::string weight = "one";

    RunConfig run() const
    {
        RunConfig c;
        c.tau = parse_tau(tau);
        for (auto& t : tol)
            c.tolerances.insert(parse_tol(t));
        c.seed = seed;
        c.jobs = jobs;
        c.weight = weight;
        c.validate();
        return c;
    }
};

// per-subcommand default for --format, applied after parsing
std::map<std::string, std::string> default_format;

void add_common(CLI::App* sub, Common& c, const std::string& fmt)
{
    default_format[sub->get_name()] = fmt;
    sub->add_option("--tau", c.tau, "period ratio: RE,IM or forms like i, 1.2i, 0.3+1.1i");
    sub->add_option("--tol", c.tol, "tolerance override NAME=VAL (repeatable)");
    sub->add_option("--out", c.out, "output path (default stdout)");
    sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", c.seed, "probe-point seed");
    sub->add_option("--config", c.config, "flat key=value file; flags win");
    sub->add_option("--weight", c.weight, "weight on gamma")->check(CLI::IsMember({"one", "cos"}));
}

std::string num(double x)
{
    return fmt_num(x);
}

ordered_json jnum(double x)
{
    if (!std::isfinite(x) || (x != 0.0 && std::abs(std::log10(std::abs(x))) > 300))
        return fmt_num(x);
    return x;
}

ordered_json jc(cplx z) { return ordered_json::array({jnum(z.real()), jnum(z.imag())}); }

void emit(const Common& c, const std::string& text)
{
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write " + c.out);
    f << text;
    if (!f)
        throw std::runtime_error("write failed for " + c.out);
}

WeightSpec weight_of(const std::string& w)
{
    if (w == "cos")
        return WeightSpec::user([](double s) { return cplx(1.0 + 0.5 * std::cos(2 * pi * s)); }, true);
    return WeightSpec::one();
}

int cmd_moments(const Common& c, int jmax)
{
    RunConfig r = c.run();
    if (jmax < 0 || jmax > 24)
        throw Error(Err::Usage, "--max must lie in 0..24");
    LatticeData L = lattice_from_tau(r.tau);
    WeightSpec w = weight_of(c.weight);
    MomentTable Tq = moments_by_quadrature(L, w, jmax);
    MomentTable Tr;
    bool rec = w.is_one();
    if (rec)
        Tr = moments_exact(L, jmax);
    if (c.format == "csv") {
        std::ostringstream o;
        o << "j,even_re,even_im,odd_re,odd_im,cross_re,cross_im";
        if (rec)
            o << ",recursion_re,recursion_im";
        o << "\n";
        for (int j = 0; j <= jmax; ++j) {
            o << j << "," << num(Tq.even[j].real()) << "," << num(Tq.even[j].imag()) << ","
              << num(Tq.odd[j].real()) << "," << num(Tq.odd[j].imag()) << "," << num(Tq.cross[j].real())
              << "," << num(Tq.cross[j].imag());
            if (rec)
                o << "," << num(Tr.even[j].real()) << "," << num(Tr.even[j].imag());
            o << "\n";
        }
        emit(c, o.str());
        return 0;
    }
    ordered_json j;
    j["tau"] = jc(r.tau);
    j["weight"] = c.weight;
    j["g2"] = jc(L.g2);
    j["g3"] = jc(L.g3);
    j["eta1"] = jc(L.eta1);
    ordered_json rows = ordered_json::array();
    for (int k = 0; k <= jmax; ++k) {
        ordered_json row;
        row["j"] = k;
        row["even"] = jc(Tq.even[k]);
        row["odd"] = jc(Tq.odd[k]);
        row["cross"] = jc(Tq.cross[k]);
        row["provenance"] = "quadrature";
        if (rec)
            row["even_recursion"] = jc(Tr.even[k]);
        rows.push_back(row);
    }
    j["moments"] = rows;
    ordered_json mixed = ordered_json::array();
    int top = std::min(Tq.max_index(), 9);
    for (int a = 0; a <= top; ++a)
        for (int b = a; b <= top; ++b)
            if (a != 1 && b != 1) {
                cplx m = Tq.mixed(a, b);
                mixed.push_back({a, b, jnum(m.real()), jnum(m.imag())});
            }
    j["mixed"] = mixed;
    emit(c, j.dump(2) + "\n");
    return 0;
}

int cmd_hankel(const Common& c, int nmax)
{
    RunConfig r = c.run();
    if (nmax < 2 || nmax > 19)
        throw Error(Err::Usage, "--max must lie in 2..19");
    LatticeData L = lattice_from_tau(r.tau);
    WeightSpec w = weight_of(c.weight);
    MomentTable T = w.is_one() ? moments_exact(L, nmax + 4) : moments_by_quadrature(L, w, nmax + 4);
    HankelLadder H = build_ladder(T, nmax);
    if (c.format == "csv") {
        std::ostringstream o;
        o << "kind,index,re,im\n";
        auto dump = [&](const char* kind, const std::map<int, cplx>& m) {
            for (auto& [i, v] : m)
                o << kind << "," << i << "," << num(v.real()) << "," << num(v.imag()) << "\n";
        };
        dump("delta", H.delta);
        dump("gamma", H.gamma);
        dump("lambda", H.lambda);
        dump("h", H.h);
        for (auto& [i, v] : H.rcond)
            o << "rcond," << i << "," << num(v) << ",0\n";
        emit(c, o.str());
        return 0;
    }
    ordered_json j;
    j["tau"] = jc(r.tau);
    ordered_json de, dodd, g, l, h, cond;
    for (auto& [i, v] : H.delta)
        (i % 2 == 0 ? de : dodd)[std::to_string(i)] = jc(v);
    for (auto& [i, v] : H.gamma)
        g[std::to_string(i)] = jc(v);
    for (auto& [i, v] : H.lambda)
        l[std::to_string(i)] = jc(v);
    for (auto& [i, v] : H.h)
        h[std::to_string(i)] = jc(v);
    for (auto& [i, v] : H.rcond)
        cond[std::to_string(i)] = jnum(v);
    j["deltas_even"] = de;
    j["deltas_odd"] = dodd;
    j["gammas"] = g;
    j["lambdas"] = l;
    j["h"] = h;
    j["cond"] = cond;
    emit(c, j.dump(2) + "\n");
    return 0;
}

int cmd_poly(const Common& c, const std::string& degrees, int samples)
{
    RunConfig r = c.run();
    auto deg = parse_int_list(degrees);
    if (samples < 2)
        throw Error(Err::Usage, "--samples must be at least 2");
    LatticeData L = lattice_from_tau(r.tau);
    WeightSpec w = weight_of(c.weight);
    int top = *std::max_element(deg.begin(), deg.end());
    MomentTable T = w.is_one() ? moments_exact(L, top + 4) : moments_by_quadrature(L, w, top + 4);
    std::ostringstream o;
    ordered_json j;
    j["tau"] = jc(r.tau);
    if (c.format == "csv")
        o << "degree,s,re,im\n";
    for (int n : deg) {
        EllipticPolynomial p = build_pi(n, T);
        ordered_json rows = ordered_json::array();
        for (int i = 0; i < samples; ++i) {
            double s = double(i) / (samples - 1);
            cplx v = eval_pi(p, L.tau / 2.0 + s, L);
            if (c.format == "csv")
                o << n << "," << num(s) << "," << num(v.real()) << "," << num(v.imag()) << "\n";
            else
                rows.push_back({jnum(s), jnum(v.real()), jnum(v.imag())});
        }
        if (c.format == "json") {
            ordered_json coeff;
            for (size_t i = 0; i < p.coeff.size(); ++i)
                coeff[std::to_string(i)] = jc(p.coeff[i]);
            j["polynomials"][std::to_string(n)] = {{"coeff", coeff}, {"samples", rows}};
        }
    }
    emit(c, c.format == "csv" ? o.str() : j.dump(2) + "\n");
    return 0;
}

int cmd_recur(const Common& c, int nmax, const std::string& variant)
{
    RunConfig r = c.run();
    if (c.weight != "one")
        throw Error(Err::Usage, "recur needs the constant weight");
    if (nmax < 4 || nmax > 8)
        throw Error(Err::Usage, "--nmax must lie in 4..8");
    AlphaVariant v = variant == "plus-g3"    ? AlphaVariant::PlusG3
                     : variant == "minus-g2" ? AlphaVariant::MinusG2
                                             : AlphaVariant::MinusG3;
    LatticeData L = lattice_from_tau(r.tau);
    MomentTable T = moments_exact(L, 3 * nmax + 4);
    RecurrenceLadder D = ladder_direct(nmax, T);
    RecurrenceLadder R = ladder_recursed(D, nmax, v);
    if (c.format == "csv") {
        std::ostringstream o;
        o << "n,alpha_re,alpha_im,alpha_spread,alpha_recursed_re,alpha_recursed_im,beta_re,beta_im\n";
        for (auto& [n, a] : D.alpha) {
            cplx b = D.beta.count(n) ? D.beta.at(n) : cplx(NAN, NAN);
            o << n << "," << num(a.real()) << "," << num(a.imag()) << "," << num(D.alpha_spread.at(n)) << ","
              << num(R.alpha.at(n).real()) << "," << num(R.alpha.at(n).imag()) << "," << num(b.real()) << ","
              << num(b.imag()) << "\n";
        }
        emit(c, o.str());
        return 0;
    }
    ordered_json j;
    j["tau"] = jc(r.tau);
    j["variant"] = variant;
    ordered_json al = ordered_json::array(), ar = ordered_json::array();
    for (auto& [n, a] : D.alpha)
        al.push_back({{"n", n}, {"value", jc(a)}, {"source", "direct"}, {"probe_spread", jnum(D.alpha_spread.at(n))}});
    for (auto& [n, a] : R.alpha)
        ar.push_back({{"n", n},
                      {"value", jc(a)},
                      {"source", R.alpha_src.at(n) == AlphaSource::Direct ? "direct" : "recursed"}});
    j["alpha"] = al;
    j["alpha_recursed"] = ar;
    ordered_json be, h, B;
    for (auto& [n, x] : D.beta)
        be[std::to_string(n)] = jc(x);
    for (auto& [n, x] : D.h)
        h[std::to_string(n)] = jc(x);
    for (auto& [n, x] : D.B)
        B[std::to_string(n)] = jc(x);
    j["beta"] = be;
    j["h"] = h;
    j["B"] = B;
    emit(c, j.dump(2) + "\n");
    return 0;
}

int cmd_pvi(const Common& c, const std::string& ks, const std::string& ts)
{
    c.run();
    auto kv = parse_int_list(ks);
    auto tv = parse_double_list(ts);
    ordered_json rows = ordered_json::array();
    std::ostringstream o;
    o << "k,t,u_re,u_im,route_gap,pvi_residual,v_re,v_im,zeta_re,zeta_im,sigma_residual,tau_re,tau_im\n";
    for (int k : kv)
        for (double t : tv) {
            UResult u = u_of_t(k, t);
            PviResidual p = pvi_residual(k, t);
            VGZeta z = v_g_zeta(k, t);
            double sg = std::abs(sigma_residual(k, t));
            double gap = rel_err(u.u, u.u_gamma);
            // T_k with exponent n = k
            cplx T = tau_series(k, t_jets(std::max(k, 1), t), k).value();
            o << k << "," << num(t) << "," << num(u.u.real()) << "," << num(u.u.imag()) << "," << num(gap)
              << "," << num(p.abs) << "," << num(z.v.real()) << "," << num(z.v.imag()) << ","
              << num(z.zeta.real()) << "," << num(z.zeta.imag()) << "," << num(sg) << "," << num(T.real()) << ","
              << num(T.imag()) << "\n";
            rows.push_back({{"k", k},
                            {"t", jnum(t)},
                            {"u", jc(u.u)},
                            {"route_gap", jnum(gap)},
                            {"pvi_residual", jnum(p.abs)},
                            {"v", jc(z.v)},
                            {"zeta", jc(z.zeta)},
                            {"sigma_residual", jnum(sg)},
                            {"tau", jc(T)}});
        }
    emit(c, c.format == "csv" ? o.str() : ordered_json{{"rows", rows}}.dump(2) + "\n");
    return 0;
}

int cmd_sk(const Common& c, int kmax, const std::string& grid)
{
    c.run();
    TauSk S = tau_and_sk(kmax, parse_double_list(grid));
    if (c.format == "csv") {
        std::ostringstream o;
        o << "k,s_re,s_im,spread,exponent\n";
        for (auto& [k, s] : S.s)
            o << k << "," << num(s.real()) << "," << num(s.imag()) << "," << num(S.spread.at(k)) << ","
              << num(S.exponent.at(k)) << "\n";
        emit(c, o.str());
        return 0;
    }
    ordered_json j;
    j["grid"] = S.grid;
    ordered_json rows = ordered_json::array();
    for (auto& [k, s] : S.s) {
        ordered_json at = ordered_json::array();
        for (auto v : S.s_at.at(k))
            at.push_back(jc(v));
        rows.push_back({{"k", k}, {"s", jc(s)}, {"spread", jnum(S.spread.at(k))}, {"exponent", jnum(S.exponent.at(k))}, {"s_at_grid", at}});
    }
    j["s"] = rows;
    emit(c, j.dump(2) + "\n");
    return 0;
}

int cmd_scan(const Common& c, const ScanConfig& base, const std::string& rr, const std::string& ir,
             const std::string& grid, const std::string& idx)
{
    c.run();
    ScanConfig sc = base;
    if (!rr.empty())
        std::tie(sc.re_min, sc.re_max) = parse_range(rr);
    if (!ir.empty())
        std::tie(sc.im_min, sc.im_max) = parse_range(ir);
    if (!grid.empty())
        std::tie(sc.n_re, sc.n_im) = parse_grid(grid);
    if (!idx.empty())
        sc.indices = parse_int_list(idx);
    sc.jobs = c.jobs;
    ScanReport rep = scan_zeros(sc);
    for (auto& l : rep.log)
        std::cerr << "scan: " << l << "\n";
    if (c.format == "csv") {
        std::ostringstream o;
        o << "index,re,im,abs_delta,local_scale,cell_re,cell_im,winding\n";
        for (auto& z : rep.zeros)
            o << z.index << "," << num(z.tau.real()) << "," << num(z.tau.imag()) << "," << num(z.abs_delta) << ","
              << num(z.local_scale) << "," << z.cell_re << "," << z.cell_im << "," << z.winding << "\n";
        emit(c, o.str());
        return 0;
    }
    ordered_json rows = ordered_json::array();
    for (auto& z : rep.zeros)
        rows.push_back({{"index", z.index},
                        {"tau", jc(z.tau)},
                        {"abs_delta", jnum(z.abs_delta)},
                        {"local_scale", jnum(z.local_scale)},
                        {"cell", {z.cell_re, z.cell_im}},
                        {"winding", z.winding}});
    ordered_json j{{"zeros", rows}, {"skipped", rep.log}};
    emit(c, j.dump(2) + "\n");
    return 0;
}

int cmd_verify(const Common& c)
{
    VerifyReport rep = run_verify(c.run());
    if (c.format == "csv") {
        std::ostringstream o;
        o << "suite,check,residual,tol,pass,expected_failure,error\n";
        for (auto& s : rep.suites) {
            for (auto& k : s.checks)
                o << s.name << "," << k.name << "," << num(k.residual) << "," << num(k.tol) << ","
                  << (k.pass ? 1 : 0) << "," << (s.expected_failure ? 1 : 0) << ",\n";
            if (!s.error.empty())
                o << s.name << ",,,,0," << (s.expected_failure ? 1 : 0) << ",\"" << s.error << "\"\n";
        }
        emit(c, o.str());
    } else {
        emit(c, rep.json());
    }
    for (auto& s : rep.suites)
        std::cerr << (s.pass() ? "PASS " : s.expected_failure ? "XFAIL " : "FAIL ") << s.name
                  << (s.error.empty() ? "" : "  (" + s.error + ")") << "\n";
    return rep.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = merge_config(args);
    } catch (const Error& e) {
        std::cerr << "eop: " << e.what() << "\n";
        return 2;
    }

    CLI::App app{"Elliptic orthogonal polynomials: moments, Hankel determinants, recurrences, Painleve VI", "eop"};
    app.require_subcommand(1);
    Common c;

    int jmax = 10, hmax = 9, samples = 200, nmax = 8, kmax = 5;
    std::string degrees = "0,2,3,4", variant = "minus-g3", ks = "0,1,2",
                ts = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9", skgrid = "0.3,0.4,0.5,0.6,0.7";
    std::string rr, ir, grid, idx;
    ScanConfig sc;

    auto* mo = app.add_subcommand("moments", "moment table on gamma");
    add_common(mo, c, "json");
    mo->add_option("--max", jmax, "largest power of wp");

    auto* ha = app.add_subcommand("hankel", "Hankel ladder: Delta, Gamma, Lambda, h");
    add_common(ha, c, "json");
    ha->add_option("--max", hmax, "ladder depth n");

    auto* po = app.add_subcommand("poly", "pi_n sampled along gamma");
    add_common(po, c, "csv");
    po->add_option("--degrees", degrees, "comma list of degrees");
    po->add_option("--samples", samples, "samples over s in [0, 1]");

    auto* re = app.add_subcommand("recur", "alpha/beta ladder");
    add_common(re, c, "json");
    re->add_option("--nmax", nmax, "ladder depth (4..8)");
    re->add_option("--variant", variant, "alpha recurrence tail")
        ->check(CLI::IsMember({"minus-g3", "plus-g3", "minus-g2"}));

    auto* pv = app.add_subcommand("pvi", "u_k(t), PVI residual, v, zeta, sigma-form residual");
    add_common(pv, c, "csv");
    pv->add_option("--k", ks, "comma list of k");
    pv->add_option("--t", ts, "comma list of t in (0, 1)");

    auto* sk = app.add_subcommand("sk", "tau-function recursion constants s_k");
    add_common(sk, c, "csv");
    sk->add_option("--kmax", kmax, "largest k (1..5)");
    sk->add_option("--grid", skgrid, "t grid (at least 5 points)");

    auto* sz = app.add_subcommand("scan-zeros", "zeros of Delta_n in the tau half-plane");
    add_common(sz, c, "csv");
    sz->add_option("--re-range", rr, "re_min,re_max");
    sz->add_option("--im-range", ir, "im_min,im_max");
    sz->add_option("--grid", grid, "NxM cells");
    sz->add_option("--indices", idx, "Delta indices, e.g. 4,6,8");
    sz->add_option("--newton-tol", sc.newton_tol, "Newton step tolerance");
    sz->add_option("--dedupe-radius", sc.dedupe_radius, "merge radius for roots");

    auto* ve = app.add_subcommand("verify", "run every residual suite");
    add_common(ve, c, "json");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (c.format.empty())
        c.format = default_format.at(app.get_subcommands().front()->get_name());

    try {
        if (*mo)
            return cmd_moments(c, jmax);
        if (*ha)
            return cmd_hankel(c, hmax);
        if (*po)
            return cmd_poly(c, degrees, samples);
        if (*re)
            return cmd_recur(c, nmax, variant);
        if (*pv)
            return cmd_pvi(c, ks, ts);
        if (*sk)
            return cmd_sk(c, kmax, skgrid);
        if (*sz)
            return cmd_scan(c, sc, rr, ir, grid, idx);
        if (*ve)
            return cmd_verify(c);
    } catch (const Error& e) {
        std::cerr << "eop: " << e.what() << "\n";
        return e.kind() == Err::Usage ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "eop: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
