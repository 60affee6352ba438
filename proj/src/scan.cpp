#include "eop/scan.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "eop/numerics.hpp"

namespace eop {

void ScanConfig::validate() const
{
    if (!(im_min > 0.0) || !(im_max > im_min))
        throw Error(Err::Usage, "scan needs 0 < im_min < im_max");
    if (!(re_max > re_min))
        throw Error(Err::Usage, "scan needs re_min < re_max");
    if (n_re < 8 || n_im < 8)
        throw Error(Err::Usage, "scan grid must be at least 8x8");
    if (indices.empty())
        throw Error(Err::Usage, "no Delta indices to scan");
    for (int i : indices)
        if (i < 2 || i > 21)
            throw Error(Err::Usage, "Delta index " + std::to_string(i) + " outside 2..21");
    if (!(newton_tol > 0.0) || !(dedupe_radius > 0.0) || jobs < 1)
        throw Error(Err::Usage, "scan tolerances and jobs must be positive");
}

cplx delta_at(int index, cplx tau)
{
    LatticeData lat = lattice_from_tau(tau);
    return delta(index, moments_exact(lat, index + 1));
}

namespace {

constexpr int samples_per_edge = 16;

// Change of arg along a -> b, bisecting steps that turn by more than pi/2.
double arg_change(int index, cplx a, cplx fa, cplx b, cplx fb, int depth, long& evals)
{
    double d = std::arg(fb / fa);
    if (std::abs(d) <= pi / 2 || depth > 12)
        return d;
    cplx m = 0.5 * (a + b);
    cplx fm = delta_at(index, m);
    ++evals;
    return arg_change(index, a, fa, m, fm, depth + 1, evals) +
           arg_change(index, m, fm, b, fb, depth + 1, evals);
}

struct CellResult {
    std::vector<ScanZero> zeros;
    std::vector<std::string> log;
    long evals = 0;
};

cplx newton(int index, cplx x, double tol, bool& ok, long& evals)
{
    ok = false;
    for (int it = 0; it < 50; ++it) {
        double r = std::min(1e-3, 0.1 * x.imag());
        if (!(r > 0))
            return x;
        auto c = taylor_circle([&](cplx s) { return delta_at(index, s); }, x, r, 8);
        evals += 8;
        if (c[1] == 0.0)
            return x;
        cplx step = c[0] / c[1];
        x -= step;
        if (!(x.imag() > 0))
            return x;
        if (std::abs(step) < tol * std::max(1.0, std::abs(x))) {
            ok = true;
            return x;
        }
    }
    return x;
}

} // namespace

ScanReport scan_zeros(const ScanConfig& cfg)
{
    cfg.validate();
    ScanReport rep;
    const double hx = (cfg.re_max - cfg.re_min) / cfg.n_re;
    const double hy = (cfg.im_max - cfg.im_min) / cfg.n_im;
    const int S = samples_per_edge;

    for (int index : cfg.indices) {
        // shared boundary samples: node (i, j) at re_min + i hx/S, im_min + j hy/S
        // on grid lines only
        const int NX = cfg.n_re * S + 1, NY = cfg.n_im * S + 1;
        auto node = [&](int i, int j) {
            return cplx(cfg.re_min + i * hx / S, cfg.im_min + j * hy / S);
        };
        // horizontal lines j % S == 0 and vertical lines i % S == 0
        std::vector<cplx> hval(size_t(NX) * (cfg.n_im + 1)), vval(size_t(NY) * (cfg.n_re + 1));
        std::atomic<long> evals{0};
        auto fill = [&](int worker) {
            long local = 0;
            for (int L = worker; L <= cfg.n_im; L += cfg.jobs)
                for (int i = 0; i < NX; ++i, ++local)
                    hval[size_t(L) * NX + i] = delta_at(index, node(i, L * S));
            for (int L = worker; L <= cfg.n_re; L += cfg.jobs)
                for (int j = 0; j < NY; ++j, ++local)
                    vval[size_t(L) * NY + j] = delta_at(index, node(L * S, j));
            evals += local;
        };
        {
            std::vector<std::thread> th;
            for (int w = 1; w < cfg.jobs; ++w)
                th.emplace_back(fill, w);
            fill(0);
            for (auto& t : th)
                t.join();
        }

        std::vector<CellResult> cells(size_t(cfg.n_re) * cfg.n_im);
        std::atomic<int> next{0};
        auto work = [&]() {
            for (;;) {
                int c = next++;
                if (c >= cfg.n_re * cfg.n_im)
                    return;
                int ci = c % cfg.n_re, cj = c / cfg.n_re;
                CellResult& out = cells[c];
                try {
                    // counter-clockwise boundary
                    std::vector<std::pair<cplx, cplx>> path;
                    for (int s = 0; s < S; ++s)
                        path.push_back({node(ci * S + s, cj * S), hval[size_t(cj) * NX + ci * S + s]});
                    for (int s = 0; s < S; ++s)
                        path.push_back({node((ci + 1) * S, cj * S + s),
                                        vval[size_t(ci + 1) * NY + cj * S + s]});
                    for (int s = S; s > 0; --s)
                        path.push_back({node(ci * S + s, (cj + 1) * S),
                                        hval[size_t(cj + 1) * NX + ci * S + s]});
                    for (int s = S; s > 0; --s)
                        path.push_back({node(ci * S, cj * S + s), vval[size_t(ci) * NY + cj * S + s]});
                    double total = 0, scale = 0;
                    for (size_t p = 0; p < path.size(); ++p) {
                        auto [a, fa] = path[p];
                        auto [b, fb] = path[(p + 1) % path.size()];
                        if (fa == 0.0 || fb == 0.0)
                            throw Error(Err::NonConvergent, "zero on a cell edge");
                        total += arg_change(index, a, fa, b, fb, 0, out.evals);
                        scale += std::abs(fa);
                    }
                    scale /= double(path.size());
                    int wind = int(std::lround(total / (2 * pi)));
                    if (wind == 0)
                        continue;
                    cplx lo = node(ci * S, cj * S);
                    std::vector<cplx> seeds{lo + cplx(0.5 * hx, 0.5 * hy)};
                    if (std::abs(wind) > 1)
                        for (double fx : {0.25, 0.75})
                            for (double fy : {0.25, 0.75})
                                seeds.push_back(lo + cplx(fx * hx, fy * hy));
                    for (cplx s : seeds) {
                        bool ok;
                        cplx r = newton(index, s, cfg.newton_tol, ok, out.evals);
                        if (!ok) {
                            out.log.push_back("index " + std::to_string(index) + " cell (" +
                                              std::to_string(ci) + "," + std::to_string(cj) +
                                              "): Newton did not converge, seed dropped");
                            continue;
                        }
                        // keep roots belonging to this cell (within one diagonal)
                        double diag = std::hypot(hx, hy);
                        cplx centre = lo + cplx(0.5 * hx, 0.5 * hy);
                        if (std::abs(r - centre) > diag || r.imag() < cfg.im_min)
                            continue;
                        double ad = std::abs(delta_at(index, r));
                        if (ad >= 1e-10 * scale) {
                            out.log.push_back("index " + std::to_string(index) +
                                              ": residual too large after Newton, dropped");
                            continue;
                        }
                        out.zeros.push_back({index, r, ad, scale, ci, cj, wind});
                    }
                } catch (const Error& e) {
                    out.log.push_back("index " + std::to_string(index) + " cell (" +
                                      std::to_string(ci) + "," + std::to_string(cj) +
                                      ") skipped: " + e.what());
                }
            }
        };
        {
            std::vector<std::thread> th;
            for (int w = 1; w < cfg.jobs; ++w)
                th.emplace_back(work);
            work();
            for (auto& t : th)
                t.join();
        }
        rep.evaluations += evals;
        std::vector<ScanZero> found;
        for (auto& c : cells) {
            rep.evaluations += c.evals;
            for (auto& l : c.log)
                rep.log.push_back(l);
            for (auto& z : c.zeros) {
                bool dup = false;
                for (auto& f : found)
                    if (std::abs(f.tau - z.tau) < cfg.dedupe_radius)
                        dup = true;
                if (!dup)
                    found.push_back(z);
            }
        }
        for (auto& z : found)
            rep.zeros.push_back(z);
    }
    std::sort(rep.zeros.begin(), rep.zeros.end(), [](const ScanZero& a, const ScanZero& b) {
        if (a.index != b.index)
            return a.index < b.index;
        if (a.tau.real() != b.tau.real())
            return a.tau.real() < b.tau.real();
        return a.tau.imag() < b.tau.imag();
    });
    return rep;
}

} // namespace eop
