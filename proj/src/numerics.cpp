#include "eop/numerics.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

namespace eop {

namespace {

using GL = boost::math::quadrature::gauss<double, 32>;

struct Panel {
    cplx v;
    double mag; // integral of |f|, for the roundoff floor
};

Panel panel(const CFun& f, cplx a, cplx b)
{
    const auto& x = GL::abscissa();
    const auto& w = GL::weights();
    cplx mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx s = 0;
    double m = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0.0) {
            cplx f0 = f(mid);
            s += w[i] * f0;
            m += w[i] * std::abs(f0);
            continue;
        }
        cplx fp = f(mid + half * x[i]), fm = f(mid - half * x[i]);
        s += w[i] * (fp + fm);
        m += w[i] * (std::abs(fp) + std::abs(fm));
    }
    return {s * half, m * std::abs(half)};
}

constexpr int panel_evals = 32;

} // namespace

QuadResult integrate_segment(const CFun& f, cplx a, cplx b, double tol, int initial_panels,
                             int max_evals)
{
    struct Item {
        cplx a, b, est;
        int depth;
    };
    QuadResult res;
    std::vector<Item> todo;
    cplx h = (b - a) / double(initial_panels);
    double scale = 0;
    for (int i = 0; i < initial_panels; ++i) {
        cplx pa = a + double(i) * h, pb = pa + h;
        Panel e = panel(f, pa, pb);
        res.evals += panel_evals;
        todo.push_back({pa, pb, e.v, 0});
        scale += e.mag;
    }
    cplx acc = 0;
    while (!todo.empty()) {
        Item it = todo.back();
        todo.pop_back();
        cplx m = 0.5 * (it.a + it.b);
        Panel l = panel(f, it.a, m), r = panel(f, m, it.b);
        res.evals += 2 * panel_evals;
        double err = std::abs(l.v + r.v - it.est);
        double len_frac = std::abs(it.b - it.a) / std::abs(b - a);
        // below ~eps * int|f| over the panel the estimate is roundoff
        bool ok = err <= tol * scale * std::max(len_frac, 1e-3) || err <= 1e-14 * (l.mag + r.mag);
        if (ok || it.depth > 40) {
            acc += l.v + r.v;
            continue;
        }
        if (res.evals > max_evals)
            throw Error(Err::NonConvergent, "adaptive quadrature budget exhausted");
        todo.push_back({it.a, m, l.v, it.depth + 1});
        todo.push_back({m, it.b, r.v, it.depth + 1});
    }
    res.value = acc;
    return res;
}

cplx integrate_fixed(const CFun& f, cplx a, cplx b, int panels)
{
    cplx h = (b - a) / double(panels);
    cplx s = 0;
    for (int i = 0; i < panels; ++i)
        s += panel(f, a + double(i) * h, a + double(i + 1) * h).v;
    return s;
}

std::vector<std::vector<cplx>> taylor_circle_multi(const VFun& f, cplx c, double r, int N)
{
    std::vector<std::vector<cplx>> vals(N);
    for (int m = 0; m < N; ++m)
        vals[m] = f(c + r * std::polar(1.0, 2.0 * pi * m / N));
    size_t count = vals[0].size();
    std::vector<std::vector<cplx>> a(count, std::vector<cplx>(N));
    for (int j = 0; j < N; ++j) {
        double rj = std::pow(r, j);
        for (size_t k = 0; k < count; ++k) {
            cplx s = 0;
            for (int m = 0; m < N; ++m)
                s += vals[m][k] * std::polar(1.0, -2.0 * pi * double(j) * m / N);
            a[k][j] = s / double(N) / rj;
        }
    }
    return a;
}

std::vector<cplx> taylor_circle(const CFun& f, cplx c, double r, int N)
{
    auto a = taylor_circle_multi([&](cplx z) { return std::vector<cplx>{f(z)}; }, c, r, N);
    return a[0];
}

cplx circle_derivative(const CFun& f, cplx c, double r, int N, int order)
{
    auto a = taylor_circle(f, c, r, N);
    double fact = 1;
    for (int i = 2; i <= order; ++i)
        fact *= i;
    return a[order] * fact;
}

Taylor Taylor::constant(cplx a, size_t n)
{
    Taylor t(std::vector<cplx>(n, 0.0));
    t.c[0] = a;
    return t;
}

Taylor Taylor::variable(cplx x0, size_t n)
{
    Taylor t(std::vector<cplx>(n, 0.0));
    t.c[0] = x0;
    if (n > 1)
        t.c[1] = 1.0;
    return t;
}

cplx Taylor::deriv(int k) const
{
    double fact = 1;
    for (int i = 2; i <= k; ++i)
        fact *= i;
    return c[k] * fact;
}

Taylor Taylor::derivative() const
{
    std::vector<cplx> d(c.size() > 1 ? c.size() - 1 : 1, 0.0);
    for (size_t i = 1; i < c.size(); ++i)
        d[i - 1] = double(i) * c[i];
    return Taylor(d);
}

Taylor operator+(const Taylor& a, const Taylor& b)
{
    size_t n = std::min(a.size(), b.size());
    Taylor r{std::vector<cplx>(n)};
    for (size_t i = 0; i < n; ++i)
        r.c[i] = a.c[i] + b.c[i];
    return r;
}

Taylor operator-(const Taylor& a) { return cplx(-1.0) * a; }

Taylor operator-(const Taylor& a, const Taylor& b) { return a + (-b); }

Taylor operator*(cplx s, const Taylor& a)
{
    Taylor r = a;
    for (auto& x : r.c)
        x *= s;
    return r;
}

Taylor operator+(cplx s, const Taylor& a)
{
    Taylor r = a;
    r.c[0] += s;
    return r;
}

Taylor operator*(const Taylor& a, const Taylor& b)
{
    size_t n = std::min(a.size(), b.size());
    Taylor r(std::vector<cplx>(n, 0.0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; i + j < n; ++j)
            r.c[i + j] += a.c[i] * b.c[j];
    return r;
}

Taylor operator/(const Taylor& a, const Taylor& b)
{
    size_t n = std::min(a.size(), b.size());
    Taylor r(std::vector<cplx>(n, 0.0));
    for (size_t i = 0; i < n; ++i) {
        cplx s = a.c[i];
        for (size_t j = 1; j <= i; ++j)
            s -= b.c[j] * r.c[i - j];
        r.c[i] = s / b.c[0];
    }
    return r;
}

Taylor pow(const Taylor& a, cplx p)
{
    // y = a^p satisfies a y' = p a' y
    size_t n = a.size();
    Taylor y(std::vector<cplx>(n, 0.0));
    y.c[0] = std::pow(a.c[0], p);
    for (size_t k = 1; k < n; ++k) {
        cplx s = 0;
        for (size_t j = 1; j <= k; ++j)
            s += (p * double(j) - double(k - j)) * a.c[j] * y.c[k - j];
        y.c[k] = s / (double(k) * a.c[0]);
    }
    return y;
}

} // namespace eop
