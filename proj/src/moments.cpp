#include "eop/moments.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

namespace eop {

WeightSpec WeightSpec::one() { return WeightSpec{}; }

WeightSpec WeightSpec::user(std::function<cplx(double)> f, bool parity_even)
{
    WeightSpec w;
    w.kind = Kind::UserCallable;
    w.eval = std::move(f);
    w.parity_even = parity_even;
    return w;
}

void WeightSpec::check_parity() const
{
    if (!parity_even || is_one())
        return;
    for (int i = 1; i <= 16; ++i) {
        double x = 0.5 * i / 17.0;
        if (rel_err(eval(0.5 + x), eval(0.5 - x)) > 1e-10)
            throw Error(Err::Usage, "weight claimed even but w(1/2+x) != w(1/2-x)");
    }
}

namespace {

bool is_odd_index(int i) { return i >= 3 && i % 2 == 1; }

void check_index(int i)
{
    if (i < 0 || i == 1)
        throw Error(Err::InvalidBasisIndex, "basis index " + std::to_string(i));
}

// Panel-doubling quadrature of a vector of integrands sharing node evaluations.
std::vector<cplx> quad_vector(const std::function<void(cplx, double, std::vector<cplx>&)>& fill,
                              size_t count, const LatticeData& lat, double tol)
{
    using GL = boost::math::quadrature::gauss<double, 32>;
    const auto& x = GL::abscissa();
    const auto& wt = GL::weights();
    cplx a = 0.5 * lat.tau;
    std::vector<cplx> prev, buf(count);
    for (int level = 0; level <= 9; ++level) {
        int panels = 1 << level;
        double h = 1.0 / panels;
        std::vector<cplx> acc(count, 0.0);
        std::vector<double> mag(count, 0.0);
        for (int p = 0; p < panels; ++p) {
            double mid = (p + 0.5) * h;
            for (size_t i = 0; i < x.size(); ++i) {
                for (int sgn : {1, -1}) {
                    if (x[i] == 0.0 && sgn < 0)
                        continue;
                    double s = mid + sgn * 0.5 * h * x[i];
                    fill(a + s, s, buf);
                    for (size_t k = 0; k < count; ++k) {
                        acc[k] += 0.5 * h * wt[i] * buf[k];
                        mag[k] += 0.5 * h * wt[i] * std::abs(buf[k]);
                    }
                }
            }
        }
        if (!prev.empty()) {
            bool ok = true;
            for (size_t k = 0; k < count; ++k) {
                // integrals that cancel to zero are judged against int |f|
                if (std::abs(acc[k] - prev[k]) > tol * std::abs(acc[k]) + 0.1 * tol * mag[k])
                    ok = false;
            }
            if (ok)
                return acc;
        }
        prev = acc;
    }
    throw Error(Err::NonConvergent, "contour quadrature did not converge within 2^14 nodes");
}

} // namespace

cplx contour_quadrature(const std::function<cplx(cplx)>& f, const LatticeData& lat, double tol)
{
    auto v = quad_vector([&](cplx z, double, std::vector<cplx>& out) { out[0] = f(z); }, 1, lat,
                         tol);
    return v[0];
}

cplx even_moment(int j, const LatticeData& lat, const WeightSpec& w, double tol)
{
    if (j > 24)
        throw Error(Err::DepthExceeded, "moment power > 24");
    auto v = quad_vector(
        [&](cplx z, double s, std::vector<cplx>& out) {
            out[0] = std::pow(wp(z, lat), j) * w(s);
        },
        1, lat, tol);
    return v[0];
}

MomentTable moments_by_quadrature(const LatticeData& lat, const WeightSpec& w, int J, double tol)
{
    if (J > 24)
        throw Error(Err::DepthExceeded, "moment power > 24");
    size_t n = size_t(J) + 1;
    auto v = quad_vector(
        [&](cplx z, double s, std::vector<cplx>& out) {
            WpValues W = weierstrass(z, lat);
            cplx ws = w(s);
            cplx pw = ws;
            for (size_t j = 0; j < n; ++j) {
                out[j] = pw;
                out[n + j] = W.dp * W.dp * pw;
                out[2 * n + j] = W.dp * pw;
                pw *= W.p;
            }
        },
        3 * n, lat, tol);
    MomentTable T;
    T.lat = lat;
    T.weight = w;
    T.even.assign(v.begin(), v.begin() + n);
    T.odd.assign(v.begin() + n, v.begin() + 2 * n);
    T.cross.assign(v.begin() + 2 * n, v.end());
    T.even_src.assign(n, Provenance::Quadrature);
    if (w.is_one())
        std::fill(T.cross.begin(), T.cross.end(), cplx(0.0));
    return T;
}

MomentTable extend_by_recursion(const MomentTable& table, int J)
{
    if (!table.weight.is_one())
        throw Error(Err::WeightNotConstant, "moment recursion needs the constant weight");
    if (table.even.size() < 2)
        throw Error(Err::MissingMoments, "need m0 and m1 seeds");
    MomentTable T = table;
    const cplx g2 = T.lat.g2, g3 = T.lat.g3;
    size_t need = size_t(J) + 4;
    T.even.resize(std::max(T.even.size(), need));
    T.even_src.resize(T.even.size(), Provenance::Recursion);
    for (size_t j = 2; j < T.even.size(); ++j) {
        int k = int(j) - 2;
        cplx mk1 = k >= 1 ? T.even[k - 1] : cplx(0.0);
        T.even[j] = (double(2 * k + 1) * g2 * T.even[k] + double(2 * k) * g3 * mk1) /
                    double(8 * k + 12);
        T.even_src[j] = Provenance::Recursion;
    }
    T.odd.assign(size_t(J) + 1, 0.0);
    for (int j = 0; j <= J; ++j)
        T.odd[j] = 4.0 * T.even[j + 3] - g2 * T.even[j + 1] - g3 * T.even[j];
    T.cross.assign(size_t(J) + 1, 0.0);
    T.even.resize(size_t(J) + 1);
    T.even_src.resize(size_t(J) + 1);
    return T;
}

MomentTable moments_exact(const LatticeData& lat, int J)
{
    MomentTable seed;
    seed.lat = lat;
    seed.weight = WeightSpec::one();
    seed.even = {1.0, -2.0 * lat.eta1};
    seed.even_src = {Provenance::Exact, Provenance::Exact};
    return extend_by_recursion(seed, J);
}

cplx MomentTable::mixed(int i, int j) const
{
    check_index(i);
    check_index(j);
    bool oi = is_odd_index(i), oj = is_odd_index(j);
    int a = oi ? (i - 3) / 2 : i / 2;
    int b = oj ? (j - 3) / 2 : j / 2;
    size_t s = size_t(a + b);
    if (!oi && !oj) {
        if (s >= even.size())
            throw Error(Err::MissingMoments, "even moment " + std::to_string(s));
        return even[s];
    }
    if (oi && oj) {
        if (s >= odd.size())
            throw Error(Err::MissingMoments, "odd moment " + std::to_string(s));
        return 0.25 * odd[s];
    }
    if (s >= cross.size())
        throw Error(Err::MissingMoments, "cross moment " + std::to_string(s));
    return -0.5 * cross[s];
}

int MomentTable::max_index() const
{
    // E_i E_j for i, j <= n needs even up to n, odd and cross up to n-3
    int n = 0;
    for (int m = 2; m < 40; ++m) {
        bool ok = size_t(m) < even.size() && (m < 3 || size_t(m - 3) < odd.size()) &&
                  (m < 3 || size_t(m - 3) < cross.size());
        if (!ok)
            break;
        n = m;
    }
    return n;
}

cplx mixed_moment(int i, int j, const MomentTable& table) { return table.mixed(i, j); }

} // namespace eop
