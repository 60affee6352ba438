#pragma once

#include <functional>
#include <vector>

#include "eop/core.hpp"

namespace eop {

using CFun = std::function<cplx(cplx)>;

// Composite Gauss-Legendre on the straight segment [a, b] with adaptive panel
// bisection: a panel is accepted when its 32-point estimate agrees with the sum
// over its two halves to tol relative to the running magnitude.
struct QuadResult {
    cplx value;
    int evals = 0;
};
QuadResult integrate_segment(const CFun& f, cplx a, cplx b, double tol = 1e-14,
                             int initial_panels = 8, int max_evals = 1 << 16);

// Fixed composite rule with 2^level panels of 32 points, used for the
// panel-doubling contour quadrature.
cplx integrate_fixed(const CFun& f, cplx a, cplx b, int panels);

// Taylor coefficients a_0..a_{N-1} of f about c from N samples on |z-c| = r.
std::vector<cplx> taylor_circle(const CFun& f, cplx c, double r, int N);

// Same for a vector-valued f; result[k] holds the coefficients of component k.
using VFun = std::function<std::vector<cplx>(cplx)>;
std::vector<std::vector<cplx>> taylor_circle_multi(const VFun& f, cplx c, double r, int N);

// j-th derivative of f at c by the same circle rule.
cplx circle_derivative(const CFun& f, cplx c, double r, int N, int order);

// Truncated Taylor series in (x - x0); arithmetic keeps the shortest length.
struct Taylor {
    std::vector<cplx> c;

    Taylor() = default;
    explicit Taylor(std::vector<cplx> v) : c(std::move(v)) {}
    static Taylor constant(cplx a, size_t n);
    static Taylor variable(cplx x0, size_t n);

    size_t size() const { return c.size(); }
    cplx value() const { return c[0]; }
    // k-th derivative at x0
    cplx deriv(int k) const;
    Taylor derivative() const;
};

Taylor operator+(const Taylor& a, const Taylor& b);
Taylor operator-(const Taylor& a, const Taylor& b);
Taylor operator*(const Taylor& a, const Taylor& b);
Taylor operator/(const Taylor& a, const Taylor& b);
Taylor operator*(cplx s, const Taylor& a);
Taylor operator+(cplx s, const Taylor& a);
Taylor operator-(const Taylor& a);
// a^p with the principal branch at the expansion point
Taylor pow(const Taylor& a, cplx p);

} // namespace eop
