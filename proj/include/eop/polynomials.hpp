#pragma once

#include <vector>

#include "eop/hankel.hpp"
#include "eop/numerics.hpp"

namespace eop {

// pi_n = sum_i coeff[i] E_i with coeff[n] = 1; coeff[1] is always 0.
struct EllipticPolynomial {
    int degree = 0;
    std::vector<cplx> coeff;
};

// E_i at a point where wp, wp' are known.
cplx basis_value(int i, const WpValues& W);

EllipticPolynomial build_pi(int n, const MomentTable& table);

cplx eval_pi(const EllipticPolynomial& p, cplx z, const LatticeData& lat);
cplx eval_pi(const EllipticPolynomial& p, const WpValues& W);

// int_gamma pi E_m w from the moment table.
cplx pairing(const EllipticPolynomial& p, int m, const MomentTable& table);
cplx pairing(const EllipticPolynomial& p, const EllipticPolynomial& q, const MomentTable& table);

// Distance from z to the nearest translate of gamma.
double contour_distance(cplx z, const LatticeData& lat);

struct CauchyOptions {
    double min_distance = 1e-3;
    double tol = 1e-14;
    // Add zeta(z)/(2 pi i) * int pi w, making C(pi_0) doubly periodic. It is
    // zero for n >= 2, so it only matters for pi_0.
    bool periodic_completion = true;
};

// (1/2 pi i) int_gamma pi(w) (zeta(w - z) - zeta(w)) w(w) dw
cplx cauchy_transform(const EllipticPolynomial& p, cplx z, const MomentTable& table,
                      const CauchyOptions& opt = {});

// Y_n = [[pi_n, C(pi_n)], [2 pi i/h_low * pi_low, 2 pi i/h_low * C(pi_low)]]
// general: low = n-1 (n >= 3); even: n = 2k, low = 2k-2 (k >= 1).
struct RHPMatrix {
    int n = 0;
    bool even = false;
    EllipticPolynomial top, low;
    cplx h_top, h_low;
    MomentTable table;
    CauchyOptions opt;

    Mat2 operator()(cplx z) const;
};

RHPMatrix assemble_Y(int n, const MomentTable& table);
RHPMatrix assemble_Y_even(int k, const MomentTable& table);

// Small-z coefficients: z^n pi_n = 1 + c2 z^2 + ...,
// (2 pi i/h_n) z^{1-n} C(pi_n) = 1 + ct2 z^2 + ...
struct SeriesCoeffs {
    cplx c2, c4, ct2, ct4;
};
SeriesCoeffs series_coeffs(const EllipticPolynomial& p, const MomentTable& table);

// radius used for series extraction around z = 0
double series_radius(const LatticeData& lat);

} // namespace eop
