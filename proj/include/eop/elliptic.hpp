#pragma once

#include "eop/core.hpp"

namespace eop {

struct TruncationPolicy {
    double rel_tol = 1e-16;
    int max_terms = 200;
    double max_abs_q = 0.85;
};

// Jacobi theta constants at z = 0 for nome q = exp(i pi tau).
struct ThetaConstants {
    cplx th2, th3, th4;
    cplx th1p;   // theta_1'(0)
    cplx th1ppp; // theta_1'''(0)
};

ThetaConstants theta_constants(cplx tau, const TruncationPolicy& pol = {});

// Complete elliptic integrals K(t), E(t) with parameter t (= k^2), principal branch.
struct KE {
    cplx K, E;
};
KE elliptic_KE(cplx t);

// Everything derived from the period ratio tau for the lattice Z + tau Z.
// eta1 is zeta(1/2); eta1_shift = zeta(z+1) - zeta(z) = 2 eta1.
struct LatticeData {
    cplx tau;
    cplx q;  // exp(i pi tau)
    cplx t;  // lambda(tau) = (e3-e2)/(e1-e2)
    cplx g2, g3;
    cplx e1, e2, e3; // wp(1/2), wp(tau/2), wp((1+tau)/2)
    cplx eta1;       // zeta(1/2)
    cplx eta1_shift; // zeta(z+1) - zeta(z)
    cplx eta2_shift; // zeta(z+tau) - zeta(z)
    cplx K, E;       // of t
    ThetaConstants th;
    bool from_theta = true; // false when built from t via K, E closed forms
    TruncationPolicy pol;
};

LatticeData lattice_from_tau(cplx tau, const TruncationPolicy& pol = {});

// Closed forms in K(t), E(t). tau = i K(1-t)/K(t); theta data is filled in
// only when |q| is within policy.
LatticeData lattice_from_t(cplx t, const TruncationPolicy& pol = {});

struct WpValues {
    cplx p, dp, zeta;
};

// wp, wp', zeta at z. Throws LatticePoint if z reduces onto the lattice.
WpValues weierstrass(cplx z, const LatticeData& lat);
cplx wp(cplx z, const LatticeData& lat);

// Distance from z to the nearest lattice point.
double lattice_distance(cplx z, const LatticeData& lat);

// Reduce z = z0 + m + n tau with z0 in the cell centred at 0.
struct Reduced {
    cplx z0;
    double m, n;
};
Reduced reduce(cplx z, cplx tau);

} // namespace eop
