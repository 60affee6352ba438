#pragma once

#include <array>
#include <map>
#include <vector>

#include "eop/polynomials.hpp"

namespace eop {

// Y_{2k} = (1 + z^2 U + z^4 V + ...) z^Theta near 0, Theta = diag(-2k, 2k-3).
// Y_{2k}' Y_{2k}^{-1} = P(wp)/wp' with P(x) = Lt2 x^2 + Lt1 x + Lt0, and
// P(wp)/wp' = sum_i res[i] wp'/(wp - e_i).
struct EvenLaxData {
    int k = 0;
    LatticeData lat;
    Mat2 theta, U, V, Lt0, Lt1, Lt2;
    std::array<Mat2, 3> res;       // at e1, e2, e3
    std::array<Mat2, 3> res_free;  // res - I/4, eigenvalues +-1/4
    Mat2 L(const WpValues& W) const;
    // P(wp) / wp' split over the three residues
    Mat2 L_partial(const WpValues& W) const;
};

EvenLaxData even_lax(int k, const MomentTable& table);

// Y_{2k}(z) and its z-derivative (32-point circle rule, radius at most a fifth
// of the distance to gamma and the lattice).
struct MatJet {
    Mat2 Y, dY;
};
MatJet y_jet(const RHPMatrix& Y, cplx z);

// ||Y' - L Y|| / ||Y|| at z.
double even_lax_residual(const EvenLaxData& d, const RHPMatrix& Y, cplx z);

// ||dY/dtau - M Y|| / ||Y|| with M = sum_i res_i (wpdot - edot_i)/(c (wp - e_i)),
// for c = 2 (with_half) and c = 1 (without_half). dY/dtau goes through the
// whole moment/polynomial/Cauchy pipeline on a circle in tau.
struct TauFlowResult {
    double with_half = 0, without_half = 0;
};
TauFlowResult tau_flow_residual(int k, cplx tau, cplx z);

// 4-point Fuchsian form in x = (wp - e2)/(e1 - e2): poles 0 (e2), 1 (e1), t (e3).
struct FuchsianData {
    int k = 0;
    cplx t;
    std::array<cplx, 3> x;      // pole images of e1, e2, e3
    std::array<Mat2, 3> A;      // G^{-1} res_free[i] G, G = (e1-e2)^{(4k-3) sigma3/4}
    double theta0 = 0;          // 3/2 - 2k
    cplx u_zero;                // zero of (sum A_i/(x - x_i))_12
    cplx g_coord;               // g from the same entry
};
// Throws BranchAmbiguity if e1 - e2 lies within 1e-8 of the negative axis.
FuchsianData fuchsian(int k, const MomentTable& table);

// Taylor data in t about a real t0: K, E, Delta_{2j}, Gamma_{2j} (j <= kmax+1).
struct TJets {
    double t0 = 0, radius = 0;
    Taylor t, K, E;
    std::map<int, Taylor> delta, gamma; // keyed by j in Delta_{2j}
};
TJets t_jets(int kmax, double t0, int order = 8);

// u_k from the log-derivative route and from the Gamma/Delta route.
Taylor u_series(int k, const TJets& J);
Taylor u_gamma_series(int k, const TJets& J);

struct UResult {
    cplx u, u_gamma;
    Taylor series;
};
// Throws FormulaMismatch if the routes differ by more than 1e-5 relative.
UResult u_of_t(int k, double t);

// u'' minus the right-hand side of PVI with parameter (2k - 1/2)^2.
struct PviResidual {
    double abs = 0, scale = 0;
};
PviResidual pvi_residual(int k, double t);
cplx pvi_defect(int k, cplx t, cplx u, cplx du, cplx ddu);

struct VGZeta {
    cplx v, g, zeta, zeta_closed;
    cplx gauge_defect; // g'/g - (1-4k)(u-t)/(2t(t-1))
    cplx vdot_defect;  // t(t-1) v' minus its right-hand side
};
// Throws DegenerateU if u is within 1e-10 of 0, 1 or t.
VGZeta v_g_zeta(int k, double t);

// zeta_k = t(t-1) Delta'/Delta + (k(2k-3)/2)(E/K + t - 1) + (2t-1)/8
Taylor zeta_series(int k, const TJets& J);

// sigma-form defect (t(t-1)zeta'')^2 + 2 det(...). corner = 3/16 - theta0^2/4
// unless printed_corner, which uses 3/8 - theta0^2/4.
cplx sigma_residual(int k, double t, bool printed_corner = false);

// T_k = t^{1/8} (1-t)^{1/8} (2K)^{-n(2k-3)} Delta_{2k}
Taylor tau_series(int k, const TJets& J, double n);

// n making zeta_k = t(t-1) d log T_k / dt with zeta from (u, v); k >= 1.
double tau_exponent_fit(int k, double t);

struct TauSk {
    std::vector<double> grid;
    std::map<int, std::vector<cplx>> T;  // T_k on the grid
    std::map<int, std::vector<cplx>> s_at; // s_k on the grid
    std::map<int, cplx> s;                 // grid mean
    std::map<int, double> spread;          // max relative deviation
    std::map<int, double> exponent;        // fitted n per k
};
// Throws NonConstantS if some spread exceeds 1e-4.
TauSk tau_and_sk(int kmax, const std::vector<double>& grid);

// (wp_H - e1)/(e2 - e1) with wp_H = e1 + e2 + 2(16 eta^3 + g2 eta - g3)/(48 eta^2 - g2).
cplx hitchin_u1(double t);

} // namespace eop
