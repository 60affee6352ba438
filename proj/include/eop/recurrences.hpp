#pragma once

#include <array>
#include <map>

#include "eop/polynomials.hpp"

namespace eop {

enum class AlphaSource { Direct, Recursed };

// Recurrence data for constant weight. f_n(z) = wp(z) + alpha_n = det Y_n(z).
struct RecurrenceLadder {
    LatticeData lat;
    std::map<int, cplx> alpha;
    std::map<int, AlphaSource> alpha_src;
    std::map<int, double> alpha_spread; // probe spread of direct extraction
    std::map<int, cplx> beta;           // h_n / h_{n-1}; beta_2 = h_2/h_0
    std::map<int, cplx> h;
    std::map<int, cplx> B; // beta_{n+1} + beta_n + alpha_n + alpha_{n+1}

    cplx f(int n, cplx p) const { return p + alpha.at(n); }
};

// alpha_n = det Y_n(z0) - wp(z0) averaged over 5 probes, n = 3..n_max.
// h and beta up to n_max. Throws NonConvergent if the probe spread exceeds
// 1e-8 relative, SingularLadder at a Delta zero.
RecurrenceLadder ladder_direct(int n_max, const MomentTable& table);

// Last term of the alpha recurrence denominator. MinusG3 is what eliminating
// beta_n, beta_{n+1}, alpha_{n+2} from the four coefficient equations gives;
// the other two are kept as printed alternatives and only agree when g3 = 0
// (PlusG3) or never (MinusG2).
enum class AlphaVariant { MinusG3, PlusG3, MinusG2 };

// alpha_{n+1} from alpha_{n-1}, alpha_n. Throws SingularRecurrence when the
// denominator is below 1e-12 of its scale.
cplx alpha_step(cplx alpha_prev, cplx alpha_cur, int n, const LatticeData& lat,
                AlphaVariant v = AlphaVariant::MinusG3);

// alpha_{n+2} = X/Y from alpha_{n-1}, alpha_n, alpha_{n+1}.
cplx alpha_xy(cplx a_prev, cplx a_cur, cplx a_next, int n, const LatticeData& lat);

// beta_n = (g3 - g2 a_n + 4 a_n^3) / (4 (a_{n-1} - a_n)(a_n - a_{n+1}))
cplx beta_rec(cplx a_prev, cplx a_cur, cplx a_next, const LatticeData& lat);

// Copy of the direct ladder with alpha_n for n > 4 replaced by recursion
// from (alpha_3, alpha_4).
RecurrenceLadder ladder_recursed(const RecurrenceLadder& direct, int n_max,
                                 AlphaVariant v = AlphaVariant::MinusG3);

// -a^3 + g2 a/4 - g3/4 - beta_n (a_{n-1} - a_n)(a_{n+1} - a_n)
cplx comrec_residual(int n, const RecurrenceLadder& lad);

// pi_{n+2} - (wp - B_n) pi_n + beta_n beta_{n-1} pi_{n-2}, n >= 4
cplx three_term_residual(int n, cplx z, const RecurrenceLadder& lad, const MomentTable& table);

// pi_{n+1} + wp' pi_n / (2 f_n) + beta_n f_{n+1} pi_{n-1} / f_n, n >= 4
cplx one_step_residual(int n, cplx z, const RecurrenceLadder& lad, const MomentTable& table);

struct LaxPair {
    Mat2 R, L;
};

// Y_{n+1} = R_n Y_n and Y_n' = L_n Y_n. Throws PoleOfSystem if |f_n(z)| < 1e-10.
LaxPair lax_matrices(int n, cplx z, const RecurrenceLadder& lad);
LaxPair lax_matrices(int n, const WpValues& W, const RecurrenceLadder& lad);

// max |entry| of R_n' - L_{n+1} R_n + R_n L_n, with R_n' from the Taylor
// jet of wp about z.
double compatibility_residual(int n, cplx z, const RecurrenceLadder& lad);

// Residuals (lhs - rhs) of the four coefficient equations obtained from the
// compatibility condition at order wp^3, wp^2, wp, 1.
std::array<cplx, 4> q_residuals(int n, const RecurrenceLadder& lad);

} // namespace eop
