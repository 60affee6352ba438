#pragma once

#include <map>
#include <utility>
#include <vector>

#include "eop/moments.hpp"

namespace eop {

struct DetResult {
    cplx value;
    double rcond = 1.0;    // reciprocal condition estimate of the LU
    double row_scale = 1.0; // product of row norms (Hadamard bound)
    // Hankel moment matrices sit far below the Hadamard bound even when
    // healthy, so the zero test uses the condition estimate.
    bool singular() const { return value == 0.0 || rcond < 1e-14; }
};

// Determinant by LU with partial pivoting.
DetResult lu_det(const MatX& A);

// Delta_n: even n = 2k -> det[m_{i+j}]_{k x k}; odd n = 2k+3 -> det[o_{i+j}/4]_{k x k}.
DetResult delta_ext(int index, const MomentTable& table);
cplx delta(int index, const MomentTable& table);

// Bordered determinants (Gamma_{2k}, Lambda_{2k}) so that
// pi_{2k} = wp^k - (Gamma/Delta) wp^{k-1} + (Lambda/Delta) wp^{k-2} + ...
std::pair<cplx, cplx> bordered(int index, const MomentTable& table);

// det S_n with S_n[i][j] = mu_{I_i, I_j}, I = {0, 2, 3, ..., n-1}.
DetResult checkerboard_D_ext(int n, const MomentTable& table);
cplx checkerboard_D(int n, const MomentTable& table);

// h_n = D_{n+1}/D_n; h_0 = int w.
cplx norm_h(int n, const MomentTable& table);

struct HankelLadder {
    std::map<int, cplx> delta;     // Delta_n for n = 0, 2, 3, ...
    std::map<int, cplx> gamma;     // Gamma_{2k}
    std::map<int, cplx> lambda;    // Lambda_{2k}
    std::map<int, cplx> h;         // h_n
    std::map<int, double> rcond;   // per Delta_n
};

// Ladder up to Delta_{nmax+1}, h_n for n < nmax. Throws SingularLadder if a
// needed Delta vanishes.
HankelLadder build_ladder(const MomentTable& table, int nmax);

// basis index list {0, 2, 3, ..., n-1}
std::vector<int> basis_indices(int n);

} // namespace eop
