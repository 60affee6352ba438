#pragma once

#include <functional>
#include <vector>

#include "eop/elliptic.hpp"

namespace eop {

// Weight on gamma = [tau/2, tau/2 + 1], sampled as s -> w(tau/2 + s).
struct WeightSpec {
    enum class Kind { ConstantOne, UserCallable };
    Kind kind = Kind::ConstantOne;
    std::function<cplx(double)> eval;
    bool parity_even = true;

    static WeightSpec one();
    static WeightSpec user(std::function<cplx(double)> f, bool parity_even);
    cplx operator()(double s) const { return kind == Kind::ConstantOne ? cplx(1.0) : eval(s); }
    bool is_one() const { return kind == Kind::ConstantOne; }
    // Checks the claimed parity w(1/2 + x) = w(1/2 - x) at 16 pairs; throws Usage.
    void check_parity() const;
};

enum class Provenance { Quadrature, Recursion, Exact };

// Power-indexed moments on gamma:
//   even[j]  = int wp^j w dz
//   odd[j]   = int wp'^2 wp^j w dz   (no 1/4)
//   cross[j] = int wp' wp^j w dz     (zero for constant weight)
struct MomentTable {
    LatticeData lat;
    WeightSpec weight;
    std::vector<cplx> even, odd, cross;
    std::vector<Provenance> even_src;

    // mu_{i,j} = int E_i E_j w with E_{2k} = wp^k, E_{2k+3} = -wp' wp^k / 2
    cplx mixed(int i, int j) const;
    // largest basis index whose moments with every lower index are available
    int max_index() const;
};

// int_gamma f(z) dz by 32-point Gauss-Legendre panel doubling.
cplx contour_quadrature(const std::function<cplx(cplx)>& f, const LatticeData& lat,
                        double tol = 1e-13);

cplx even_moment(int j, const LatticeData& lat, const WeightSpec& w, double tol = 1e-13);

// All three sequences up to index J in one panel-doubling pass.
MomentTable moments_by_quadrature(const LatticeData& lat, const WeightSpec& w, int J,
                                  double tol = 1e-13);

// Constant weight only. Keeps even[0..1] as seeds and fills the rest from
// (8k+12) m_{k+2} = (2k+1) g2 m_k + 2k g3 m_{k-1}; odd from
// int wp'^2 wp^j = 4 m_{j+3} - g2 m_{j+1} - g3 m_j.
MomentTable extend_by_recursion(const MomentTable& table, int J);

// Constant weight with exact seeds m0 = 1, m1 = -2 eta1.
MomentTable moments_exact(const LatticeData& lat, int J);

cplx mixed_moment(int i, int j, const MomentTable& table);

} // namespace eop
