#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "eop/hankel.hpp"

namespace eop {

struct ScanConfig {
    double re_min = -1.0, re_max = 1.0;
    double im_min = std::log(1.25) / pi; // |q| = 4/5
    double im_max = 2.0;
    int n_re = 80, n_im = 80;
    std::vector<int> indices{4};
    double newton_tol = 1e-10;
    double dedupe_radius = 1e-6;
    int jobs = 1;

    // throws Usage on im_min <= 0, grid < 8, empty or invalid indices
    void validate() const;
};

struct ScanZero {
    int index;
    cplx tau;
    double abs_delta;   // |Delta(tau*)|
    double local_scale; // mean |Delta| on the cell boundary
    int cell_re, cell_im;
    int winding;
};

struct ScanReport {
    std::vector<ScanZero> zeros; // sorted by (index, Re, Im)
    std::vector<std::string> log; // skipped cells and dropped seeds
    long evaluations = 0;
};

// Delta_index at tau from recursion moments (m0 = 1, m1 = -2 eta1).
cplx delta_at(int index, cplx tau);

// Argument-principle cell test, Newton refinement, dedupe. Cell failures are
// logged, never fatal.
ScanReport scan_zeros(const ScanConfig& cfg);

} // namespace eop
