#include "eop/hankel.hpp"

#include <cmath>

namespace eop {

namespace {

constexpr int max_depth = 10;

double row_norm_product(const MatX& A)
{
    double p = 1.0;
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        p *= A.row(i).norm();
    return p;
}

cplx even_m(const MomentTable& T, int j)
{
    if (j < 0 || size_t(j) >= T.even.size())
        throw Error(Err::MissingMoments, "even moment " + std::to_string(j));
    return T.even[j];
}

cplx odd_m(const MomentTable& T, int j)
{
    if (j < 0 || size_t(j) >= T.odd.size())
        throw Error(Err::MissingMoments, "odd moment " + std::to_string(j));
    return T.odd[j];
}

} // namespace

DetResult lu_det(const MatX& A)
{
    DetResult r;
    if (A.rows() == 0) {
        r.value = 1.0;
        return r;
    }
    Eigen::PartialPivLU<MatX> lu(A);
    r.value = lu.determinant();
    r.rcond = lu.rcond();
    r.row_scale = row_norm_product(A);
    return r;
}

std::vector<int> basis_indices(int n)
{
    std::vector<int> idx;
    if (n >= 1)
        idx.push_back(0);
    for (int i = 2; i <= n - 1; ++i)
        idx.push_back(i);
    return idx;
}

DetResult delta_ext(int index, const MomentTable& T)
{
    if (index < 0 || index == 1)
        throw Error(Err::InvalidBasisIndex, "Delta index " + std::to_string(index));
    bool odd = index % 2 == 1;
    int k = odd ? (index - 3) / 2 : index / 2;
    if (k > max_depth)
        throw Error(Err::DepthExceeded, "Hankel size " + std::to_string(k));
    MatX A(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            A(i, j) = odd ? 0.25 * odd_m(T, i + j) : even_m(T, i + j);
    return lu_det(A);
}

cplx delta(int index, const MomentTable& T) { return delta_ext(index, T).value; }

std::pair<cplx, cplx> bordered(int index, const MomentTable& T)
{
    if (index < 0 || index % 2)
        throw Error(Err::InvalidBasisIndex, "bordered index must be even");
    int k = index / 2;
    if (k > max_depth)
        throw Error(Err::DepthExceeded, "Hankel size " + std::to_string(k));
    cplx G = 0, L = 0;
    if (k >= 1) {
        MatX A(k, k);
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k - 1; ++j)
                A(i, j) = even_m(T, i + j);
            A(i, k - 1) = even_m(T, i + k);
        }
        G = lu_det(A).value;
    }
    if (k >= 2) {
        MatX A(k, k);
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k - 2; ++j)
                A(i, j) = even_m(T, i + j);
            A(i, k - 2) = even_m(T, i + k - 1);
            A(i, k - 1) = even_m(T, i + k);
        }
        L = lu_det(A).value;
    }
    return {G, L};
}

DetResult checkerboard_D_ext(int n, const MomentTable& T)
{
    auto idx = basis_indices(n);
    int m = int(idx.size());
    if (m > 2 * max_depth)
        throw Error(Err::DepthExceeded, "moment matrix size " + std::to_string(m));
    MatX S(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            S(i, j) = T.mixed(idx[i], idx[j]);
    return lu_det(S);
}

cplx checkerboard_D(int n, const MomentTable& T) { return checkerboard_D_ext(n, T).value; }

cplx norm_h(int n, const MomentTable& T)
{
    if (n == 0)
        return T.even.at(0);
    if (n == 1)
        throw Error(Err::InvalidBasisIndex, "no degree-1 polynomial");
    DetResult a = checkerboard_D_ext(n, T), b = checkerboard_D_ext(n + 1, T);
    if (a.singular())
        throw Error(Err::SingularLadder, "D_" + std::to_string(n) + " vanishes");
    return b.value / a.value;
}

HankelLadder build_ladder(const MomentTable& T, int nmax)
{
    HankelLadder L;
    for (int n = 0; n <= nmax + 2; ++n) {
        if (n == 1)
            continue;
        DetResult d = delta_ext(n, T);
        L.delta[n] = d.value;
        L.rcond[n] = d.rcond;
        if (n % 2 == 0) {
            auto [g, l] = bordered(n, T);
            L.gamma[n] = g;
            L.lambda[n] = l;
        }
    }
    L.h[0] = T.even.at(0);
    for (int n = 2; n <= nmax; ++n) {
        if (!T.weight.is_one()) {
            L.h[n] = norm_h(n, T);
            continue;
        }
        DetResult d = delta_ext(n, T);
        if (d.singular())
            throw Error(Err::SingularLadder, "Delta_" + std::to_string(n) + " vanishes");
        L.h[n] = L.delta.at(n + 2) / L.delta.at(n);
    }
    return L;
}

} // namespace eop
