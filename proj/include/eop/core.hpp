#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace eop {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using MatX = Eigen::MatrixXcd;
using VecX = Eigen::VectorXcd;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline const cplx I{0.0, 1.0};
inline const cplx two_pi_i{0.0, 2.0 * pi};

enum class Err {
    NomeTooLarge,
    NonConvergent,
    LatticePoint,
    BranchCut,
    BranchAmbiguity,
    WeightNotConstant,
    InvalidBasisIndex,
    DepthExceeded,
    MissingMoments,
    SingularLadder,
    SingularMomentMatrix,
    SingularRecurrence,
    TooCloseToContour,
    PoleOfSystem,
    FormulaMismatch,
    DegenerateU,
    NonConstantS,
    Usage,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
public:
    Error(Err kind, const std::string& what)
        : std::runtime_error(std::string(err_name(kind)) + ": " + what), kind_(kind) {}
    Err kind() const { return kind_; }

private:
    Err kind_;
};

inline double rel_err(cplx a, cplx b)
{
    double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

} // namespace eop
