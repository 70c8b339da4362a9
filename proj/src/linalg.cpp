#include "symcub/linalg.hpp"

#include <limits>
#include <string>
#include <vector>

#include <lapacke.h>

#include "symcub/errors.hpp"

namespace symcub {

Eigen::MatrixXd solve_symmetric_indefinite(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                           SolveInfo* info) {
    const lapack_int n = static_cast<lapack_int>(A.rows());
    const lapack_int nrhs = static_cast<lapack_int>(B.cols());
    if (A.cols() != n || B.rows() != n) {
        throw InvalidInput("solve_symmetric_indefinite: shape mismatch");
    }
    const double anorm = A.cwiseAbs().colwise().sum().maxCoeff();

    Eigen::MatrixXd F = A;  // factor in place
    Eigen::MatrixXd X = B;
    std::vector<lapack_int> ipiv(n);

    lapack_int ret = LAPACKE_dsytrf(LAPACK_COL_MAJOR, 'L', n, F.data(), n, ipiv.data());
    if (ret != 0) {
        throw NumericalError("symmetric indefinite factorization failed (dsytrf info=" +
                             std::to_string(ret) + "); the saddle-point matrix is singular");
    }
    ret = LAPACKE_dsytrs(LAPACK_COL_MAJOR, 'L', n, nrhs, F.data(), n, ipiv.data(), X.data(), n);
    if (ret != 0) throw NumericalError("dsytrs failed with info=" + std::to_string(ret));

    if (info != nullptr) {
        double rcond = 0.0;
        ret = LAPACKE_dsycon(LAPACK_COL_MAJOR, 'L', n, F.data(), n, ipiv.data(), anorm, &rcond);
        info->condition_estimate = (ret == 0 && rcond > 0.0) ? 1.0 / rcond : 0.0;
    }
    return X;
}

LuSolver::LuSolver(const Eigen::MatrixXd& A) : lu_(A) {
    const double rcond = lu_.rcond();
    cond_ = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
    const double min_pivot = lu_.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (!(rcond > 0.0) || min_pivot == 0.0) {
        throw NumericalError("LU factorization: matrix is singular to working precision");
    }
}

Eigen::MatrixXd LuSolver::solve(const Eigen::MatrixXd& B) const { return lu_.solve(B); }

SpdSolver::SpdSolver(Eigen::MatrixXd A, double jitter, const char* what) {
    if (jitter > 0.0) A.diagonal().array() += jitter;
    llt_.compute(A);
    if (llt_.info() != Eigen::Success) {
        throw NumericalError(std::string(what) +
                             ": Cholesky factorization failed; the matrix is not numerically "
                             "positive definite (consider a diagonal jitter or a smaller "
                             "generator set)");
    }
    const double rcond = llt_.rcond();
    cond_ = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
}

double condition_2norm(const Eigen::MatrixXd& A) {
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    const auto& sv = svd.singularValues();
    return sv(0) / sv(sv.size() - 1);
}

}  // namespace symcub
