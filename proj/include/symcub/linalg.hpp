#pragma once

#include <Eigen/Dense>

namespace symcub {

struct SolveInfo {
    double condition_estimate = 0.0;  // 1-norm condition number estimate
};

/// Solves the symmetric indefinite system A X = B with a Bunch-Kaufman
/// factorization (LAPACK dsytrf/dsytrs). Throws NumericalError on exact
/// singularity. The condition estimate comes from dsycon.
Eigen::MatrixXd solve_symmetric_indefinite(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                           SolveInfo* info = nullptr);

/// LU with partial pivoting; general square systems (the fast-path S matrix
/// has no symmetry guarantee when block sizes differ).
class LuSolver {
public:
    explicit LuSolver(const Eigen::MatrixXd& A);

    Eigen::MatrixXd solve(const Eigen::MatrixXd& B) const;
    double condition_estimate() const { return cond_; }

private:
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
    double cond_ = 0.0;
};

/// Cholesky for symmetric positive definite kernel matrices. Optional
/// diagonal jitter is added before factorizing. Throws NumericalError when
/// the factorization breaks down.
class SpdSolver {
public:
    SpdSolver(Eigen::MatrixXd A, double jitter, const char* what);

    Eigen::MatrixXd solve(const Eigen::MatrixXd& B) const { return llt_.solve(B); }
    double condition_estimate() const { return cond_; }

private:
    Eigen::LLT<Eigen::MatrixXd> llt_;
    double cond_ = 0.0;
};

/// 2-norm condition number via eigenvalues/singular values; used by
/// property tests, not hot paths.
double condition_2norm(const Eigen::MatrixXd& A);

}  // namespace symcub
