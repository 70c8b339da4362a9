#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace symcub {

/// Eight-dimensional Gaussian-bump integration benchmark. The integrand
///   f(x) = exp(-(x - mu_f)^T Sf^{-1} (x - mu_f) / 2)
/// is integrated against a correlated, non-centred Gaussian measure
/// N(mu_nu, Snu), which is not fully symmetric; the driver rewrites the
/// problem against N(0, I_8) via the density ratio and runs the fast
/// symmetric cubature path on Gauss-Hermite sparse grids.
struct ChangeOfMeasureProblem {
    Eigen::VectorXd mu_f;
    Eigen::MatrixXd sigma_f;
    Eigen::VectorXd mu_nu;
    Eigen::MatrixXd sigma_nu;

    ChangeOfMeasureProblem();  // the fixed 8-D constants

    /// (2 pi)^4 |Sf|^{1/2} N(mu_f; mu_nu, Sf + Snu), approximately 0.0280.
    double closed_form_value() const;
};

struct ChangeOfMeasureRunConfig {
    std::vector<int> levels = {1, 2, 3, 4, 5};
    double length_scale = 0.8;
    std::string out = "-";
};

/// CSV rows (level,J,N,estimate,reference,relative_error,posterior_sd).
void run_change_of_measure(const ChangeOfMeasureRunConfig& config);

}  // namespace symcub
