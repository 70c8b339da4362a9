#include "symcub/com.hpp"

#include <cmath>
#include <numbers>

#include "symcub/bc.hpp"
#include "symcub/io.hpp"
#include "symcub/kernel.hpp"
#include "symcub/measure.hpp"
#include "symcub/sparse_grid.hpp"

namespace symcub {

ChangeOfMeasureProblem::ChangeOfMeasureProblem() {
    const int m = 8;
    mu_f = Eigen::VectorXd::LinSpaced(m, 1.0 / 5.0, 1.0 / 2.0);
    mu_nu = Eigen::VectorXd::LinSpaced(m, 1.0 / 10.0, 1.0);

    sigma_f = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < 4; ++i) sigma_f(i, i) = (4.0 / 5.0) * (4.0 / 5.0);
    for (int i = 4; i < 8; ++i) sigma_f(i, i) = (11.0 / 10.0) * (11.0 / 10.0);

    sigma_nu = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < 4; ++i) sigma_nu(i, i) = 1.0;
    for (int i = 4; i < 8; ++i) sigma_nu(i, i) = 3.0 / 2.0;
    sigma_nu(0, 3) = sigma_nu(3, 0) = 3.0 / 10.0;
    sigma_nu(1, 6) = sigma_nu(6, 1) = 1.0 / 2.0;
}

double ChangeOfMeasureProblem::closed_form_value() const {
    const int m = static_cast<int>(mu_f.size());
    const Eigen::MatrixXd S = sigma_f + sigma_nu;
    const Eigen::LLT<Eigen::MatrixXd> llt(S);
    const Eigen::VectorXd diff = mu_f - mu_nu;
    const double quad = llt.matrixL().solve(diff).squaredNorm();
    double log_det_s = 0.0;
    for (int i = 0; i < m; ++i) log_det_s += 2.0 * std::log(llt.matrixL()(i, i));
    double log_det_f = 0.0;
    for (int i = 0; i < m; ++i) log_det_f += std::log(sigma_f(i, i));
    // (2 pi)^(m/2) |Sf|^(1/2) * N(mu_f; mu_nu, Sf + Snu)
    return std::exp(0.5 * log_det_f - 0.5 * log_det_s - 0.5 * quad);
}

void run_change_of_measure(const ChangeOfMeasureRunConfig& config) {
    const ChangeOfMeasureProblem problem;
    const int m = static_cast<int>(problem.mu_f.size());
    const double reference = problem.closed_form_value();

    const Eigen::MatrixXd sigma_f_inv = problem.sigma_f.inverse();
    const Eigen::VectorXd mu_f = problem.mu_f;
    const ScalarFunction f = [mu_f, sigma_f_inv](const Eigen::VectorXd& x) {
        const Eigen::VectorXd d = x - mu_f;
        return std::exp(-0.5 * d.dot(sigma_f_inv * d));
    };

    const auto nu = std::make_shared<GaussianMeasure>(problem.mu_nu, problem.sigma_nu);
    const auto nu_star = std::make_shared<GaussianMeasure>(
        Eigen::VectorXd::Zero(m), Eigen::MatrixXd::Identity(m, m));
    const TransformedIntegrand transformed = change_of_measure(f, nu, nu_star);
    const GaussianKernel kernel(config.length_scale);

    CsvWriter csv(config.out);
    csv.header({"level", "J", "N", "estimate", "reference", "relative_error", "posterior_sd"});
    for (int level : config.levels) {
        const SymmetricPointSet design = build_point_set(make_gauss_hermite_generators(m, level));
        const Eigen::VectorXd f_values = evaluate_integrand(design.points, ScalarFunction(transformed));
        const CubatureResult r = bc_fss(design, kernel, *nu_star, f_values);
        csv.row({std::to_string(level), std::to_string(design.block_count()),
                 std::to_string(design.total_size()), format_double(r.posterior_mean),
                 format_double(reference),
                 format_double(std::abs(r.posterior_mean - reference) / std::abs(reference)),
                 format_double(std::sqrt(r.posterior_variance))});
    }
}

}  // namespace symcub
