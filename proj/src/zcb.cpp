#include "symcub/zcb.hpp"

#include <cmath>
#include <random>

#include "symcub/bayes_sard.hpp"
#include "symcub/bc.hpp"
#include "symcub/errors.hpp"
#include "symcub/io.hpp"
#include "symcub/sparse_grid.hpp"

namespace symcub {

ZcbGaussian zcb_rate_distribution(const ZcbProblem& problem) {
    const int m = problem.dimension();
    if (m < 1) throw InvalidInput("zcb: horizon must be at least 2");
    const double phi = 1.0 - problem.reversion_speed * problem.dt;
    const double drift = problem.reversion_speed * problem.long_run_mean * problem.dt;
    const double shock = problem.volatility * std::sqrt(problem.dt);

    ZcbGaussian g;
    g.mean.resize(m);
    double mu = problem.initial_rate;
    for (int i = 0; i < m; ++i) {
        mu = phi * mu + drift;
        g.mean[i] = mu;
    }
    // r_{t(i+1)} = phi r_{ti} + drift + shock z_i, so the sensitivity of the
    // i-th rate to shock j <= i is shock * phi^(i-j).
    g.chol = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j <= i; ++j) g.chol(i, j) = shock * std::pow(phi, i - j);
    }
    return g;
}

double zcb_reference(const ZcbProblem& problem) {
    const ZcbGaussian g = zcb_rate_distribution(problem);
    const int m = problem.dimension();
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(m);
    const double sum_mean = ones.dot(g.mean);
    const Eigen::VectorXd lt_ones = g.chol.transpose() * ones;
    const double sum_var = lt_ones.squaredNorm();  // 1^T L L^T 1
    const double dt = problem.dt;
    return std::exp(-dt * problem.initial_rate) * std::exp(-dt * sum_mean + dt * dt * sum_var / 2.0);
}

ScalarFunction zcb_integrand(const ZcbProblem& problem) {
    const ZcbGaussian g = zcb_rate_distribution(problem);
    const double dt = problem.dt;
    const double discount0 = -dt * problem.initial_rate;
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(problem.dimension());
    const double mean_term = ones.dot(g.mean);
    const Eigen::VectorXd lt_ones = g.chol.transpose() * ones;
    return [=](const Eigen::VectorXd& z) {
        return std::exp(discount0 - dt * (mean_term + lt_ones.dot(z)));
    };
}

MonteCarloEstimate zcb_monte_carlo(const ZcbProblem& problem, long samples, std::uint64_t seed) {
    const ScalarFunction f = zcb_integrand(problem);
    const int m = problem.dimension();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    double sum = 0.0;
    double sum_sq = 0.0;
    Eigen::VectorXd z(m);
    for (long s = 0; s < samples; ++s) {
        for (int i = 0; i < m; ++i) z[i] = normal(rng);
        const double value = f(z);
        sum += value;
        sum_sq += value * value;
    }
    MonteCarloEstimate est;
    est.mean = sum / static_cast<double>(samples);
    const double var = (sum_sq / static_cast<double>(samples) - est.mean * est.mean) /
                       static_cast<double>(samples - 1) * static_cast<double>(samples);
    est.standard_error = std::sqrt(var / static_cast<double>(samples));
    return est;
}

void run_zcb(const ZcbRunConfig& config) {
    CsvWriter csv(config.out);
    csv.header({"method", "T", "m", "level", "J", "N", "estimate", "reference", "relative_error",
                "posterior_sd", "weight_sum"});

    for (int T : config.horizons) {
        ZcbProblem problem = config.problem;
        problem.horizon = T;
        const int m = problem.dimension();
        const double reference = zcb_reference(problem);
        const ScalarFunction f = zcb_integrand(problem);
        const GaussianMeasure measure = GaussianMeasure::standard(m);
        const double ell = config.length_scale_sqrt ? std::sqrt(static_cast<double>(m))
                                                    : static_cast<double>(m);
        const GaussianKernel kernel(ell);

        for (int level : config.levels) {
            const SymmetricPointSet design =
                build_point_set(make_gauss_hermite_generators(m, level));
            const Eigen::VectorXd f_values = evaluate_integrand(design.points, f);

            double estimate = 0.0;
            double sd = 0.0;
            double weight_sum = 0.0;
            std::string method;
            if (config.use_bayes_sard) {
                method = "bsc";
                const PolynomialSpace space =
                    even_subspace(make_total_degree_space(m, config.poly_degree));
                const BayesSardResult r = bsc_fss(design, kernel, measure, space, f_values);
                estimate = r.posterior_mean;
                sd = std::sqrt(r.posterior_variance);
                weight_sum = r.flat_kernel_weights.sum();
            } else {
                method = "bc";
                const CubatureResult r = bc_fss(design, kernel, measure, f_values);
                estimate = r.posterior_mean;
                sd = std::sqrt(r.posterior_variance);
                weight_sum = r.point_weights.sum();
            }
            csv.row({method, std::to_string(T), std::to_string(m), std::to_string(level),
                     std::to_string(design.block_count()), std::to_string(design.total_size()),
                     format_double(estimate), format_double(reference),
                     format_double(std::abs(estimate - reference) / std::abs(reference)),
                     format_double(sd), format_double(weight_sum)});
        }
    }
}

}  // namespace symcub
