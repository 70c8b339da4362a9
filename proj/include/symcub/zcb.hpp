#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "symcub/measure.hpp"

namespace symcub {

/// Zero-coupon bond benchmark: price of a bond under the Euler-Maruyama
/// discretization of the Vasicek short-rate model. The discretized rates
/// (r_{t1}..r_{t(T-1)}) are jointly Gaussian; the bond price is the
/// expectation of exp(-dt * sum of rates) and has a closed form.
struct ZcbProblem {
    int horizon = 10;             // T; integration dimension is m = T - 1
    double dt = 0.25;
    double initial_rate = 0.05;   // r_{t0}
    double reversion_speed = 0.5; // kappa
    double long_run_mean = 0.04;  // theta
    double volatility = 0.1;      // sigma

    int dimension() const { return horizon - 1; }
};

/// Mean vector and lower-triangular factor L with rates = mean + L * z,
/// z ~ N(0, I_{T-1}).
struct ZcbGaussian {
    Eigen::VectorXd mean;
    Eigen::MatrixXd chol;  // lower triangular
};

ZcbGaussian zcb_rate_distribution(const ZcbProblem& problem);

/// Closed-form bond price via the Gaussian moment-generating function.
double zcb_reference(const ZcbProblem& problem);

/// Whitened integrand over R^(T-1) against N(0, I): standard-normal inputs
/// mapped through the Cholesky factor and mean shift, then discounted.
ScalarFunction zcb_integrand(const ZcbProblem& problem);

/// Seeded Monte Carlo estimate with standard error, for oracle checks.
struct MonteCarloEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
};

MonteCarloEstimate zcb_monte_carlo(const ZcbProblem& problem, long samples, std::uint64_t seed);

struct ZcbRunConfig {
    std::vector<int> horizons = {5, 10, 15, 20, 25, 30};
    // Level 1 grids are degenerate for quadratic Bayes-Sard spaces (the
    // squared-coordinate columns sum to a constant), so start at 2.
    std::vector<int> levels = {2, 3};
    bool use_bayes_sard = false;
    int poly_degree = 2;          // Bayes-Sard total-degree space
    bool length_scale_sqrt = false;  // ell = sqrt(m) instead of ell = m
    std::string out = "-";
    ZcbProblem problem;
};

/// Runs the fully symmetric BC/BSC pipeline across horizons and grid
/// levels; writes CSV rows (method,T,m,level,J,N,estimate,reference,
/// relative_error,posterior_sd,weight_sum).
void run_zcb(const ZcbRunConfig& config);

}  // namespace symcub
