#include "symcub/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "symcub/errors.hpp"

namespace symcub {

double Measure::log_density(const Eigen::VectorXd& x) const { return std::log(density(x)); }

double Measure::polynomial_integral(const MultiIndex&) const {
    throw NotImplementedError("polynomial_integral is not supported for measure '" + name() + "'");
}

GaussianMeasure::GaussianMeasure(Eigen::VectorXd mean, Eigen::MatrixXd cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
    const int m = static_cast<int>(mean_.size());
    if (cov_.rows() != m || cov_.cols() != m) {
        throw InvalidInput("Gaussian covariance shape does not match the mean");
    }
    if (!cov_.isApprox(cov_.transpose())) {
        throw InvalidInput("Gaussian covariance must be symmetric");
    }
    chol_.compute(cov_);
    if (chol_.info() != Eigen::Success) {
        throw InvalidInput("Gaussian covariance is not positive definite");
    }
    double log_det = 0.0;
    for (int i = 0; i < m; ++i) log_det += 2.0 * std::log(chol_.matrixL()(i, i));
    log_norm_ = -0.5 * (m * std::log(2.0 * std::numbers::pi) + log_det);

    isotropic_centred_ = mean_.isZero(0.0) &&
                         cov_.isApprox(Eigen::MatrixXd::Identity(m, m) * cov_(0, 0), 0.0);
}

GaussianMeasure GaussianMeasure::standard(int m, double sigma2) {
    return GaussianMeasure(Eigen::VectorXd::Zero(m),
                           Eigen::MatrixXd::Identity(m, m) * sigma2);
}

double GaussianMeasure::density(const Eigen::VectorXd& x) const {
    return std::exp(log_density(x));
}

double GaussianMeasure::log_density(const Eigen::VectorXd& x) const {
    if (x.size() != mean_.size()) throw InvalidInput("point dimension mismatch in density");
    const Eigen::VectorXd centred = x - mean_;
    const Eigen::VectorXd z = chol_.matrixL().solve(centred);
    return log_norm_ - 0.5 * z.squaredNorm();
}

double GaussianMeasure::isotropic_variance() const {
    if (!isotropic_centred_) {
        throw PreconditionError("isotropic_variance requires a centred isotropic Gaussian");
    }
    return cov_(0, 0);
}

double GaussianMeasure::polynomial_integral(const MultiIndex& alpha) const {
    if (!isotropic_centred_) {
        throw NotImplementedError(
            "polynomial_integral: Gaussian moments supported only for N(0, sigma^2 I)");
    }
    if (static_cast<int>(alpha.size()) != dimension()) {
        throw InvalidInput("multi-index dimension mismatch");
    }
    const double sigma2 = cov_(0, 0);
    // Multiplied in sorted-exponent order so that permuted multi-indices
    // give bit-identical moments.
    MultiIndex sorted = alpha;
    std::sort(sorted.begin(), sorted.end());
    double value = 1.0;
    for (int a : sorted) {
        if (a < 0) throw InvalidInput("negative multi-index entry");
        if (a % 2 != 0) return 0.0;
        // E[x^a] = sigma^a (a-1)!! for even a
        double moment = 1.0;
        for (int i = a - 1; i >= 1; i -= 2) moment *= i;
        value *= moment * std::pow(sigma2, a / 2.0);
    }
    return value;
}

UniformCubeMeasure::UniformCubeMeasure(int m, double half_width) : m_(m), a_(half_width) {
    if (m < 1) throw InvalidInput("cube dimension must be at least 1");
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
        throw InvalidInput("cube half-width must be positive and finite");
    }
}

double UniformCubeMeasure::density(const Eigen::VectorXd& x) const {
    if (x.size() != m_) throw InvalidInput("point dimension mismatch in density");
    for (int i = 0; i < m_; ++i) {
        if (std::abs(x[i]) > a_) return 0.0;
    }
    return std::pow(2.0 * a_, -m_);
}

double UniformCubeMeasure::polynomial_integral(const MultiIndex& alpha) const {
    if (static_cast<int>(alpha.size()) != m_) throw InvalidInput("multi-index dimension mismatch");
    MultiIndex sorted = alpha;
    std::sort(sorted.begin(), sorted.end());
    double value = 1.0;
    for (int a : sorted) {
        if (a < 0) throw InvalidInput("negative multi-index entry");
        if (a % 2 != 0) return 0.0;
        value *= std::pow(a_, a) / (a + 1.0);
    }
    return value;
}

double UniformSphereMeasure::density(const Eigen::VectorXd& x) const {
    if (x.size() != 3) throw InvalidInput("sphere measure lives on S^2 in R^3");
    if (std::abs(x.norm() - 1.0) > 1e-9) {
        throw InvalidInput("point is not on the unit sphere");
    }
    return 1.0 / (4.0 * std::numbers::pi);
}

TransformedIntegrand::TransformedIntegrand(ScalarFunction f, std::shared_ptr<const Measure> nu,
                                           std::shared_ptr<const Measure> nu_star)
    : f_(std::move(f)), nu_(std::move(nu)), nu_star_(std::move(nu_star)) {
    if (nu_->dimension() != nu_star_->dimension()) {
        throw InvalidInput("change of measure: dimension mismatch between measures");
    }
}

double TransformedIntegrand::operator()(const Eigen::VectorXd& x) const {
    // Ratio formed in log space; a single exponentiation avoids Gaussian
    // tail under/overflow in moderate dimensions.
    const double log_num = nu_->log_density(x);
    const double log_den = nu_star_->log_density(x);
    if (!std::isfinite(log_den)) {
        if (std::isfinite(log_num)) {
            throw PreconditionError(
                "absolute-continuity violation: reference density vanishes where the target "
                "density is positive");
        }
        return 0.0;
    }
    return f_(x) * std::exp(log_num - log_den);
}

TransformedIntegrand change_of_measure(ScalarFunction f, std::shared_ptr<const Measure> nu,
                                       std::shared_ptr<const Measure> nu_star) {
    if (!nu_star->fully_symmetric()) {
        throw PreconditionError("change_of_measure: the reference measure must be fully symmetric");
    }
    return TransformedIntegrand(std::move(f), std::move(nu), std::move(nu_star));
}

}  // namespace symcub
