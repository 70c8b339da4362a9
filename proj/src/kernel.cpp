#include "symcub/kernel.hpp"

#include <cmath>
#include <random>

#include "symcub/errors.hpp"
#include "symcub/util.hpp"

namespace symcub {

namespace {

// Squared distance accumulated left to right; fixed order keeps kernel
// evaluations bit-reproducible.
double squared_distance(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    if (x.size() != y.size()) throw InvalidInput("kernel arguments have mismatched dimensions");
    double s = 0.0;
    for (int i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        s += d * d;
    }
    return s;
}

[[noreturn]] void unsupported_pair(const std::string& kernel, const Measure& nu) {
    throw NotImplementedError("no closed-form kernel mean for the pair (kernel '" + kernel +
                              "', measure '" + nu.name() + "')");
}

}  // namespace

GaussianKernel::GaussianKernel(double length_scale) : length_scale_(length_scale) {
    if (!(length_scale > 0.0) || !std::isfinite(length_scale)) {
        throw InvalidInput("Gaussian kernel length-scale must be positive and finite");
    }
}

double GaussianKernel::eval(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    return std::exp(-squared_distance(x, y) / (2.0 * length_scale_ * length_scale_));
}

double GaussianKernel::mean(const Measure& nu, const Eigen::VectorXd& x) const {
    const auto* gauss = dynamic_cast<const GaussianMeasure*>(&nu);
    if (gauss == nullptr || !gauss->isotropic_centred()) unsupported_pair(name(), nu);
    // Product of 1-D Gaussian convolution integrals:
    //   k_nu(x) = (l^2/(l^2+s^2))^(m/2) exp(-||x||^2 / (2(l^2+s^2)))
    const double l2 = length_scale_ * length_scale_;
    const double s2 = gauss->isotropic_variance();
    const double m = static_cast<double>(nu.dimension());
    return std::pow(l2 / (l2 + s2), m / 2.0) * std::exp(-x.squaredNorm() / (2.0 * (l2 + s2)));
}

double GaussianKernel::initial_error(const Measure& nu) const {
    const auto* gauss = dynamic_cast<const GaussianMeasure*>(&nu);
    if (gauss == nullptr || !gauss->isotropic_centred()) unsupported_pair(name(), nu);
    const double l2 = length_scale_ * length_scale_;
    const double s2 = gauss->isotropic_variance();
    const double m = static_cast<double>(nu.dimension());
    return std::pow(l2 / (l2 + 2.0 * s2), m / 2.0);
}

double SphereChordKernel::eval(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    return 8.0 / 3.0 - std::sqrt(squared_distance(x, y));
}

double SphereChordKernel::mean(const Measure& nu, const Eigen::VectorXd&) const {
    if (dynamic_cast<const UniformSphereMeasure*>(&nu) == nullptr) unsupported_pair(name(), nu);
    return 4.0 / 3.0;
}

double SphereChordKernel::initial_error(const Measure& nu) const {
    if (dynamic_cast<const UniformSphereMeasure*>(&nu) == nullptr) unsupported_pair(name(), nu);
    return 4.0 / 3.0;
}

bool verify_full_symmetry(const Kernel& k, int dim, int trials, std::uint64_t seed,
                          bool on_sphere) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto draw = [&]() {
        Eigen::VectorXd x(dim);
        for (int i = 0; i < dim; ++i) x[i] = normal(rng);
        if (on_sphere) x.normalize();
        return x;
    };
    for (int t = 0; t < trials; ++t) {
        const Eigen::VectorXd x = draw();
        const Eigen::VectorXd y = draw();
        const SignedPermutation p = random_signed_permutation(dim, rng);
        if (std::abs(k.eval(p.apply(x), p.apply(y)) - k.eval(x, y)) > 1e-12) return false;
    }
    return true;
}

}  // namespace symcub
