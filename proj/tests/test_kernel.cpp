#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "symcub/errors.hpp"
#include "symcub/fss.hpp"
#include "symcub/kernel.hpp"
#include "symcub/measure.hpp"
#include "symcub/sparse_grid.hpp"

using namespace symcub;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> entries) {
    Eigen::VectorXd v(static_cast<long>(entries.size()));
    int i = 0;
    for (double e : entries) v[i++] = e;
    return v;
}

// Tensor Gauss-Hermite oracle for int g(y) dN(0, I_2)(y).
double gh2_oracle(const std::function<double(const Eigen::VectorXd&)>& g, int nodes = 40) {
    const GaussHermiteRule rule = gauss_hermite(nodes);
    double sum = 0.0;
    Eigen::VectorXd y(2);
    for (int i = 0; i < nodes; ++i) {
        for (int j = 0; j < nodes; ++j) {
            y[0] = rule.nodes[i];
            y[1] = rule.nodes[j];
            sum += rule.weights[i] * rule.weights[j] * g(y);
        }
    }
    return sum;
}

Eigen::VectorXd random_unit3(std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Eigen::VectorXd v(3);
    do {
        for (int i = 0; i < 3; ++i) v[i] = normal(rng);
    } while (v.norm() < 1e-6);
    return v / v.norm();
}

class AnisotropicKernel final : public Kernel {
public:
    double eval(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const override {
        return std::exp(-(x[0] - y[0]) * (x[0] - y[0]));
    }
    double mean(const Measure&, const Eigen::VectorXd&) const override { return 0.0; }
    double initial_error(const Measure&) const override { return 0.0; }
    bool fully_symmetric() const override { return false; }
    std::string name() const override { return "anisotropic_test"; }
};

}  // namespace

TEST_CASE("Gaussian kernel pointwise values") {
    const GaussianKernel k(1.0);
    CHECK(k.eval(vec({0.3, -0.7}), vec({0.3, -0.7})) == doctest::Approx(1.0));
    CHECK(k.eval(vec({1, 0}), vec({0, 1})) == doctest::Approx(std::exp(-1.0)));  // dist^2 = 2
    const GaussianKernel wide(2.0);
    CHECK(wide.eval(vec({2, 0}), vec({0, 0})) == doctest::Approx(std::exp(-0.5)));
    CHECK_THROWS_AS(GaussianKernel(0.0), InvalidInput);
}

TEST_CASE("sphere chord kernel pointwise values") {
    const SphereChordKernel c;
    CHECK(c.eval(vec({0, 0, 1}), vec({0, 0, 1})) == doctest::Approx(8.0 / 3.0));
    CHECK(c.eval(vec({0, 0, 1}), vec({0, 0, -1})) == doctest::Approx(2.0 / 3.0));  // antipodal
}

TEST_CASE("Gaussian kernel mean closed form") {
    const GaussianMeasure nu = GaussianMeasure::standard(2);
    for (double ell : {0.7, 1.0, 2.4}) {
        const GaussianKernel k(ell);
        const double at_zero = std::pow(ell * ell / (ell * ell + 1.0), 1.0);  // m/2 = 1
        CHECK(k.mean(nu, vec({0, 0})) == doctest::Approx(at_zero).epsilon(1e-12));

        // quadrature oracle at generic points, relative 1e-6
        for (const auto& x : {vec({0.4, -1.2}), vec({2.0, 0.3})}) {
            const double oracle = gh2_oracle([&](const Eigen::VectorXd& y) { return k.eval(x, y); });
            CHECK(k.mean(nu, x) == doctest::Approx(oracle).epsilon(1e-6));
        }
    }
    const GaussianKernel huge(1e8);
    CHECK(huge.mean(nu, vec({1.0, 2.0})) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("Gaussian initial error closed form") {
    const GaussianMeasure nu = GaussianMeasure::standard(2);
    for (double ell : {0.7, 1.3}) {
        const GaussianKernel k(ell);
        CHECK(k.initial_error(nu) ==
              doctest::Approx(ell * ell / (ell * ell + 2.0)).epsilon(1e-12));
        const double oracle =
            gh2_oracle([&](const Eigen::VectorXd& y) { return k.mean(nu, y); });
        CHECK(k.initial_error(nu) == doctest::Approx(oracle).epsilon(1e-6));
        CHECK(k.initial_error(nu) >= 0.0);
    }

    // scaled measure N(0, sigma2 I)
    const double sigma2 = 1.7;
    const GaussianMeasure scaled = GaussianMeasure::standard(3, sigma2);
    const GaussianKernel k(0.9);
    const double ell2 = 0.81;
    CHECK(k.initial_error(scaled) ==
          doctest::Approx(std::pow(ell2 / (ell2 + 2.0 * sigma2), 1.5)).epsilon(1e-12));
}

TEST_CASE("sphere chord kernel means are the exact constants") {
    const UniformSphereMeasure sphere;
    const SphereChordKernel c;
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        CHECK(c.mean(sphere, random_unit3(rng)) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    }
    CHECK(c.initial_error(sphere) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("unsupported kernel-measure pairs are rejected by name") {
    const GaussianKernel k(1.0);
    const UniformSphereMeasure sphere;
    CHECK_THROWS_AS(k.mean(sphere, vec({0, 0, 1})), NotImplementedError);

    const GaussianMeasure shifted(vec({1, 0}), Eigen::MatrixXd::Identity(2, 2));
    CHECK_THROWS_AS(k.mean(shifted, vec({0, 0})), NotImplementedError);

    const SphereChordKernel c;
    const GaussianMeasure normal = GaussianMeasure::standard(3);
    CHECK_THROWS_AS(c.mean(normal, vec({0, 0, 1})), NotImplementedError);
}

TEST_CASE("full symmetry certification") {
    CHECK(verify_full_symmetry(GaussianKernel(1.2), 3, 200, 42));
    CHECK(verify_full_symmetry(SphereChordKernel(), 3, 200, 42, true));
    CHECK_FALSE(verify_full_symmetry(AnisotropicKernel(), 2, 200, 42));
}

TEST_CASE("kernel mean is constant on fully symmetric sets") {
    const GaussianMeasure nu = GaussianMeasure::standard(3);
    const GaussianKernel k(1.1);
    const FullySymmetricSet orbit = expand_full(canonicalize(vec({1.2, 0.4, 0.4})));
    const double at_generator = k.mean(nu, orbit.generator.lambda);
    for (const auto& x : orbit.points) {
        CHECK(std::abs(k.mean(nu, x) - at_generator) <= 1e-12);
    }

    const UniformSphereMeasure sphere;
    const SphereChordKernel c;
    std::mt19937_64 rng(9);
    const Eigen::VectorXd u = random_unit3(rng);
    const FullySymmetricSet sphere_orbit = expand_full(canonicalize(u));
    for (const auto& x : sphere_orbit.points) {
        CHECK(std::abs(c.mean(sphere, x) - c.mean(sphere, u)) <= 1e-12);
    }
}
