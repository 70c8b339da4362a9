#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "symcub/bc.hpp"
#include "symcub/errors.hpp"
#include "symcub/linalg.hpp"

using namespace symcub;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> entries) {
    Eigen::VectorXd v(static_cast<long>(entries.size()));
    int i = 0;
    for (double e : entries) v[i++] = e;
    return v;
}

SymmetricPointSet random_design(int m, int blocks, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> entry(0.3, 1.8);
    for (;;) {
        std::vector<Eigen::VectorXd> raw;
        for (int j = 0; j < blocks; ++j) {
            Eigen::VectorXd g(m);
            for (int i = 0; i < m; ++i) g[i] = entry(rng);
            raw.push_back(g);
        }
        try {
            return build_point_set_raw(raw);
        } catch (const InvalidInput&) {
        }
    }
}

}  // namespace

TEST_CASE("single point at the origin has the hand-solved posterior") {
    for (int m : {1, 2, 3}) {
        const GaussianKernel k(1.4);
        const GaussianMeasure nu = GaussianMeasure::standard(m);
        const double c = 0.8;
        Eigen::VectorXd f(1);
        f[0] = c;
        const CubatureResult r = bc_naive({Eigen::VectorXd::Zero(m)}, k, nu, f);
        const double l2 = 1.4 * 1.4;
        CHECK(r.posterior_mean ==
              doctest::Approx(c * std::pow(l2 / (l2 + 1.0), m / 2.0)).epsilon(1e-12));
        CHECK(r.posterior_variance >= 0.0);
        CHECK(r.posterior_variance <= k.initial_error(nu) + 1e-12);
    }
}

TEST_CASE("zero data gives a zero posterior mean and a valid variance") {
    const GaussianKernel k(1.0);
    const GaussianMeasure nu = GaussianMeasure::standard(2);
    const SymmetricPointSet design = build_point_set_raw({vec({1.0, 0.4})});
    const Eigen::VectorXd f = Eigen::VectorXd::Zero(static_cast<long>(design.total_size()));
    const CubatureResult r = bc_naive(design.points, k, nu, f);
    CHECK(r.posterior_mean == doctest::Approx(0.0));
    CHECK(r.posterior_variance >= 0.0);
    CHECK(r.posterior_variance <= k.initial_error(nu) + 1e-12);
}

TEST_CASE("interpolating a kernel translate reproduces its mean") {
    const GaussianKernel k(0.9);
    const GaussianMeasure nu = GaussianMeasure::standard(2);
    const Eigen::VectorXd x1 = vec({0.7, -0.2});
    Eigen::VectorXd f(1);
    f[0] = k.eval(x1, x1);
    const CubatureResult r = bc_naive({x1}, k, nu, f);
    CHECK(r.posterior_mean == doctest::Approx(k.mean(nu, x1)).epsilon(1e-12));
}

TEST_CASE("bc_naive rejects duplicate points") {
    const GaussianKernel k(1.0);
    const GaussianMeasure nu = GaussianMeasure::standard(2);
    const Eigen::VectorXd x = vec({0.5, 0.5});
    CHECK_THROWS_AS(bc_naive({x, x}, k, nu, vec({1, 1})), InvalidInput);
}

TEST_CASE("build_S structure") {
    const GaussianKernel k(1.2);

    const SymmetricPointSet origin = build_point_set_raw({vec({0.0, 0.0})});
    const Eigen::MatrixXd s0 = build_S(origin, k);
    CHECK(s0.rows() == 1);
    CHECK(s0(0, 0) == doctest::Approx(1.0));

    std::mt19937_64 rng(19);
    const SymmetricPointSet design = random_design(2, 3, rng);
    const Eigen::MatrixXd S = build_S(design, k);
    const Eigen::MatrixXd K = kernel_matrix(design.points, k);

    // S_ij equals a representative row of K summed over block-j columns
    std::vector<std::size_t> offsets(design.block_count() + 1, 0);
    for (std::size_t j = 0; j < design.block_count(); ++j) {
        offsets[j + 1] = offsets[j] + design.block_sizes[j];
    }
    for (std::size_t i = 0; i < design.block_count(); ++i) {
        for (std::size_t rep = offsets[i]; rep < offsets[i + 1]; ++rep) {
            for (std::size_t j = 0; j < design.block_count(); ++j) {
                double sum = 0.0;
                for (std::size_t c = offsets[j]; c < offsets[j + 1]; ++c) {
                    sum += K(static_cast<long>(rep), static_cast<long>(c));
                }
                CHECK(S(static_cast<long>(i), static_cast<long>(j)) ==
                      doctest::Approx(sum).epsilon(1e-12));
            }
        }
    }

    // equal block sizes make S symmetric
    bool equal_sizes = true;
    for (std::size_t j = 1; j < design.block_count(); ++j) {
        equal_sizes = equal_sizes && design.block_sizes[j] == design.block_sizes[0];
    }
    if (equal_sizes) {
        CHECK((S - S.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("single-block fast path is the scalar solve") {
    const GaussianKernel k(1.1);
    const GaussianMeasure nu = GaussianMeasure::standard(2);
    const SymmetricPointSet design = build_point_set_raw({vec({0.9, 0.3})});
    Eigen::VectorXd f(static_cast<long>(design.total_size()));
    for (long i = 0; i < f.size(); ++i) f[i] = static_cast<double>(i + 1);

    const CubatureResult r = bc_fss(design, k, nu, f);
    double denom = 0.0;
    for (const auto& x : design.points) denom += k.eval(design.blocks[0].generator.lambda, x);
    const double w = k.mean(nu, design.blocks[0].generator.lambda) / denom;
    CHECK(r.block_weights[0] == doctest::Approx(w).epsilon(1e-12));
    CHECK(r.posterior_mean == doctest::Approx(w * f.sum()).epsilon(1e-12));
}

TEST_CASE("odd integrands integrate to zero on symmetric designs") {
    const GaussianKernel k(1.0);
    const GaussianMeasure nu = GaussianMeasure::standard(2);
    std::mt19937_64 rng(29);
    const SymmetricPointSet design = random_design(2, 2, rng);
    Eigen::VectorXd f(static_cast<long>(design.total_size()));
    for (std::size_t i = 0; i < design.total_size(); ++i) {
        const auto& x = design.points[i];
        f[static_cast<long>(i)] = x[0] * x[0] * x[0] + 2.0 * x[1];
    }
    const CubatureResult r = bc_fss(design, k, nu, f);
    CHECK(std::abs(r.posterior_mean) <= 1e-12);
}

TEST_CASE("fast path matches the naive path and expanded weights agree") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> ell(0.5, 1.5);
    std::uniform_int_distribution<int> dims(2, 3);
    std::uniform_int_distribution<int> blocks(1, 4);
    std::normal_distribution<double> normal;
    for (int t = 0; t < 12; ++t) {
        const int m = dims(rng);
        const SymmetricPointSet design = random_design(m, blocks(rng), rng);
        const GaussianKernel k(ell(rng));
        if (condition_2norm(kernel_matrix(design.points, k)) > 1e6) continue;
        const GaussianMeasure nu = GaussianMeasure::standard(m);
        Eigen::VectorXd a(m);
        for (int i = 0; i < m; ++i) a[i] = 0.5 * normal(rng);
        Eigen::VectorXd f(static_cast<long>(design.total_size()));
        for (std::size_t i = 0; i < design.total_size(); ++i) {
            f[static_cast<long>(i)] = std::exp(a.dot(design.points[i]));
        }

        const CubatureResult naive = bc_naive(design.points, k, nu, f);
        const CubatureResult fast = bc_fss(design, k, nu, f);
        CHECK(std::abs(fast.posterior_mean - naive.posterior_mean) <=
              1e-8 * (1.0 + std::abs(naive.posterior_mean)));
        CHECK(std::abs(fast.posterior_variance - naive.posterior_variance) <=
              1e-8 * (1.0 + naive.posterior_variance));
        const Eigen::VectorXd expanded = expand_block_weights(design, fast.block_weights);
        CHECK((expanded - naive.point_weights).cwiseAbs().maxCoeff() <= 1e-8);
    }
}

TEST_CASE("appending a block weakly decreases the posterior variance") {
    const GaussianKernel k(1.0);
    const GaussianMeasure nu = GaussianMeasure::standard(2);
    const std::vector<Eigen::VectorXd> generators = {vec({1.0, 0.3}), vec({0.4, 0.4}),
                                                     vec({1.6, 0.9})};
    double previous = k.initial_error(nu);
    for (std::size_t j = 1; j <= generators.size(); ++j) {
        const SymmetricPointSet design = build_point_set_raw(
            std::vector<Eigen::VectorXd>(generators.begin(), generators.begin() + j));
        const Eigen::VectorXd f = Eigen::VectorXd::Zero(static_cast<long>(design.total_size()));
        const CubatureResult r = bc_fss(design, k, nu, f);
        CHECK(r.posterior_variance <= previous + 1e-10);
        previous = r.posterior_variance;
    }
}

TEST_CASE("threaded kernel matrix assembly is bit-identical to serial") {
    std::mt19937_64 rng(41);
    const SymmetricPointSet design = random_design(3, 3, rng);
    const GaussianKernel k(0.8);
    const Eigen::MatrixXd serial = kernel_matrix(design.points, k, 1);
    const Eigen::MatrixXd threaded = kernel_matrix(design.points, k, 4);
    CHECK(serial == threaded);
}

TEST_CASE("fast path requires symmetric kernel and measure") {
    const SymmetricPointSet design = build_point_set_raw({vec({1.0, 0.5})});
    const Eigen::VectorXd f = Eigen::VectorXd::Ones(static_cast<long>(design.total_size()));
    const GaussianKernel k(1.0);
    const GaussianMeasure shifted(vec({1, 0}), Eigen::MatrixXd::Identity(2, 2));
    CHECK_THROWS_AS(bc_fss(design, k, shifted, f), PreconditionError);
}
