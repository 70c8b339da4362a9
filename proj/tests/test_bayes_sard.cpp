#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "symcub/bayes_sard.hpp"
#include "symcub/bc.hpp"
#include "symcub/errors.hpp"
#include "symcub/linalg.hpp"
#include "symcub/util.hpp"

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

Eigen::VectorXd eval_monomial(const std::vector<Eigen::VectorXd>& points,
                              const MultiIndex& alpha) {
    Eigen::VectorXd f(static_cast<long>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
        f[static_cast<long>(i)] = monomial(points[i], alpha);
    }
    return f;
}

}  // namespace

TEST_CASE("total-degree spaces enumerate the expected orbits") {
    const PolynomialSpace s1 = make_total_degree_space(2, 1);
    CHECK(s1.total_indices() == 3);
    CHECK(even_subspace(s1).total_indices() == 1);

    const PolynomialSpace s2 = make_total_degree_space(2, 2);
    CHECK(s2.total_indices() == 6);
    const PolynomialSpace e2 = even_subspace(s2);
    CHECK(e2.block_count() == 2);
    CHECK(e2.blocks[0].indices.size() + e2.blocks[1].indices.size() == 3);  // (0,0),(2,0),(0,2)
    CHECK(e2.all_even());

    CHECK(make_total_degree_space(3, 2).total_indices() == 10);  // binomial(5,2)
}

TEST_CASE("vandermonde columns are monomial evaluations") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> normal;
    std::vector<Eigen::VectorXd> points;
    for (int i = 0; i < 5; ++i) points.push_back(vec({normal(rng), normal(rng)}));
    const PolynomialSpace space = make_total_degree_space(2, 2);
    const Eigen::MatrixXd phi = vandermonde(points, space);
    CHECK(phi.rows() == 5);
    CHECK(phi.cols() == 6);

    const auto flat = space.flat_indices();
    CHECK(flat.front() == MultiIndex{0, 0});
    CHECK(phi.col(0) == Eigen::VectorXd::Ones(5));
    for (std::size_t j = 0; j < flat.size(); ++j) {
        for (int i = 0; i < 5; ++i) {
            CHECK(phi(i, static_cast<long>(j)) ==
                  doctest::Approx(monomial(points[i], flat[j])).epsilon(1e-14));
        }
    }

    // row at the origin is (1, 0, ..., 0) with the constant first
    const Eigen::MatrixXd origin_row = vandermonde({Eigen::VectorXd::Zero(2)}, space);
    CHECK(origin_row(0, 0) == doctest::Approx(1.0));
    CHECK(origin_row.rightCols(5).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("unisolvency detection") {
    const PolynomialSpace line = make_space_from_generators(1, {MultiIndex{0}, MultiIndex{1}});
    CHECK(check_unisolvency({vec({0.0}), vec({1.0})}, line).unisolvent);

    // points confined to the x2 = 0 line cannot resolve the x2 monomial
    const PolynomialSpace with_x2 =
        make_space_from_generators(2, {MultiIndex{0, 0}, MultiIndex{1, 0}});
    // make_space_from_generators closes under permutations, so (1,0) brings (0,1)
    const std::vector<Eigen::VectorXd> flat_line = {vec({-1, 0}), vec({0, 0}), vec({1, 0})};
    CHECK_FALSE(check_unisolvency(flat_line, with_x2).unisolvent);

    CHECK_THROWS_AS(check_unisolvency({vec({0.0})}, line.dimension == 1
                                                        ? make_total_degree_space(1, 3)
                                                        : line),
                    PreconditionError);
}

TEST_CASE("naive path is exact on the polynomial space") {
    const GaussianKernel k(1.0);
    const GaussianMeasure nu = GaussianMeasure::standard(2);
    std::mt19937_64 rng(11);
    const SymmetricPointSet design = random_design(2, 3, rng);
    const PolynomialSpace space = make_total_degree_space(2, 2);

    // f(x) = x1^2 is in the space; its Gaussian integral is 1
    const BayesSardResult r =
        bsc_naive(design.points, k, nu, space, eval_monomial(design.points, {2, 0}));
    CHECK(r.posterior_mean == doctest::Approx(1.0).epsilon(1e-8));

    // constants reproduce exactly and the rule is normalised
    Eigen::VectorXd c = Eigen::VectorXd::Constant(static_cast<long>(design.total_size()), 3.7);
    const BayesSardResult rc = bsc_naive(design.points, k, nu, space, c);
    CHECK(rc.posterior_mean == doctest::Approx(3.7).epsilon(1e-8));
    CHECK(rc.flat_kernel_weights.sum() == doctest::Approx(1.0).epsilon(1e-10));

    // every basis monomial integrates to its exact moment
    for (const auto& alpha : space.flat_indices()) {
        const BayesSardResult rm =
            bsc_naive(design.points, k, nu, space, eval_monomial(design.points, alpha));
        CHECK(std::abs(rm.posterior_mean - nu.polynomial_integral(alpha)) <= 1e-8);
    }
}

TEST_CASE("fast path matches the naive path on even spaces") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ell(0.8, 1.8);
    std::uniform_int_distribution<int> dims(2, 3);
    std::uniform_int_distribution<int> blocks(2, 4);
    std::normal_distribution<double> normal;
    int done = 0;
    while (done < 8) {
        const int m = dims(rng);
        const SymmetricPointSet design = random_design(m, blocks(rng), rng);
        const GaussianKernel k(ell(rng));
        if (condition_2norm(kernel_matrix(design.points, k)) > 1e6) continue;
        ++done;
        const GaussianMeasure nu = GaussianMeasure::standard(m);
        const PolynomialSpace even = even_subspace(make_total_degree_space(m, 2));

        Eigen::VectorXd a(m);
        for (int i = 0; i < m; ++i) a[i] = 0.4 * normal(rng);
        Eigen::VectorXd f(static_cast<long>(design.total_size()));
        for (std::size_t i = 0; i < design.total_size(); ++i) {
            f[static_cast<long>(i)] = std::exp(a.dot(design.points[i]));
        }

        const BayesSardResult naive = bsc_naive(design.points, k, nu, even, f);
        const BayesSardResult fast = bsc_fss(design, k, nu, even, f);
        CHECK(std::abs(fast.posterior_mean - naive.posterior_mean) <=
              1e-8 * (1.0 + std::abs(naive.posterior_mean)));
        CHECK(std::abs(fast.posterior_variance - naive.posterior_variance) <=
              1e-8 * (1.0 + naive.posterior_variance));
        CHECK((fast.flat_kernel_weights - naive.flat_kernel_weights).cwiseAbs().maxCoeff() <=
              1e-8);
    }
}

TEST_CASE("odd orbits carry vanishing multipliers on symmetric designs") {
    const GaussianKernel k(1.1);
    const GaussianMeasure nu = GaussianMeasure::standard(2);
    std::mt19937_64 rng(23);
    const SymmetricPointSet design = random_design(2, 3, rng);
    const PolynomialSpace full = make_total_degree_space(2, 2);  // includes odd orbits

    Eigen::VectorXd f(static_cast<long>(design.total_size()));
    for (std::size_t i = 0; i < design.total_size(); ++i) {
        f[static_cast<long>(i)] = std::cos(design.points[i][0]);
    }
    const BayesSardResult r = bsc_naive(design.points, k, nu, full, f);

    const auto flat = full.flat_indices();
    for (std::size_t j = 0; j < flat.size(); ++j) {
        int degree_parity_odd = 0;
        for (int a : flat[j]) degree_parity_odd += a % 2;
        if (degree_parity_odd > 0) {
            CHECK(std::abs(r.poly_weights[static_cast<long>(j)]) <= 1e-10);
        }
    }
}

TEST_CASE("fast path enforces polynomial exactness") {
    const GaussianKernel k(1.0);
    const GaussianMeasure nu = GaussianMeasure::standard(2);
    std::mt19937_64 rng(29);
    const SymmetricPointSet design = random_design(2, 3, rng);
    const PolynomialSpace space =
        make_space_from_generators(2, {MultiIndex{0, 0}, MultiIndex{2, 0}});

    Eigen::VectorXd f(static_cast<long>(design.total_size()));
    for (std::size_t i = 0; i < design.total_size(); ++i) {
        const auto& x = design.points[i];
        f[static_cast<long>(i)] = x[0] * x[0] + x[1] * x[1];
    }
    const BayesSardResult r = bsc_fss(design, k, nu, space, f);
    CHECK(r.posterior_mean == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("fast path rejects odd orbits") {
    const GaussianKernel k(1.0);
    const GaussianMeasure nu = GaussianMeasure::standard(2);
    std::mt19937_64 rng(31);
    const SymmetricPointSet design = random_design(2, 2, rng);
    const PolynomialSpace full = make_total_degree_space(2, 2);
    const Eigen::VectorXd f = Eigen::VectorXd::Ones(static_cast<long>(design.total_size()));
    CHECK_THROWS_AS(bsc_fss(design, k, nu, full, f), PreconditionError);
}

TEST_CASE("Bayes-Sard variance dominates the standard BC variance") {
    const GaussianKernel k(1.2);
    const GaussianMeasure nu = GaussianMeasure::standard(2);
    std::mt19937_64 rng(37);
    const SymmetricPointSet design = random_design(2, 3, rng);
    const Eigen::VectorXd f = Eigen::VectorXd::Ones(static_cast<long>(design.total_size()));
    const PolynomialSpace even = even_subspace(make_total_degree_space(2, 2));

    const CubatureResult bc = bc_fss(design, k, nu, f);
    const BayesSardResult bsc = bsc_fss(design, k, nu, even, f);
    CHECK(bsc.posterior_variance >= bc.posterior_variance - 1e-10);
}

TEST_CASE("orbit sum invariances used by the fast path") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> even_entry(0, 2);
    std::uniform_real_distribution<double> entry(0.3, 1.5);

    for (int t = 0; t < 30; ++t) {
        const int m = 3;
        MultiIndex alpha(m);
        for (auto& a : alpha) a = 2 * even_entry(rng);
        Eigen::VectorXd g(m);
        for (int i = 0; i < m; ++i) g[i] = entry(rng);
        const FullySymmetricSet orbit = expand_full(canonicalize(g));
        const auto index_orbit = expand_nonneg(alpha);

        // sum over the index orbit is constant over points of the point orbit
        const auto orbit_sum = [&](const Eigen::VectorXd& x) {
            double s = 0.0;
            for (const auto& beta : index_orbit.indices) s += monomial(x, beta);
            return s;
        };
        const double ref = orbit_sum(orbit.points.front());
        for (const auto& x : orbit.points) {
            CHECK(std::abs(orbit_sum(x) - ref) <= 1e-12 * (1.0 + std::abs(ref)));
        }

        // sum over the point orbit is constant over indices of the index orbit
        const auto point_sum = [&](const MultiIndex& beta) {
            double s = 0.0;
            for (const auto& x : orbit.points) s += monomial(x, beta);
            return s;
        };
        const double pref = point_sum(index_orbit.indices.front());
        for (const auto& beta : index_orbit.indices) {
            CHECK(std::abs(point_sum(beta) - pref) <= 1e-12 * (1.0 + std::abs(pref)));
        }
    }
}
