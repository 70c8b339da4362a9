#include "symcub/bc.hpp"

#include <cmath>
#include <iostream>
#include <set>
#include <thread>

#include "symcub/errors.hpp"
#include "symcub/linalg.hpp"
#include "symcub/util.hpp"

namespace symcub {

namespace {

constexpr double kVarianceTol = 1e-8;

double clamp_variance(double var, double initial_error) {
    if (var < 0.0) {
        if (var < -kVarianceTol) {
            std::cerr << "[symcub] warning: posterior variance " << var
                      << " clamped to 0 (exceeds numeric tolerance)\n";
        }
        var = 0.0;
    }
    if (var > initial_error + kVarianceTol) {
        std::cerr << "[symcub] warning: posterior variance " << var
                  << " exceeds the prior variance " << initial_error << "\n";
    }
    return var;
}

void require_symmetric_setup(const Kernel& k, const Measure& nu) {
    if (!k.fully_symmetric()) {
        throw PreconditionError("fast path requires a fully symmetric kernel; '" + k.name() +
                                "' is not certified symmetric");
    }
    if (!nu.fully_symmetric()) {
        throw PreconditionError("fast path requires a fully symmetric measure; '" + nu.name() +
                                "' is not (use change_of_measure with a symmetric reference)");
    }
}

}  // namespace

Eigen::VectorXd evaluate_integrand(const std::vector<Eigen::VectorXd>& points,
                                   const ScalarFunction& f) {
    Eigen::VectorXd values(static_cast<Eigen::Index>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) values[static_cast<Eigen::Index>(i)] = f(points[i]);
    return values;
}

Eigen::MatrixXd kernel_matrix(const std::vector<Eigen::VectorXd>& points, const Kernel& k,
                              int threads) {
    const Eigen::Index n = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd K(n, n);
    const auto fill_rows = [&](Eigen::Index begin, Eigen::Index end) {
        for (Eigen::Index i = begin; i < end; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) K(i, j) = k.eval(points[i], points[j]);
        }
    };
    if (threads <= 1 || n < 64) {
        fill_rows(0, n);
    } else {
        std::vector<std::thread> pool;
        const Eigen::Index chunk = (n + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const Eigen::Index begin = t * chunk;
            const Eigen::Index end = std::min(n, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(fill_rows, begin, end);
        }
        for (auto& th : pool) th.join();
    }
    return K;
}

CubatureResult bc_naive(const std::vector<Eigen::VectorXd>& points, const Kernel& k,
                        const Measure& nu, const Eigen::VectorXd& f_values,
                        const PriorMean* prior_mean, const BcOptions& options) {
    const Eigen::Index n = static_cast<Eigen::Index>(points.size());
    if (n == 0) throw InvalidInput("bc_naive: empty point set");
    if (f_values.size() != n) {
        throw InvalidInput("bc_naive: f_values length does not match the point count");
    }
    {
        std::set<std::vector<double>> unique;
        for (const auto& x : points) {
            if (!unique.insert(std::vector<double>(x.data(), x.data() + x.size())).second) {
                throw InvalidInput("bc_naive: duplicate points in the design");
            }
        }
    }

    const Eigen::MatrixXd K = kernel_matrix(points, k, options.threads);
    Eigen::VectorXd k_nu(n);
    for (Eigen::Index i = 0; i < n; ++i) k_nu[i] = k.mean(nu, points[i]);

    const SpdSolver solver(K, options.jitter, "kernel matrix K_X");
    const Eigen::VectorXd weights = solver.solve(k_nu);

    Eigen::VectorXd residual = f_values;
    double mean_integral = 0.0;
    if (prior_mean != nullptr && prior_mean->eval) {
        for (Eigen::Index i = 0; i < n; ++i) residual[i] -= prior_mean->eval(points[i]);
        mean_integral = prior_mean->integral;
    }

    const double k_nunu = k.initial_error(nu);
    CubatureResult result;
    result.posterior_mean = mean_integral + weights.dot(residual);
    result.posterior_variance = clamp_variance(k_nunu - weights.dot(k_nu), k_nunu);
    result.point_weights = weights;
    result.diagnostics.system_dimension = n;
    result.diagnostics.condition_estimate = solver.condition_estimate();
    result.diagnostics.jitter_used = options.jitter;
    return result;
}

Eigen::MatrixXd build_S(const SymmetricPointSet& design, const Kernel& k) {
    if (!k.fully_symmetric()) {
        throw PreconditionError("build_S requires a fully symmetric kernel");
    }
    const Eigen::Index J = static_cast<Eigen::Index>(design.block_count());
    Eigen::MatrixXd S(J, J);
    for (Eigen::Index i = 0; i < J; ++i) {
        const Eigen::VectorXd& rep = design.blocks[i].generator.lambda;
        for (Eigen::Index j = 0; j < J; ++j) {
            const auto& block = design.blocks[j].points;
            S(i, j) = pairwise_sum(block.size(),
                                   [&](std::size_t p) { return k.eval(rep, block[p]); });
        }
    }
    return S;
}

CubatureResult bc_fss(const SymmetricPointSet& design, const Kernel& k, const Measure& nu,
                      const Eigen::VectorXd& f_values) {
    require_symmetric_setup(k, nu);
    const Eigen::Index J = static_cast<Eigen::Index>(design.block_count());
    if (J == 0) throw InvalidInput("bc_fss: empty design");
    if (f_values.size() != static_cast<Eigen::Index>(design.total_size())) {
        throw InvalidInput("bc_fss: f_values length does not match the design size");
    }

    const Eigen::MatrixXd S = build_S(design, k);
    Eigen::VectorXd k_nu_blocks(J);
    for (Eigen::Index j = 0; j < J; ++j) {
        k_nu_blocks[j] = k.mean(nu, design.blocks[j].generator.lambda);
    }

    const LuSolver solver(S);
    const Eigen::VectorXd w = solver.solve(k_nu_blocks);

    const Eigen::VectorXd f_block_sums = block_sums(design, f_values);
    const double k_nunu = k.initial_error(nu);

    double mean = 0.0;
    double variance_drop = 0.0;
    for (Eigen::Index j = 0; j < J; ++j) {
        mean += w[j] * f_block_sums[j];
        variance_drop += w[j] * k_nu_blocks[j] * static_cast<double>(design.block_sizes[j]);
    }

    CubatureResult result;
    result.posterior_mean = mean;
    result.posterior_variance = clamp_variance(k_nunu - variance_drop, k_nunu);
    result.block_weights = w;
    result.point_weights = expand_block_weights(design, w);
    result.diagnostics.system_dimension = J;
    result.diagnostics.condition_estimate = solver.condition_estimate();
    return result;
}

Eigen::VectorXd expand_block_weights(const SymmetricPointSet& design,
                                     const Eigen::VectorXd& block_weights) {
    Eigen::VectorXd flat(static_cast<Eigen::Index>(design.total_size()));
    Eigen::Index at = 0;
    for (std::size_t j = 0; j < design.block_count(); ++j) {
        for (std::size_t i = 0; i < design.block_sizes[j]; ++i) flat[at++] = block_weights[static_cast<Eigen::Index>(j)];
    }
    return flat;
}

Eigen::VectorXd block_sums(const SymmetricPointSet& design, const Eigen::VectorXd& flat_values) {
    Eigen::VectorXd sums(static_cast<Eigen::Index>(design.block_count()));
    Eigen::Index at = 0;
    for (std::size_t j = 0; j < design.block_count(); ++j) {
        const std::size_t nj = design.block_sizes[j];
        sums[static_cast<Eigen::Index>(j)] =
            pairwise_sum(std::span<const double>(flat_values.data() + at, nj));
        at += static_cast<Eigen::Index>(nj);
    }
    return sums;
}

}  // namespace symcub
