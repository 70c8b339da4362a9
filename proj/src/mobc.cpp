#include "symcub/mobc.hpp"

#include <cmath>
#include <random>

#include "symcub/errors.hpp"
#include "symcub/linalg.hpp"
#include "symcub/util.hpp"

namespace symcub {

namespace {

void validate_inputs(const MultiDesign& design, const SeparableMatrixKernel& kernel,
                     const std::vector<Eigen::VectorXd>& f_values) {
    const int D = design.outputs();
    if (kernel.outputs() != D) {
        throw InvalidInput("output-covariance matrix B does not match the number of designs");
    }
    if (static_cast<int>(f_values.size()) != D) {
        throw InvalidInput("one f_values vector per output is required");
    }
    for (int d = 0; d < D; ++d) {
        if (f_values[d].size() != static_cast<Eigen::Index>(design.designs[d].total_size())) {
            throw InvalidInput("f_values length mismatch for output " + std::to_string(d));
        }
    }
}

Eigen::MatrixXd symmetrize(Eigen::MatrixXd M) { return 0.5 * (M + M.transpose()); }

}  // namespace

SeparableMatrixKernel::SeparableMatrixKernel(Eigen::MatrixXd output_cov,
                                             std::shared_ptr<const Kernel> scalar)
    : B(std::move(output_cov)), c(std::move(scalar)) {
    if (B.rows() != B.cols() || B.rows() < 1) throw InvalidInput("B must be square");
    if (!B.isApprox(B.transpose())) throw InvalidInput("B must be symmetric");
    const Eigen::LLT<Eigen::MatrixXd> llt(B);
    if (llt.info() != Eigen::Success) throw InvalidInput("B must be positive definite");
    if (c == nullptr) throw InvalidInput("scalar kernel must be provided");
}

MultiDesign make_multi_design(std::vector<SymmetricPointSet> designs) {
    if (designs.empty()) throw InvalidInput("at least one design is required");
    const auto& first = designs.front();
    for (const SymmetricPointSet& d : designs) {
        if (d.dimension() != first.dimension()) {
            throw InvalidInput("designs have mismatched dimensions");
        }
        if (d.block_count() != first.block_count() || d.block_sizes != first.block_sizes) {
            throw InvalidInput(
                "designs must share the block count J and the block-size vector (n_1..n_J)");
        }
    }
    return MultiDesign{std::move(designs)};
}

MultiOutputResult mobc_naive(const MultiDesign& design, const SeparableMatrixKernel& kernel,
                             const Measure& nu, const std::vector<Eigen::VectorXd>& f_values) {
    validate_inputs(design, kernel, f_values);
    const int D = design.outputs();
    const Eigen::Index N = static_cast<Eigen::Index>(design.points_per_output());
    const Kernel& c = *kernel.c;
    long evals = 0;

    Eigen::MatrixXd K(D * N, D * N);
    for (int d = 0; d < D; ++d) {
        for (int q = 0; q < D; ++q) {
            const auto& Xd = design.designs[d].points;
            const auto& Xq = design.designs[q].points;
            for (Eigen::Index i = 0; i < N; ++i) {
                for (Eigen::Index j = 0; j < N; ++j) {
                    K(d * N + i, q * N + j) = kernel.B(d, q) * c.eval(Xd[i], Xq[j]);
                    ++evals;
                }
            }
        }
    }

    Eigen::MatrixXd k_nu(D * N, D);
    for (int d = 0; d < D; ++d) {
        const auto& Xd = design.designs[d].points;
        Eigen::VectorXd c_nu(N);
        for (Eigen::Index i = 0; i < N; ++i) c_nu[i] = c.mean(nu, Xd[i]);
        for (int q = 0; q < D; ++q) k_nu.block(d * N, q, N, 1) = kernel.B(d, q) * c_nu;
    }

    const SpdSolver solver(K, 0.0, "multi-output kernel matrix");
    const Eigen::MatrixXd W = solver.solve(k_nu);

    Eigen::VectorXd f_flat(D * N);
    for (int d = 0; d < D; ++d) f_flat.segment(d * N, N) = f_values[d];

    MultiOutputResult result;
    result.posterior_mean = W.transpose() * f_flat;
    result.posterior_covariance =
        symmetrize(kernel.B * c.initial_error(nu) - k_nu.transpose() * W);
    result.flat_weights = W;
    result.diagnostics.system_dimension = D * N;
    result.diagnostics.condition_estimate = solver.condition_estimate();
    result.kernel_evaluations = evals;
    return result;
}

MultiOutputResult mobc_fss(const MultiDesign& design, const SeparableMatrixKernel& kernel,
                           const Measure& nu, const std::vector<Eigen::VectorXd>& f_values) {
    validate_inputs(design, kernel, f_values);
    const Kernel& c = *kernel.c;
    if (!c.fully_symmetric() || !nu.fully_symmetric()) {
        throw PreconditionError("mobc_fss requires a fully symmetric scalar kernel and measure");
    }
    const int D = design.outputs();
    const Eigen::Index J = static_cast<Eigen::Index>(design.block_count());
    long evals = 0;

    // [S_dq]_ij = sum over x in block (q,j) of c(lambda^(d,i), x)
    Eigen::MatrixXd S(D * J, D * J);
    for (int d = 0; d < D; ++d) {
        for (int q = 0; q < D; ++q) {
            for (Eigen::Index i = 0; i < J; ++i) {
                const Eigen::VectorXd& rep = design.designs[d].blocks[i].generator.lambda;
                for (Eigen::Index j = 0; j < J; ++j) {
                    const auto& block = design.designs[q].blocks[j].points;
                    const double sum = pairwise_sum(
                        block.size(), [&](std::size_t p) { return c.eval(rep, block[p]); });
                    evals += static_cast<long>(block.size());
                    S(d * J + i, q * J + j) = kernel.B(d, q) * sum;
                }
            }
        }
    }

    // c_nu is constant on each block; evaluated at the generators.
    Eigen::MatrixXd c_nu_blocks(J, D);  // column d: c_nu(lambda^(d,j))
    for (int d = 0; d < D; ++d) {
        for (Eigen::Index j = 0; j < J; ++j) {
            c_nu_blocks(j, d) = c.mean(nu, design.designs[d].blocks[j].generator.lambda);
        }
    }
    Eigen::MatrixXd k_nu(D * J, D);
    for (int d = 0; d < D; ++d) {
        for (int q = 0; q < D; ++q) {
            k_nu.block(d * J, q, J, 1) = kernel.B(d, q) * c_nu_blocks.col(d);
        }
    }

    const LuSolver solver(S);
    const Eigen::MatrixXd W = solver.solve(k_nu);  // DJ x D

    // Posterior mean: block sums of the data contracted with block weights.
    Eigen::MatrixXd f_block_sums(J, D);
    for (int d = 0; d < D; ++d) f_block_sums.col(d) = block_sums(design.designs[d], f_values[d]);

    Eigen::VectorXd mean = Eigen::VectorXd::Zero(D);
    for (int d = 0; d < D; ++d) {
        for (int q = 0; q < D; ++q) {
            for (Eigen::Index j = 0; j < J; ++j) {
                mean[d] += W(q * J + j, d) * f_block_sums(j, q);
            }
        }
    }

    // Covariance contraction derived from the expanded identity
    //   Sigma_N = B c_{nu,nu} - k_{nu,X}^T W_X,
    // written in block-compressed form:
    //   [k^T W]_{d',d''} = sum_{d,j} B_{d,d'} c_nu(lambda^(d,j)) n_j [W_d]_{j,d''}.
    const std::vector<std::size_t>& n = design.designs.front().block_sizes;
    Eigen::MatrixXd contraction = Eigen::MatrixXd::Zero(D, D);
    for (int dp = 0; dp < D; ++dp) {
        for (int dpp = 0; dpp < D; ++dpp) {
            double s = 0.0;
            for (int d = 0; d < D; ++d) {
                for (Eigen::Index j = 0; j < J; ++j) {
                    s += kernel.B(d, dp) * c_nu_blocks(j, d) * static_cast<double>(n[j]) *
                         W(d * J + j, dpp);
                }
            }
            contraction(dp, dpp) = s;
        }
    }

    MultiOutputResult result;
    result.posterior_mean = mean;
    result.posterior_covariance = symmetrize(kernel.B * c.initial_error(nu) - contraction);
    result.block_weights = W;

    // Expanded DN x D weights: every point in block (d,j) carries W(dJ+j, :).
    const Eigen::Index N = static_cast<Eigen::Index>(design.points_per_output());
    result.flat_weights.resize(D * N, D);
    for (int d = 0; d < D; ++d) {
        Eigen::Index at = d * N;
        for (Eigen::Index j = 0; j < J; ++j) {
            for (std::size_t p = 0; p < n[j]; ++p) {
                result.flat_weights.row(at++) = W.row(d * J + j);
            }
        }
    }

    result.diagnostics.system_dimension = D * J;
    result.diagnostics.condition_estimate = solver.condition_estimate();
    result.kernel_evaluations = evals;
    return result;
}

MultiDesign make_sphere_design(int outputs, int generators_per_output, std::uint64_t seed) {
    if (outputs < 1) throw InvalidInput("at least one output is required");
    if (generators_per_output < 1) throw InvalidInput("at least one generator per output");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    std::vector<SymmetricPointSet> designs;
    designs.reserve(static_cast<std::size_t>(outputs));
    for (int d = 0; d < outputs; ++d) {
        std::vector<Eigen::VectorXd> generators;
        while (static_cast<int>(generators.size()) < generators_per_output) {
            Eigen::VectorXd g(3);
            for (int i = 0; i < 3; ++i) g[i] = normal(rng);
            const double norm = g.norm();
            if (norm < 1e-12) continue;  // degenerate draw, retry
            g /= norm;
            // Coordinates must stay distinct and non-zero for the 48-point
            // orbit; retry on the (measure-zero) failure cases.
            const Eigen::VectorXd a = g.cwiseAbs();
            if (a.minCoeff() < 1e-12 || std::abs(a[0] - a[1]) < 1e-12 ||
                std::abs(a[0] - a[2]) < 1e-12 || std::abs(a[1] - a[2]) < 1e-12) {
                continue;
            }
            generators.push_back(g);
        }
        designs.push_back(build_point_set_raw(generators));
    }
    return make_multi_design(std::move(designs));
}

}  // namespace symcub
