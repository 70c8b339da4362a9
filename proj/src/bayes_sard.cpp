#include "symcub/bayes_sard.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>

#include "symcub/errors.hpp"
#include "symcub/linalg.hpp"
#include "symcub/util.hpp"

namespace symcub {

namespace {

constexpr double kVarianceTol = 1e-8;
constexpr double kUnisolvencyThreshold = 1e-10;

double ipow(double base, int exp) {
    double result = 1.0;
    while (exp > 0) {
        if (exp & 1) result *= base;
        base *= base;
        exp >>= 1;
    }
    return result;
}

bool is_even_index(const MultiIndex& alpha) {
    return std::all_of(alpha.begin(), alpha.end(), [](int a) { return a % 2 == 0; });
}

MultiIndex canonical_index(MultiIndex alpha) {
    std::sort(alpha.begin(), alpha.end(), std::greater<int>());
    return alpha;
}

int total_degree(const MultiIndex& alpha) {
    int d = 0;
    for (int a : alpha) d += a;
    return d;
}

void enumerate_indices(int m, int r, MultiIndex& current, int pos, int remaining,
                       std::vector<MultiIndex>& out) {
    if (pos == m) {
        out.push_back(current);
        return;
    }
    for (int a = 0; a <= remaining; ++a) {
        current[pos] = a;
        enumerate_indices(m, r, current, pos + 1, remaining - a, out);
    }
    current[pos] = 0;
}

IndexBlock make_block(const MultiIndex& generator) {
    IndexBlock block;
    block.generator = generator;
    block.indices = expand_nonneg(generator).indices;
    block.even = is_even_index(generator);
    return block;
}

double clamp_variance(double var) {
    if (var < 0.0) {
        if (var < -kVarianceTol) {
            std::cerr << "[symcub] warning: Bayes-Sard posterior variance " << var
                      << " clamped to 0\n";
        }
        var = 0.0;
    }
    return var;
}

}  // namespace

std::size_t PolynomialSpace::total_indices() const {
    std::size_t q = 0;
    for (const IndexBlock& b : blocks) q += b.indices.size();
    return q;
}

std::vector<MultiIndex> PolynomialSpace::flat_indices() const {
    std::vector<MultiIndex> flat;
    flat.reserve(total_indices());
    for (const IndexBlock& b : blocks) flat.insert(flat.end(), b.indices.begin(), b.indices.end());
    return flat;
}

bool PolynomialSpace::all_even() const {
    return std::all_of(blocks.begin(), blocks.end(), [](const IndexBlock& b) { return b.even; });
}

PolynomialSpace make_total_degree_space(int m, int r) {
    if (m < 1) throw InvalidInput("dimension must be at least 1");
    if (r < 0) throw InvalidInput("polynomial degree must be non-negative");

    std::vector<MultiIndex> all;
    MultiIndex current(m, 0);
    enumerate_indices(m, r, current, 0, r, all);

    // Orbit representatives ordered by (total degree, lexicographic).
    std::map<std::pair<int, MultiIndex>, MultiIndex> reps;
    for (const MultiIndex& alpha : all) {
        MultiIndex canon = canonical_index(alpha);
        reps.emplace(std::make_pair(total_degree(canon), canon), canon);
    }

    PolynomialSpace space;
    space.dimension = m;
    for (const auto& [key, canon] : reps) space.blocks.push_back(make_block(canon));
    return space;
}

PolynomialSpace make_space_from_generators(int m, const std::vector<MultiIndex>& generators) {
    if (generators.empty()) throw InvalidInput("polynomial space must be non-empty");
    PolynomialSpace space;
    space.dimension = m;
    std::map<MultiIndex, bool> seen;
    for (const MultiIndex& g : generators) {
        if (static_cast<int>(g.size()) != m) {
            throw InvalidInput("multi-index generator dimension mismatch");
        }
        MultiIndex canon = canonical_index(g);
        if (!seen.emplace(canon, true).second) {
            throw InvalidInput("duplicate multi-index generator (same permutation orbit)");
        }
        space.blocks.push_back(make_block(canon));
    }
    return space;
}

PolynomialSpace even_subspace(const PolynomialSpace& space) {
    PolynomialSpace even;
    even.dimension = space.dimension;
    for (const IndexBlock& b : space.blocks) {
        if (b.even) even.blocks.push_back(b);
    }
    return even;
}

double monomial(const Eigen::VectorXd& x, const MultiIndex& alpha) {
    if (x.size() != static_cast<Eigen::Index>(alpha.size())) {
        throw InvalidInput("monomial: dimension mismatch");
    }
    double value = 1.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) value *= ipow(x[i], alpha[i]);
    return value;
}

Eigen::MatrixXd vandermonde(const std::vector<Eigen::VectorXd>& points,
                            const PolynomialSpace& space) {
    const std::vector<MultiIndex> flat = space.flat_indices();
    Eigen::MatrixXd Phi(static_cast<Eigen::Index>(points.size()),
                        static_cast<Eigen::Index>(flat.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = 0; j < flat.size(); ++j) {
            Phi(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                monomial(points[i], flat[j]);
        }
    }
    return Phi;
}

UnisolvencyReport check_unisolvency(const std::vector<Eigen::VectorXd>& points,
                                    const PolynomialSpace& space) {
    const std::size_t q = space.total_indices();
    if (q > points.size()) {
        throw PreconditionError("unisolvency is infeasible: more basis functions than points");
    }
    const Eigen::MatrixXd Phi = vandermonde(points, space);
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(Phi);
    const auto& sv = svd.singularValues();
    UnisolvencyReport report;
    report.rank_gap = sv(sv.size() - 1) / sv(0);
    report.unisolvent = report.rank_gap > kUnisolvencyThreshold;
    return report;
}

BayesSardResult bsc_naive(const std::vector<Eigen::VectorXd>& points, const Kernel& k,
                          const Measure& nu, const PolynomialSpace& space,
                          const Eigen::VectorXd& f_values, const BcOptions& options) {
    const Eigen::Index n = static_cast<Eigen::Index>(points.size());
    const Eigen::Index q = static_cast<Eigen::Index>(space.total_indices());
    if (q == 0) throw InvalidInput("bsc_naive: the polynomial space must be non-empty");
    if (f_values.size() != n) throw InvalidInput("bsc_naive: f_values length mismatch");

    const UnisolvencyReport uni = check_unisolvency(points, space);
    if (!uni.unisolvent) {
        throw PreconditionError("design is not unisolvent for the polynomial space (rank gap " +
                                std::to_string(uni.rank_gap) + ")");
    }

    Eigen::MatrixXd K = kernel_matrix(points, k, options.threads);
    if (options.jitter > 0.0) K.diagonal().array() += options.jitter;
    const Eigen::MatrixXd Phi = vandermonde(points, space);

    Eigen::VectorXd k_nu(n);
    for (Eigen::Index i = 0; i < n; ++i) k_nu[i] = k.mean(nu, points[i]);
    const std::vector<MultiIndex> flat = space.flat_indices();
    Eigen::VectorXd phi_nu(q);
    for (Eigen::Index j = 0; j < q; ++j) phi_nu[j] = nu.polynomial_integral(flat[j]);

    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n + q, n + q);
    M.topLeftCorner(n, n) = K;
    M.topRightCorner(n, q) = Phi;
    M.bottomLeftCorner(q, n) = Phi.transpose();
    Eigen::VectorXd rhs(n + q);
    rhs.head(n) = k_nu;
    rhs.tail(q) = phi_nu;

    SolveInfo info;
    const Eigen::VectorXd solution = solve_symmetric_indefinite(M, rhs, &info);
    const Eigen::VectorXd w_k = solution.head(n);
    const Eigen::VectorXd w_pi = solution.tail(q);

    const SpdSolver k_solver(K, 0.0, "kernel matrix K_X");
    const Eigen::VectorXd kinv_knu = k_solver.solve(k_nu);
    const double k_nunu = k.initial_error(nu);
    const double variance = k_nunu - k_nu.dot(kinv_knu) +
                            w_pi.dot(Phi.transpose() * kinv_knu - phi_nu);

    BayesSardResult result;
    result.posterior_mean = w_k.dot(f_values);
    result.posterior_variance = clamp_variance(variance);
    result.kernel_weights = w_k;
    result.flat_kernel_weights = w_k;
    result.poly_weights = w_pi;
    result.diagnostics.system_dimension = n + q;
    result.diagnostics.condition_estimate = info.condition_estimate;
    result.diagnostics.jitter_used = options.jitter;
    return result;
}

BayesSardResult bsc_fss(const SymmetricPointSet& design, const Kernel& k, const Measure& nu,
                        const PolynomialSpace& space, const Eigen::VectorXd& f_values) {
    if (!k.fully_symmetric() || !nu.fully_symmetric()) {
        throw PreconditionError("bsc_fss requires a fully symmetric kernel and measure");
    }
    if (!space.all_even()) {
        throw PreconditionError(
            "bsc_fss accepts even multi-index orbits only; odd orbits contribute zero "
            "multipliers on a fully symmetric design and must be dropped");
    }
    const Eigen::Index J = static_cast<Eigen::Index>(design.block_count());
    const Eigen::Index Ja = static_cast<Eigen::Index>(space.block_count());
    if (Ja == 0) throw InvalidInput("bsc_fss: the polynomial space must be non-empty");
    if (f_values.size() != static_cast<Eigen::Index>(design.total_size())) {
        throw InvalidInput("bsc_fss: f_values length mismatch");
    }
    if (space.dimension != design.dimension()) {
        throw InvalidInput("bsc_fss: space and design dimensions differ");
    }
    const UnisolvencyReport uni = check_unisolvency(design.points, space);
    if (!uni.unisolvent) {
        throw PreconditionError("design is not unisolvent for the polynomial space (rank gap " +
                                std::to_string(uni.rank_gap) + ")");
    }

    const Eigen::MatrixXd S = build_S(design, k);

    // [A]_ij = sum over beta in orbit j of (lambda^i)^beta
    Eigen::MatrixXd A(J, Ja);
    for (Eigen::Index i = 0; i < J; ++i) {
        const Eigen::VectorXd& lambda = design.blocks[i].generator.lambda;
        for (Eigen::Index j = 0; j < Ja; ++j) {
            const auto& orbit = space.blocks[j].indices;
            A(i, j) = pairwise_sum(orbit.size(),
                                   [&](std::size_t b) { return monomial(lambda, orbit[b]); });
        }
    }

    // [B]_ij = sum over x in block j of x^(alpha^i)
    Eigen::MatrixXd B(Ja, J);
    for (Eigen::Index i = 0; i < Ja; ++i) {
        const MultiIndex& alpha = space.blocks[i].generator;
        for (Eigen::Index j = 0; j < J; ++j) {
            const auto& block = design.blocks[j].points;
            B(i, j) = pairwise_sum(block.size(),
                                   [&](std::size_t p) { return monomial(block[p], alpha); });
        }
    }

    Eigen::VectorXd k_nu_blocks(J);
    for (Eigen::Index j = 0; j < J; ++j) {
        k_nu_blocks[j] = k.mean(nu, design.blocks[j].generator.lambda);
    }
    Eigen::VectorXd phi_nu(Ja);
    for (Eigen::Index j = 0; j < Ja; ++j) {
        phi_nu[j] = nu.polynomial_integral(space.blocks[j].generator);
    }

    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(J + Ja, J + Ja);
    M.topLeftCorner(J, J) = S;
    M.topRightCorner(J, Ja) = A;
    M.bottomLeftCorner(Ja, J) = B;
    Eigen::VectorXd rhs(J + Ja);
    rhs.head(J) = k_nu_blocks;
    rhs.tail(Ja) = phi_nu;

    const LuSolver block_solver(M);
    const Eigen::VectorXd solution = block_solver.solve(rhs);
    const Eigen::VectorXd w_k = solution.head(J);
    const Eigen::VectorXd w_pi = solution.tail(Ja);

    // Variance reuses the standard fast-path weights from the same S.
    const LuSolver s_solver(S);
    const Eigen::VectorXd w_sigma = s_solver.solve(k_nu_blocks);

    const Eigen::VectorXd f_block_sums = block_sums(design, f_values);
    double mean = 0.0;
    for (Eigen::Index j = 0; j < J; ++j) mean += w_k[j] * f_block_sums[j];

    const double k_nunu = k.initial_error(nu);
    double variance = k_nunu;
    for (Eigen::Index j = 0; j < J; ++j) {
        variance -= w_sigma[j] * k_nu_blocks[j] * static_cast<double>(design.block_sizes[j]);
    }
    for (Eigen::Index j = 0; j < Ja; ++j) {
        double constraint_residual = -phi_nu[j];
        for (Eigen::Index i = 0; i < J; ++i) constraint_residual += w_sigma[i] * B(j, i);
        variance += w_pi[j] * static_cast<double>(space.blocks[j].indices.size()) *
                    constraint_residual;
    }

    BayesSardResult result;
    result.posterior_mean = mean;
    result.posterior_variance = clamp_variance(variance);
    result.kernel_weights = w_k;
    result.flat_kernel_weights = expand_block_weights(design, w_k);
    result.poly_weights = w_pi;
    result.diagnostics.system_dimension = J + Ja;
    result.diagnostics.condition_estimate = block_solver.condition_estimate();
    return result;
}

}  // namespace symcub
