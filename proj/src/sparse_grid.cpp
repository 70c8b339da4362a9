#include "symcub/sparse_grid.hpp"

#include <cmath>

#include "symcub/errors.hpp"

namespace symcub {

GaussHermiteRule gauss_hermite(int n) {
    if (n < 1) throw InvalidInput("Gauss-Hermite rule needs at least one node");
    // Jacobi matrix of the probabilists' Hermite recurrence: zero diagonal,
    // off-diagonal sqrt(i).
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        const double b = std::sqrt(static_cast<double>(i));
        jacobi(i, i - 1) = b;
        jacobi(i - 1, i) = b;
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
    GaussHermiteRule rule;
    rule.nodes = eig.eigenvalues();
    rule.weights = eig.eigenvectors().row(0).transpose().array().square();
    return rule;
}

namespace {

void enumerate_generators(int m, int level, const Eigen::VectorXd& positive_nodes,
                          std::vector<int>& indices, int pos, int min_index, int budget,
                          std::vector<GeneratorVector>& out) {
    if (pos > 0) {
        // Emit the generator with the current non-zero prefix.
        Eigen::VectorXd lambda = Eigen::VectorXd::Zero(m);
        for (int i = 0; i < pos; ++i) lambda[i] = positive_nodes[indices[i] - 1];
        out.push_back(canonicalize(lambda));
    }
    if (pos == m) return;
    for (int idx = min_index; idx <= level && idx <= budget; ++idx) {
        indices[pos] = idx;
        enumerate_generators(m, level, positive_nodes, indices, pos + 1, idx, budget - idx, out);
    }
}

}  // namespace

std::vector<GeneratorVector> make_gauss_hermite_generators(int m, int level,
                                                           bool include_origin) {
    if (level < 1) throw InvalidInput("sparse-grid level must be at least 1");
    if (m < 1) throw InvalidInput("dimension must be at least 1");

    const GaussHermiteRule rule = gauss_hermite(2 * level + 1);
    Eigen::VectorXd positive(level);
    for (int k = 0; k < level; ++k) positive[k] = rule.nodes[level + 1 + k];

    std::vector<GeneratorVector> generators;
    if (include_origin) generators.push_back(canonicalize(Eigen::VectorXd::Zero(m)));

    // Non-zero entries are enumerated with non-decreasing node indices so
    // each multiset appears exactly once.
    std::vector<int> indices(m, 0);
    enumerate_generators(m, level, positive, indices, 0, 1, level, generators);
    return generators;
}

}  // namespace symcub
