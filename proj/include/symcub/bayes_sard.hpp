#pragma once

#include <vector>

#include <Eigen/Dense>

#include "symcub/bc.hpp"
#include "symcub/fss.hpp"
#include "symcub/kernel.hpp"
#include "symcub/measure.hpp"

namespace symcub {

/// One permutation orbit of monomial multi-indices.
struct IndexBlock {
    MultiIndex generator;             // sorted non-increasing
    std::vector<MultiIndex> indices;  // permutation orbit, lexicographic order
    bool even = false;                // every generator entry even
};

/// A polynomial space structured as a union of permutation orbits. Columns
/// of the Vandermonde matrix follow block-major order; within a block the
/// indices follow the expand_nonneg enumeration.
struct PolynomialSpace {
    int dimension = 0;
    std::vector<IndexBlock> blocks;

    std::size_t block_count() const { return blocks.size(); }
    std::size_t total_indices() const;
    std::vector<MultiIndex> flat_indices() const;
    bool all_even() const;
};

/// All multi-indices with |alpha| <= r, grouped into permutation orbits.
/// Odd orbits are retained; the fast path uses even_subspace().
PolynomialSpace make_total_degree_space(int m, int r);

/// Closes the given generators under permutations; duplicate orbits are an
/// error.
PolynomialSpace make_space_from_generators(int m, const std::vector<MultiIndex>& generators);

/// The even orbits only.
PolynomialSpace even_subspace(const PolynomialSpace& space);

/// x^alpha via per-coordinate repeated squaring, left-to-right.
double monomial(const Eigen::VectorXd& x, const MultiIndex& alpha);

/// [Phi]_ij = phi_j(x_i)
Eigen::MatrixXd vandermonde(const std::vector<Eigen::VectorXd>& points,
                            const PolynomialSpace& space);

struct UnisolvencyReport {
    bool unisolvent = false;
    double rank_gap = 0.0;  // sigma_min / sigma_max of the Vandermonde matrix
};

/// Full column rank of the Vandermonde matrix, decided at relative
/// singular-value ratio 1e-10. Throws PreconditionError when Q > N.
UnisolvencyReport check_unisolvency(const std::vector<Eigen::VectorXd>& points,
                                    const PolynomialSpace& space);

struct BayesSardResult {
    double posterior_mean = 0.0;
    double posterior_variance = 0.0;
    Eigen::VectorXd kernel_weights;      // per point (naive) or per block (fast)
    Eigen::VectorXd poly_weights;        // per index (naive) or per orbit (fast)
    Eigen::VectorXd flat_kernel_weights; // always expanded to per-point form
    Diagnostics diagnostics;
};

/// Bayes-Sard cubature through the full (N+Q) saddle-point system, solved
/// with a pivoted symmetric-indefinite factorization.
BayesSardResult bsc_naive(const std::vector<Eigen::VectorXd>& points, const Kernel& k,
                          const Measure& nu, const PolynomialSpace& space,
                          const Eigen::VectorXd& f_values, const BcOptions& options = {});

/// Fully symmetric fast path on the (J + J_alpha) block system. The space
/// must consist of even orbits only; odd orbits are rejected because their
/// multipliers vanish identically on a fully symmetric design.
BayesSardResult bsc_fss(const SymmetricPointSet& design, const Kernel& k, const Measure& nu,
                        const PolynomialSpace& space, const Eigen::VectorXd& f_values);

}  // namespace symcub
