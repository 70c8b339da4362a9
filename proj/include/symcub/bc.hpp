#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "symcub/fss.hpp"
#include "symcub/kernel.hpp"
#include "symcub/measure.hpp"

namespace symcub {

struct Diagnostics {
    Eigen::Index system_dimension = 0;
    double condition_estimate = 0.0;
    double jitter_used = 0.0;
};

struct CubatureResult {
    double posterior_mean = 0.0;
    double posterior_variance = 0.0;
    Eigen::VectorXd point_weights;   // per flat point (naive path, or expanded)
    Eigen::VectorXd block_weights;   // per fully symmetric block (fast path)
    Diagnostics diagnostics;
};

/// Deterministic integrand wrapper with an evaluation counter.
class Integrand {
public:
    explicit Integrand(ScalarFunction fn) : fn_(std::move(fn)) {}

    double operator()(const Eigen::VectorXd& x) const {
        ++count_;
        return fn_(x);
    }
    long evaluations() const { return count_; }

private:
    ScalarFunction fn_;
    mutable long count_ = 0;
};

/// Prior mean supplied as an evaluation rule together with its integral
/// against the measure. Defaults to zero.
struct PriorMean {
    ScalarFunction eval;
    double integral = 0.0;
};

struct BcOptions {
    double jitter = 0.0;  // added to the diagonal of K_X only, never to S
    int threads = 1;      // kernel-matrix assembly rows; bit-identical to serial
};

Eigen::VectorXd evaluate_integrand(const std::vector<Eigen::VectorXd>& points,
                                   const ScalarFunction& f);

/// Kernel matrix [K]_ij = k(x_i, x_j). Row assembly may be split across
/// threads; per-entry work is independent so the result is bit-identical to
/// a serial pass.
Eigen::MatrixXd kernel_matrix(const std::vector<Eigen::VectorXd>& points, const Kernel& k,
                              int threads = 1);

/// Standard Bayesian cubature on a flat point list, solving the full N x N
/// kernel system. The reference path for all fast-path equivalence tests.
CubatureResult bc_naive(const std::vector<Eigen::VectorXd>& points, const Kernel& k,
                        const Measure& nu, const Eigen::VectorXd& f_values,
                        const PriorMean* prior_mean = nullptr, const BcOptions& options = {});

/// [S]_ij = sum over x in block j of k(lambda^i, x); J x N kernel
/// evaluations, block enumeration order fixed.
Eigen::MatrixXd build_S(const SymmetricPointSet& design, const Kernel& k);

/// Fully symmetric fast path: J x J solve instead of N x N. Requires a
/// fully symmetric kernel and measure; the prior mean is fixed at zero.
/// f_values follows the design's flat block-major order, identical to the
/// layout bc_naive consumes.
CubatureResult bc_fss(const SymmetricPointSet& design, const Kernel& k, const Measure& nu,
                      const Eigen::VectorXd& f_values);

/// Each point in block j receives the block weight w_j.
Eigen::VectorXd expand_block_weights(const SymmetricPointSet& design,
                                     const Eigen::VectorXd& block_weights);

/// Per-block sums of a flat block-major vector, pairwise-summed.
Eigen::VectorXd block_sums(const SymmetricPointSet& design, const Eigen::VectorXd& flat_values);

}  // namespace symcub
