#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "symcub/bc.hpp"
#include "symcub/fss.hpp"
#include "symcub/kernel.hpp"
#include "symcub/measure.hpp"

namespace symcub {

/// Matrix-valued kernel B * c(x, x') with B symmetric positive definite.
struct SeparableMatrixKernel {
    Eigen::MatrixXd B;
    std::shared_ptr<const Kernel> c;

    SeparableMatrixKernel(Eigen::MatrixXd output_cov, std::shared_ptr<const Kernel> scalar);
    int outputs() const { return static_cast<int>(B.rows()); }
};

/// One design per output; all designs share the dimension, the block count
/// J, and the block-size vector (n_1..n_J).
struct MultiDesign {
    std::vector<SymmetricPointSet> designs;

    int outputs() const { return static_cast<int>(designs.size()); }
    std::size_t block_count() const { return designs.front().block_count(); }
    std::size_t points_per_output() const { return designs.front().total_size(); }
};

MultiDesign make_multi_design(std::vector<SymmetricPointSet> designs);

struct MultiOutputResult {
    Eigen::VectorXd posterior_mean;        // D
    Eigen::MatrixXd posterior_covariance;  // D x D, symmetric
    Eigen::MatrixXd flat_weights;          // DN x D (naive, or expanded)
    Eigen::MatrixXd block_weights;         // DJ x D (fast path)
    Diagnostics diagnostics;
    long kernel_evaluations = 0;           // scalar-kernel calls in assembly
};

/// Naive reference path: the full DN x DN blocked system.
/// f_values[d] follows the flat block-major order of designs[d].
MultiOutputResult mobc_naive(const MultiDesign& design, const SeparableMatrixKernel& kernel,
                             const Measure& nu, const std::vector<Eigen::VectorXd>& f_values);

/// Fully symmetric fast path: the DJ x DJ block system of Thm-style
/// compressed sums. Requires fully symmetric scalar kernel and measure.
MultiOutputResult mobc_fss(const MultiDesign& design, const SeparableMatrixKernel& kernel,
                           const Measure& nu, const std::vector<Eigen::VectorXd>& f_values);

/// Per output, J generators drawn uniformly on S^2 (normalized Gaussian
/// triples from a seeded mt19937_64); each expands to a 48-point block
/// almost surely. Degenerate draws are rejected and redrawn.
MultiDesign make_sphere_design(int outputs, int generators_per_output, std::uint64_t seed);

}  // namespace symcub
