#pragma once

#include <vector>

#include <Eigen/Dense>

#include "symcub/fss.hpp"

namespace symcub {

/// Nodes and weights of the n-point Gauss-Hermite rule for the standard
/// normal weight (probabilists' convention), via Golub-Welsch.
struct GaussHermiteRule {
    Eigen::VectorXd nodes;    // ascending
    Eigen::VectorXd weights;  // sum to 1
};

GaussHermiteRule gauss_hermite(int n);

/// Sparse grid of fully symmetric sets for N(0, I_m).
///
/// Construction: let c_1 < ... < c_L be the positive nodes of the
/// (2L+1)-point Gauss-Hermite rule. The generators of level L are all
/// canonical vectors whose non-zero entries are drawn from {c_1..c_L} with
/// the total index budget sum_i idx(entry_i) <= L, where idx(c_k) = k. The
/// origin generator is included only when include_origin is set. Distinct
/// canonical generators give disjoint orbits, so the union is always a
/// valid symmetric point set.
std::vector<GeneratorVector> make_gauss_hermite_generators(int m, int level,
                                                           bool include_origin = false);

}  // namespace symcub
