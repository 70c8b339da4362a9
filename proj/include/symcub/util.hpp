#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace symcub {

// Pairwise (cascade) summation. Deterministic for a fixed input order and
// more accurate than a running sum on long blocks.
double pairwise_sum(std::span<const double> values);

// Sums f(i) for i in [0, n) through a scratch buffer with pairwise_sum.
double pairwise_sum(std::size_t n, const std::function<double(std::size_t)>& f);

// A signed permutation stored as index/sign pairs; applying it costs O(m).
struct SignedPermutation {
    std::vector<int> perm;     // image position of each coordinate
    std::vector<int> sign;     // +1 or -1 per coordinate

    Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
    std::vector<int> apply_abs(const std::vector<int>& alpha) const;  // permutation part only
};

SignedPermutation random_signed_permutation(int m, std::mt19937_64& rng);
std::vector<int> random_permutation(int m, std::mt19937_64& rng);

}  // namespace symcub
