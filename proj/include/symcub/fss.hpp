#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace symcub {

/// A generator vector in canonical form: entries non-negative, sorted
/// non-increasing. Two generators are distinct iff their canonical forms
/// differ in at least one entry (exact floating-point comparison; entries
/// equal only up to rounding are treated as distinct).
struct GeneratorVector {
    Eigen::VectorXd lambda;

    int dimension() const { return static_cast<int>(lambda.size()); }
};

/// Absolute values, sorted non-increasing. Throws InvalidInput on NaN/Inf.
GeneratorVector canonicalize(const Eigen::VectorXd& v);

/// Number of zeros (r0) and the multiplicities r1..rl of the l distinct
/// non-zero values of a canonical generator.
struct MultiplicityProfile {
    int zeros = 0;
    std::vector<int> nonzero_multiplicities;

    int distinct_nonzeros() const { return static_cast<int>(nonzero_multiplicities.size()); }
};

MultiplicityProfile multiplicity_profile(const GeneratorVector& g);

/// Orbit of a generator under all coordinate permutations and sign changes.
struct FullySymmetricSet {
    GeneratorVector generator;
    std::vector<Eigen::VectorXd> points;
    MultiplicityProfile profile;

    std::size_t size() const { return points.size(); }
};

/// Expands the full signed-permutation orbit. The enumeration is
/// deterministic: distinct permutations of the sorted entry multiset in
/// lexicographic order, then sign patterns over the non-zero coordinates in
/// binary-counter order. No arithmetic touches the coordinates, so orbit
/// points are exact reorderings/negations and duplicate-free by
/// construction.
FullySymmetricSet expand_full(const GeneratorVector& g);

/// 2^(m-r0) * m! / (r0! r1! ... rl!)
std::uint64_t cardinality(const GeneratorVector& g);

using MultiIndex = std::vector<int>;

/// Permutation-only orbit of a non-negative multi-index.
struct NonNegFullySymmetricIndexSet {
    MultiIndex generator;
    std::vector<MultiIndex> indices;

    std::size_t size() const { return indices.size(); }
};

/// Throws InvalidInput on negative entries.
NonNegFullySymmetricIndexSet expand_nonneg(const MultiIndex& alpha);

/// m! / (r0! r1! ... rl!)
std::uint64_t permutation_orbit_size(const MultiIndex& alpha);

/// Ordered union of J fully symmetric sets. Flat point order is block-major;
/// within a block the order is the canonical enumeration of expand_full.
struct SymmetricPointSet {
    std::vector<FullySymmetricSet> blocks;
    std::vector<Eigen::VectorXd> points;     // flat, block-major
    std::vector<std::size_t> block_sizes;

    std::size_t block_count() const { return blocks.size(); }
    std::size_t total_size() const { return points.size(); }
    int dimension() const { return blocks.empty() ? 0 : blocks.front().generator.dimension(); }
};

/// Canonicalizes and expands each generator. Throws InvalidInput on
/// duplicate canonical generators, dimension mismatch, or cross-block point
/// collisions.
SymmetricPointSet build_point_set(const std::vector<GeneratorVector>& generators);
SymmetricPointSet build_point_set_raw(const std::vector<Eigen::VectorXd>& raw_generators);

std::string to_string(const GeneratorVector& g);

}  // namespace symcub
