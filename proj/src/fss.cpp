#include "symcub/fss.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "symcub/errors.hpp"

namespace symcub {

GeneratorVector canonicalize(const Eigen::VectorXd& v) {
    if (v.size() == 0) throw InvalidInput("generator vector must be non-empty");
    GeneratorVector g;
    g.lambda = v.cwiseAbs();
    for (int i = 0; i < g.lambda.size(); ++i) {
        if (!std::isfinite(g.lambda[i])) {
            throw InvalidInput("generator vector has a NaN/Inf entry");
        }
    }
    std::sort(g.lambda.data(), g.lambda.data() + g.lambda.size(), std::greater<double>());
    return g;
}

MultiplicityProfile multiplicity_profile(const GeneratorVector& g) {
    MultiplicityProfile p;
    int i = 0;
    const int m = g.dimension();
    while (i < m) {
        const double value = g.lambda[i];
        int run = 0;
        while (i < m && g.lambda[i] == value) {
            ++run;
            ++i;
        }
        if (value == 0.0) {
            p.zeros = run;
        } else {
            p.nonzero_multiplicities.push_back(run);
        }
    }
    return p;
}

FullySymmetricSet expand_full(const GeneratorVector& g) {
    const int m = g.dimension();
    FullySymmetricSet set;
    set.generator = g;
    set.profile = multiplicity_profile(g);

    // Ascending start so std::next_permutation walks the distinct
    // permutations of the entry multiset in lexicographic order.
    std::vector<double> perm(g.lambda.data(), g.lambda.data() + m);
    std::sort(perm.begin(), perm.end());

    std::vector<int> nonzero_pos;
    do {
        nonzero_pos.clear();
        for (int i = 0; i < m; ++i) {
            if (perm[i] != 0.0) nonzero_pos.push_back(i);
        }
        const std::uint64_t patterns = std::uint64_t{1} << nonzero_pos.size();
        for (std::uint64_t bits = 0; bits < patterns; ++bits) {
            Eigen::VectorXd point(m);
            for (int i = 0; i < m; ++i) point[i] = perm[i];
            for (std::size_t b = 0; b < nonzero_pos.size(); ++b) {
                if (bits & (std::uint64_t{1} << b)) point[nonzero_pos[b]] = -point[nonzero_pos[b]];
            }
            set.points.push_back(std::move(point));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    return set;
}

namespace {

// n! / (r_1! ... r_k!) for group sizes r_i summing to n, evaluated as a
// product of binomial coefficients so intermediate values stay integral.
std::uint64_t multinomial(const std::vector<int>& groups) {
    std::uint64_t result = 1;
    std::uint64_t n = 0;
    for (int r : groups) {
        for (int i = 1; i <= r; ++i) {
            ++n;
            result = result * n / static_cast<std::uint64_t>(i);
        }
    }
    return result;
}

}  // namespace

std::uint64_t cardinality(const GeneratorVector& g) {
    const MultiplicityProfile p = multiplicity_profile(g);
    std::vector<int> groups = p.nonzero_multiplicities;
    groups.push_back(p.zeros);
    const int nonzeros = g.dimension() - p.zeros;
    return multinomial(groups) << nonzeros;
}

NonNegFullySymmetricIndexSet expand_nonneg(const MultiIndex& alpha) {
    if (alpha.empty()) throw InvalidInput("multi-index must be non-empty");
    for (int a : alpha) {
        if (a < 0) throw InvalidInput("multi-index has a negative entry");
    }
    NonNegFullySymmetricIndexSet set;
    set.generator = alpha;

    MultiIndex perm = alpha;
    std::sort(perm.begin(), perm.end());
    do {
        set.indices.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return set;
}

std::uint64_t permutation_orbit_size(const MultiIndex& alpha) {
    MultiIndex sorted = alpha;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> groups;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        groups.push_back(static_cast<int>(j - i));
        i = j;
    }
    return multinomial(groups);
}

SymmetricPointSet build_point_set(const std::vector<GeneratorVector>& generators) {
    if (generators.empty()) throw InvalidInput("generator list must be non-empty");
    const int m = generators.front().dimension();

    SymmetricPointSet out;
    std::set<std::vector<double>> seen_generators;
    std::set<std::vector<double>> seen_points;

    for (const GeneratorVector& raw : generators) {
        if (raw.dimension() != m) {
            throw InvalidInput("generators have mismatched dimensions");
        }
        const GeneratorVector g = canonicalize(raw.lambda);
        std::vector<double> key(g.lambda.data(), g.lambda.data() + m);
        if (!seen_generators.insert(key).second) {
            throw InvalidInput("duplicate generator (same canonical form): " + to_string(g));
        }

        FullySymmetricSet block = expand_full(g);
        for (const Eigen::VectorXd& x : block.points) {
            std::vector<double> pkey(x.data(), x.data() + m);
            if (!seen_points.insert(pkey).second) {
                throw InvalidInput("overlapping fully symmetric sets: point collision at generator " +
                                   to_string(g));
            }
            out.points.push_back(x);
        }
        out.block_sizes.push_back(block.size());
        out.blocks.push_back(std::move(block));
    }
    return out;
}

SymmetricPointSet build_point_set_raw(const std::vector<Eigen::VectorXd>& raw_generators) {
    std::vector<GeneratorVector> gens;
    gens.reserve(raw_generators.size());
    for (const Eigen::VectorXd& v : raw_generators) gens.push_back(canonicalize(v));
    return build_point_set(gens);
}

std::string to_string(const GeneratorVector& g) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < g.dimension(); ++i) {
        if (i > 0) os << ", ";
        os << g.lambda[i];
    }
    os << "]";
    return os.str();
}

}  // namespace symcub
