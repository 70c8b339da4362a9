#include "symcub/util.hpp"

#include <algorithm>
#include <numeric>

namespace symcub {

namespace {

double pairwise_sum_impl(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum_impl(v, half) + pairwise_sum_impl(v + half, n - half);
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
    return pairwise_sum_impl(values.data(), values.size());
}

double pairwise_sum(std::size_t n, const std::function<double(std::size_t)>& f) {
    std::vector<double> buf(n);
    for (std::size_t i = 0; i < n; ++i) buf[i] = f(i);
    return pairwise_sum(buf);
}

Eigen::VectorXd SignedPermutation::apply(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y(x.size());
    for (int i = 0; i < x.size(); ++i) y[i] = sign[i] * x[perm[i]];
    return y;
}

std::vector<int> SignedPermutation::apply_abs(const std::vector<int>& alpha) const {
    std::vector<int> out(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) out[i] = alpha[perm[i]];
    return out;
}

SignedPermutation random_signed_permutation(int m, std::mt19937_64& rng) {
    SignedPermutation p;
    p.perm = random_permutation(m, rng);
    p.sign.resize(m);
    for (int i = 0; i < m; ++i) p.sign[i] = (rng() & 1u) ? 1 : -1;
    return p;
}

std::vector<int> random_permutation(int m, std::mt19937_64& rng) {
    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    return idx;
}

}  // namespace symcub
