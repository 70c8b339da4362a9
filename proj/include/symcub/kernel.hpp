#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include <Eigen/Dense>

#include "symcub/measure.hpp"

namespace symcub {

class Kernel {
public:
    virtual ~Kernel() = default;

    virtual double eval(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const = 0;

    /// k_nu(x) = int k(x, x') dnu(x'). Throws NotImplementedError for
    /// unsupported (kernel, measure) pairs.
    virtual double mean(const Measure& nu, const Eigen::VectorXd& x) const = 0;

    /// k_{nu,nu} = int k_nu(x) dnu(x).
    virtual double initial_error(const Measure& nu) const = 0;

    /// Invariance under signed permutations, k(Px, Px') = k(x, x').
    virtual bool fully_symmetric() const = 0;

    virtual std::string name() const = 0;
};

/// k(x, x') = exp(-||x - x'||^2 / (2 l^2))
class GaussianKernel final : public Kernel {
public:
    explicit GaussianKernel(double length_scale);

    double eval(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const override;
    double mean(const Measure& nu, const Eigen::VectorXd& x) const override;
    double initial_error(const Measure& nu) const override;
    bool fully_symmetric() const override { return true; }
    std::string name() const override { return "gaussian"; }

    double length_scale() const { return length_scale_; }

private:
    double length_scale_;
};

/// c(x, x') = 8/3 - ||x - x'|| on the unit sphere S^2. Kernel means against
/// the uniform sphere measure are the exact constants 4/3.
class SphereChordKernel final : public Kernel {
public:
    double eval(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const override;
    double mean(const Measure& nu, const Eigen::VectorXd& x) const override;
    double initial_error(const Measure& nu) const override;
    bool fully_symmetric() const override { return true; }
    std::string name() const override { return "sphere_chord"; }
};

/// Samples random point pairs and signed permutations; passes when
/// |k(Px, Px') - k(x, x')| <= 1e-12 for every trial. Points are drawn on
/// the unit sphere when on_sphere is set, standard normal otherwise.
bool verify_full_symmetry(const Kernel& k, int dim, int trials, std::uint64_t seed,
                          bool on_sphere = false);

}  // namespace symcub
