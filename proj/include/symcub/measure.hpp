#pragma once

#include <functional>
#include <memory>
#include <string>

#include <Eigen/Dense>

#include "symcub/fss.hpp"

namespace symcub {

enum class DomainTag { RealSpace, SymmetricCube, UnitSphere };

class Measure {
public:
    virtual ~Measure() = default;

    virtual int dimension() const = 0;
    virtual DomainTag domain() const = 0;
    virtual std::string name() const = 0;

    /// Density with respect to the natural reference measure of the domain
    /// (Lebesgue on R^m and cubes, surface measure on the sphere).
    virtual double density(const Eigen::VectorXd& x) const = 0;
    virtual double log_density(const Eigen::VectorXd& x) const;

    virtual bool fully_symmetric() const = 0;

    /// Integral of the monomial x^alpha. Supported for isotropic centred
    /// Gaussians and symmetric hypercubes; throws NotImplementedError
    /// otherwise.
    virtual double polynomial_integral(const MultiIndex& alpha) const;
};

class GaussianMeasure final : public Measure {
public:
    GaussianMeasure(Eigen::VectorXd mean, Eigen::MatrixXd cov);

    /// N(0, sigma2 * I_m)
    static GaussianMeasure standard(int m, double sigma2 = 1.0);

    int dimension() const override { return static_cast<int>(mean_.size()); }
    DomainTag domain() const override { return DomainTag::RealSpace; }
    std::string name() const override { return "gaussian"; }

    double density(const Eigen::VectorXd& x) const override;
    double log_density(const Eigen::VectorXd& x) const override;
    bool fully_symmetric() const override { return isotropic_centred_; }
    double polynomial_integral(const MultiIndex& alpha) const override;

    const Eigen::VectorXd& mean() const { return mean_; }
    const Eigen::MatrixXd& covariance() const { return cov_; }
    bool isotropic_centred() const { return isotropic_centred_; }
    double isotropic_variance() const;  // sigma^2 when isotropic_centred()

private:
    Eigen::VectorXd mean_;
    Eigen::MatrixXd cov_;
    Eigen::LLT<Eigen::MatrixXd> chol_;
    double log_norm_ = 0.0;
    bool isotropic_centred_ = false;
};

/// Uniform probability measure on the cube [-a, a]^m.
class UniformCubeMeasure final : public Measure {
public:
    UniformCubeMeasure(int m, double half_width);

    int dimension() const override { return m_; }
    DomainTag domain() const override { return DomainTag::SymmetricCube; }
    std::string name() const override { return "uniform_cube"; }

    double density(const Eigen::VectorXd& x) const override;
    bool fully_symmetric() const override { return true; }
    double polynomial_integral(const MultiIndex& alpha) const override;

    double half_width() const { return a_; }

private:
    int m_;
    double a_;
};

/// Uniform probability measure on the unit sphere S^2 in R^3.
class UniformSphereMeasure final : public Measure {
public:
    UniformSphereMeasure() = default;

    int dimension() const override { return 3; }
    DomainTag domain() const override { return DomainTag::UnitSphere; }
    std::string name() const override { return "uniform_sphere"; }

    double density(const Eigen::VectorXd& x) const override;
    bool fully_symmetric() const override { return true; }
};

using ScalarFunction = std::function<double(const Eigen::VectorXd&)>;

/// f(x) * p_nu(x) / p_nu*(x); integrating this against nu* equals
/// integrating f against nu. Absolute continuity is enforced lazily: an
/// evaluation point with p_nu*(x) = 0 < p_nu(x) raises PreconditionError.
class TransformedIntegrand {
public:
    TransformedIntegrand(ScalarFunction f, std::shared_ptr<const Measure> nu,
                         std::shared_ptr<const Measure> nu_star);

    double operator()(const Eigen::VectorXd& x) const;

    const Measure& target() const { return *nu_; }
    const Measure& reference() const { return *nu_star_; }

private:
    ScalarFunction f_;
    std::shared_ptr<const Measure> nu_;
    std::shared_ptr<const Measure> nu_star_;
};

/// Throws PreconditionError unless nu_star is fully symmetric.
TransformedIntegrand change_of_measure(ScalarFunction f, std::shared_ptr<const Measure> nu,
                                       std::shared_ptr<const Measure> nu_star);

}  // namespace symcub
