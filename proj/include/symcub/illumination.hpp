#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "symcub/measure.hpp"
#include "symcub/mobc.hpp"

namespace symcub {

/// Incident radiance source on S^2, one value per RGB channel.
class RadianceSource {
public:
    virtual ~RadianceSource() = default;
    virtual Eigen::Vector3d radiance(const Eigen::Vector3d& direction) const = 0;
};

/// Smooth positive analytic radiance; the default source so no binary
/// image data ships with the repository. Per channel c in {0,1,2}:
///   L_c(w) = exp(0.9 sin((c+1) w_x + 0.3) + 0.7 cos((c+2) w_y) + 0.5 w_z)
class SyntheticRadiance final : public RadianceSource {
public:
    Eigen::Vector3d radiance(const Eigen::Vector3d& direction) const override;
};

/// Equirectangular RGB grid with bilinear interpolation. File format:
/// a "width height" header line, then width*height rows of RGB triples in
/// row-major order (v = polar angle scanning top to bottom, u = azimuth).
class EnvironmentMapRadiance final : public RadianceSource {
public:
    explicit EnvironmentMapRadiance(const std::string& path);

    Eigen::Vector3d radiance(const Eigen::Vector3d& direction) const override;

    int width() const { return width_; }
    int height() const { return height_; }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<Eigen::Vector3d> pixels_;  // row-major
};

/// Global illumination benchmark: outgoing radiance integrals over S^2
/// for D observation angles, three independent color channels.
struct IlluminationProblem {
    int max_outputs = 5;   // D_max; observation elevations form an upward fan
    Eigen::Vector3d normal = Eigen::Vector3d(0.0, 0.0, 1.0);
    std::shared_ptr<const RadianceSource> source = std::make_shared<SyntheticRadiance>();

    /// Observation direction d (0-based), fixed azimuth 0, elevation
    /// pi/4 + pi/24 * (2(d)/(D_max-1) - 1).
    Eigen::Vector3d observation_direction(int d) const;

    /// Integrand for output d, channel ch: L_i(w) rho(w, w_o^d) [w.n]_+
    ScalarFunction integrand(int d, int channel) const;

    /// exp(w_i . w_o - 1) / (2 pi)
    static double brdf(const Eigen::Vector3d& incident, const Eigen::Vector3d& outgoing);

    /// B matrix of the separable kernel: [B]_dq = exp(w_o^d . w_o^q - 1).
    Eigen::MatrixXd output_covariance(int outputs) const;
};

struct IlluminationRunConfig {
    int max_outputs = 5;
    int generators_per_output = 3;  // J
    std::uint64_t seed = 0;
    int realizations = 10;
    long mc_samples = 1000000;      // reference-integral Monte Carlo
    std::string out = "-";
    std::shared_ptr<const RadianceSource> source;  // default synthetic
};

/// For each D in 1..max_outputs, computes MOBC and independent-BC
/// estimates per channel, averaged over point-set realizations; CSV rows
/// (D,J,N,channel,method,mean_rel_error,max_rel_error).
void run_illumination(const IlluminationRunConfig& config);

/// Seeded uniform-sphere Monte Carlo of a scalar integrand.
double sphere_monte_carlo(const ScalarFunction& f, long samples, std::uint64_t seed);

}  // namespace symcub
