#include "symcub/illumination.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include "symcub/bc.hpp"
#include "symcub/errors.hpp"
#include "symcub/io.hpp"

namespace symcub {

Eigen::Vector3d SyntheticRadiance::radiance(const Eigen::Vector3d& w) const {
    Eigen::Vector3d out;
    for (int c = 0; c < 3; ++c) {
        out[c] = std::exp(0.9 * std::sin((c + 1) * w.x() + 0.3) + 0.7 * std::cos((c + 2) * w.y()) +
                          0.5 * w.z());
    }
    return out;
}

EnvironmentMapRadiance::EnvironmentMapRadiance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open environment map: " + path);
    in >> width_ >> height_;
    if (!in || width_ < 2 || height_ < 2) {
        throw InvalidInput("environment map header must be 'width height' with both >= 2");
    }
    pixels_.resize(static_cast<std::size_t>(width_) * height_);
    for (auto& px : pixels_) {
        in >> px[0] >> px[1] >> px[2];
        if (!in) throw InvalidInput("environment map: truncated pixel data in " + path);
    }
}

Eigen::Vector3d EnvironmentMapRadiance::radiance(const Eigen::Vector3d& w) const {
    const double azimuth = std::atan2(w.y(), w.x());  // (-pi, pi]
    const double polar = std::acos(std::clamp(w.z(), -1.0, 1.0));
    const double u = (azimuth + std::numbers::pi) / (2.0 * std::numbers::pi) * (width_ - 1);
    const double v = polar / std::numbers::pi * (height_ - 1);

    const int i0 = std::min(static_cast<int>(u), width_ - 2);
    const int j0 = std::min(static_cast<int>(v), height_ - 2);
    const double fu = u - i0;
    const double fv = v - j0;
    const auto at = [&](int i, int j) -> const Eigen::Vector3d& {
        return pixels_[static_cast<std::size_t>(j) * width_ + i];
    };
    return (1 - fu) * (1 - fv) * at(i0, j0) + fu * (1 - fv) * at(i0 + 1, j0) +
           (1 - fu) * fv * at(i0, j0 + 1) + fu * fv * at(i0 + 1, j0 + 1);
}

Eigen::Vector3d IlluminationProblem::observation_direction(int d) const {
    const double base = std::numbers::pi / 4.0;
    const double spread = std::numbers::pi / 24.0;
    const double t = max_outputs > 1
                         ? 2.0 * static_cast<double>(d) / static_cast<double>(max_outputs - 1) - 1.0
                         : 0.0;
    const double elevation = base + spread * t;
    return Eigen::Vector3d(std::cos(elevation), 0.0, std::sin(elevation));
}

double IlluminationProblem::brdf(const Eigen::Vector3d& incident, const Eigen::Vector3d& outgoing) {
    return std::exp(incident.dot(outgoing) - 1.0) / (2.0 * std::numbers::pi);
}

ScalarFunction IlluminationProblem::integrand(int d, int channel) const {
    const Eigen::Vector3d w_o = observation_direction(d);
    const Eigen::Vector3d n = normal;
    const std::shared_ptr<const RadianceSource> src = source;
    return [=](const Eigen::VectorXd& x) {
        const Eigen::Vector3d w_i = x.head<3>();
        const double cosine = std::max(0.0, w_i.dot(n));
        if (cosine == 0.0) return 0.0;
        return src->radiance(w_i)[channel] * brdf(w_i, w_o) * cosine;
    };
}

Eigen::MatrixXd IlluminationProblem::output_covariance(int outputs) const {
    Eigen::MatrixXd B(outputs, outputs);
    for (int d = 0; d < outputs; ++d) {
        for (int q = 0; q < outputs; ++q) {
            B(d, q) = std::exp(observation_direction(d).dot(observation_direction(q)) - 1.0);
        }
    }
    return B;
}

double sphere_monte_carlo(const ScalarFunction& f, long samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    double sum = 0.0;
    Eigen::VectorXd w(3);
    for (long s = 0; s < samples; ++s) {
        do {
            for (int i = 0; i < 3; ++i) w[i] = normal(rng);
        } while (w.norm() < 1e-12);
        w /= w.norm();
        sum += f(w);
    }
    return sum / static_cast<double>(samples);
}

void run_illumination(const IlluminationRunConfig& config) {
    IlluminationProblem problem;
    problem.max_outputs = config.max_outputs;
    if (config.source) problem.source = config.source;

    const UniformSphereMeasure measure;
    const auto chord = std::make_shared<SphereChordKernel>();
    const int d_max = config.max_outputs;
    const int channels = 3;

    // Reference integrals, shared by every D and every realization.
    std::vector<std::vector<double>> reference(d_max, std::vector<double>(channels));
    for (int d = 0; d < d_max; ++d) {
        for (int ch = 0; ch < channels; ++ch) {
            const std::uint64_t ref_seed =
                config.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(d * 3 + ch + 1));
            reference[d][ch] =
                sphere_monte_carlo(problem.integrand(d, ch), config.mc_samples, ref_seed);
        }
    }

    // errors[D-1][ch][method 0=mobc 1=bc] accumulated over realizations.
    std::vector<std::vector<std::array<double, 2>>> mean_err(
        d_max, std::vector<std::array<double, 2>>(channels, {0.0, 0.0}));
    auto max_err = mean_err;

    for (int r = 0; r < config.realizations; ++r) {
        const MultiDesign full =
            make_sphere_design(d_max, config.generators_per_output, config.seed + 1000 + r);

        // Per-output, per-channel data; reused by every D.
        std::vector<std::vector<Eigen::VectorXd>> data(d_max);
        for (int d = 0; d < d_max; ++d) {
            data[d].resize(channels);
            for (int ch = 0; ch < channels; ++ch) {
                data[d][ch] =
                    evaluate_integrand(full.designs[d].points, problem.integrand(d, ch));
            }
        }

        for (int D = 1; D <= d_max; ++D) {
            const MultiDesign sub = make_multi_design(std::vector<SymmetricPointSet>(
                full.designs.begin(), full.designs.begin() + D));
            const SeparableMatrixKernel kernel(problem.output_covariance(D), chord);

            for (int ch = 0; ch < channels; ++ch) {
                std::vector<Eigen::VectorXd> f_values(D);
                for (int d = 0; d < D; ++d) f_values[d] = data[d][ch];

                const MultiOutputResult mo = mobc_fss(sub, kernel, measure, f_values);

                double mo_sum = 0.0, mo_max = 0.0, bc_sum = 0.0, bc_max = 0.0;
                for (int d = 0; d < D; ++d) {
                    const double ref = reference[d][ch];
                    const double mo_rel = std::abs(mo.posterior_mean[d] - ref) / std::abs(ref);
                    const CubatureResult sc =
                        bc_fss(sub.designs[d], *chord, measure, f_values[d]);
                    const double bc_rel = std::abs(sc.posterior_mean - ref) / std::abs(ref);
                    mo_sum += mo_rel;
                    bc_sum += bc_rel;
                    mo_max = std::max(mo_max, mo_rel);
                    bc_max = std::max(bc_max, bc_rel);
                }
                mean_err[D - 1][ch][0] += mo_sum / D;
                mean_err[D - 1][ch][1] += bc_sum / D;
                max_err[D - 1][ch][0] += mo_max;
                max_err[D - 1][ch][1] += bc_max;
            }
        }
    }

    const double n_real = static_cast<double>(config.realizations);
    const std::size_t points = 48u * static_cast<std::size_t>(config.generators_per_output);
    CsvWriter csv(config.out);
    csv.header({"D", "J", "N", "channel", "method", "mean_rel_error", "max_rel_error"});
    const char* channel_names[3] = {"r", "g", "b"};
    const char* method_names[2] = {"mobc", "bc"};
    for (int D = 1; D <= d_max; ++D) {
        for (int ch = 0; ch < channels; ++ch) {
            for (int mth = 0; mth < 2; ++mth) {
                csv.row({std::to_string(D), std::to_string(config.generators_per_output),
                         std::to_string(points), channel_names[ch], method_names[mth],
                         format_double(mean_err[D - 1][ch][mth] / n_real),
                         format_double(max_err[D - 1][ch][mth] / n_real)});
            }
        }
    }
}

}  // namespace symcub
