#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "symcub/bayes_sard.hpp"
#include "symcub/bc.hpp"
#include "symcub/com.hpp"
#include "symcub/errors.hpp"
#include "symcub/illumination.hpp"
#include "symcub/io.hpp"
#include "symcub/mobc.hpp"
#include "symcub/selftest.hpp"
#include "symcub/zcb.hpp"

namespace {

using namespace symcub;

struct GlobalOptions {
    std::uint64_t seed = 0;
    std::string out = "-";
    bool naive = false;
    int threads = 1;
};

struct KernelOptions {
    std::string kernel = "gaussian";
    double length_scale = 1.0;
    std::string measure = "gaussian";
};

std::shared_ptr<const Kernel> make_kernel(const KernelOptions& opts) {
    if (opts.kernel == "gaussian") return std::make_shared<GaussianKernel>(opts.length_scale);
    if (opts.kernel == "sphere_chord") return std::make_shared<SphereChordKernel>();
    throw InvalidInput("unknown kernel: " + opts.kernel);
}

std::shared_ptr<const Measure> make_measure(const KernelOptions& opts, int m) {
    if (opts.measure == "gaussian") {
        return std::make_shared<GaussianMeasure>(GaussianMeasure::standard(m));
    }
    if (opts.measure == "uniform_sphere") {
        if (m != 3) throw InvalidInput("uniform_sphere requires dimension 3");
        return std::make_shared<UniformSphereMeasure>();
    }
    throw InvalidInput("unknown measure: " + opts.measure);
}

// Demo integrand for the bc/bsc verbs: f(x) = exp(mean of the coordinates).
// Smooth, positive, and defined on every supported domain.
ScalarFunction demo_integrand(int m) {
    return [m](const Eigen::VectorXd& x) { return std::exp(x.sum() / m); };
}

void run_bc(const GlobalOptions& global, const KernelOptions& kopts,
            const std::string& generator_file, double jitter) {
    const auto start = std::chrono::steady_clock::now();
    const SymmetricPointSet design = build_point_set(read_generator_file(generator_file));
    const int m = design.dimension();
    const auto kernel = make_kernel(kopts);
    const auto measure = make_measure(kopts, m);
    const Eigen::VectorXd f = evaluate_integrand(design.points, demo_integrand(m));

    CubatureResult result;
    if (global.naive) {
        BcOptions options;
        options.jitter = jitter;
        options.threads = global.threads;
        result = bc_naive(design.points, *kernel, *measure, f, nullptr, options);
    } else {
        result = bc_fss(design, *kernel, *measure, f);
    }
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();

    CsvWriter csv(global.out);
    csv.header({"N", "J", "posterior_mean", "posterior_sd", "cond_estimate", "wall_ms"});
    csv.row({std::to_string(design.total_size()), std::to_string(design.block_count()),
             format_double(result.posterior_mean),
             format_double(std::sqrt(result.posterior_variance)),
             format_double(result.diagnostics.condition_estimate), format_double(wall_ms)});
}

void run_bsc(const GlobalOptions& global, const KernelOptions& kopts,
             const std::string& generator_file, double jitter, int poly_degree,
             const std::string& alpha_file) {
    const auto start = std::chrono::steady_clock::now();
    const SymmetricPointSet design = build_point_set(read_generator_file(generator_file));
    const int m = design.dimension();
    const auto kernel = make_kernel(kopts);
    const auto measure = make_measure(kopts, m);
    const Eigen::VectorXd f = evaluate_integrand(design.points, demo_integrand(m));

    PolynomialSpace space;
    if (!alpha_file.empty()) {
        space = make_space_from_generators(m, read_multi_index_file(alpha_file));
    } else {
        space = make_total_degree_space(m, poly_degree);
    }

    BayesSardResult result;
    if (global.naive) {
        BcOptions options;
        options.jitter = jitter;
        options.threads = global.threads;
        result = bsc_naive(design.points, *kernel, *measure, space, f, options);
    } else {
        result = bsc_fss(design, *kernel, *measure, even_subspace(space), f);
    }
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();

    CsvWriter csv(global.out);
    csv.header({"N", "J", "posterior_mean", "posterior_sd", "cond_estimate", "wall_ms"});
    csv.row({std::to_string(design.total_size()), std::to_string(design.block_count()),
             format_double(result.posterior_mean),
             format_double(std::sqrt(result.posterior_variance)),
             format_double(result.diagnostics.condition_estimate), format_double(wall_ms)});
}

void run_mobc(const GlobalOptions& global, int outputs, int gen_per_output,
              const std::string& b_matrix) {
    const MultiDesign design = make_sphere_design(outputs, gen_per_output, global.seed);
    const auto chord = std::make_shared<SphereChordKernel>();
    const UniformSphereMeasure measure;

    IlluminationProblem problem;
    problem.max_outputs = outputs;
    Eigen::MatrixXd B;
    if (b_matrix.empty() || b_matrix == "brdf") {
        B = problem.output_covariance(outputs);
    } else {
        B = read_matrix_file(b_matrix);
        if (B.rows() != outputs || B.cols() != outputs) {
            throw InvalidInput("--b-matrix must be a " + std::to_string(outputs) + "x" +
                               std::to_string(outputs) + " matrix");
        }
    }
    const SeparableMatrixKernel kernel(B, chord);

    // Outputs integrate the red-channel radiance at the d-th observation angle.
    std::vector<Eigen::VectorXd> f(outputs);
    for (int d = 0; d < outputs; ++d) {
        f[d] = evaluate_integrand(design.designs[d].points, problem.integrand(d, 0));
    }

    const MultiOutputResult result = global.naive ? mobc_naive(design, kernel, measure, f)
                                                  : mobc_fss(design, kernel, measure, f);

    CsvWriter csv(global.out);
    csv.header({"d", "N", "J", "posterior_mean", "posterior_sd"});
    for (int d = 0; d < outputs; ++d) {
        csv.row({std::to_string(d), std::to_string(design.points_per_output()),
                 std::to_string(design.block_count()), format_double(result.posterior_mean[d]),
                 format_double(std::sqrt(result.posterior_covariance(d, d)))});
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fully symmetric Bayesian cubature benchmarks"};
    app.set_config("--config");
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    app.add_option("--seed", global.seed, "PRNG seed (mt19937_64)")->configurable(true);
    app.add_option("--out", global.out, "output CSV path, '-' for stdout")->configurable(true);
    app.add_flag("--naive", global.naive, "force the full linear-system reference path")
        ->configurable(true);
    app.add_option("--threads", global.threads, "kernel-matrix assembly threads")
        ->configurable(true);

    KernelOptions kopts;
    std::string generator_file;
    double jitter = 0.0;
    int poly_degree = 2;
    std::string alpha_file;

    CLI::App* bc_cmd = app.add_subcommand("bc", "standard Bayesian cubature");
    CLI::App* bc_run = bc_cmd->add_subcommand("run", "single cubature run");
    bc_run->add_option("--generators", generator_file, "generator vectors, one per line")
        ->required();
    bc_run->add_option("--kernel", kopts.kernel, "gaussian|sphere_chord");
    bc_run->add_option("--length-scale", kopts.length_scale, "Gaussian kernel length-scale");
    bc_run->add_option("--measure", kopts.measure, "gaussian|uniform_sphere");
    bc_run->add_option("--jitter", jitter, "diagonal jitter for the naive kernel system");

    CLI::App* bsc_cmd = app.add_subcommand("bsc", "Bayes-Sard cubature");
    CLI::App* bsc_run = bsc_cmd->add_subcommand("run", "single cubature run");
    bsc_run->add_option("--generators", generator_file, "generator vectors, one per line")
        ->required();
    bsc_run->add_option("--kernel", kopts.kernel, "gaussian|sphere_chord");
    bsc_run->add_option("--length-scale", kopts.length_scale, "Gaussian kernel length-scale");
    bsc_run->add_option("--measure", kopts.measure, "gaussian|uniform_sphere");
    bsc_run->add_option("--jitter", jitter, "diagonal jitter for the naive kernel system");
    bsc_run->add_option("--poly-degree", poly_degree, "total-degree polynomial space");
    bsc_run->add_option("--alpha-generators", alpha_file, "multi-index orbit generators file");

    int outputs = 2;
    int gen_per_output = 3;
    std::string b_matrix;
    CLI::App* mobc_cmd = app.add_subcommand("mobc", "multi-output Bayesian cubature");
    CLI::App* mobc_run = mobc_cmd->add_subcommand("run", "single multi-output run");
    mobc_run->add_option("--outputs", outputs, "number of outputs D");
    mobc_run->add_option("--gen-per-output", gen_per_output, "generators per output J");
    mobc_run->add_option("--b-matrix", b_matrix, "output covariance: matrix file or 'brdf'");

    ZcbRunConfig zcb_config;
    CLI::App* zcb_cmd = app.add_subcommand("zcb", "zero-coupon bond benchmark");
    zcb_cmd->add_option("--horizons", zcb_config.horizons, "bond horizons T");
    zcb_cmd->add_option("--levels", zcb_config.levels, "sparse grid levels");
    zcb_cmd->add_flag("--bayes-sard", zcb_config.use_bayes_sard, "use the Bayes-Sard method");
    zcb_cmd->add_option("--poly-degree", zcb_config.poly_degree, "Bayes-Sard space degree");
    zcb_cmd->add_flag("--ell-sqrt", zcb_config.length_scale_sqrt,
                      "length-scale sqrt(m) instead of m");

    IlluminationRunConfig illum_config;
    std::string env_map;
    CLI::App* illum_cmd = app.add_subcommand("illumination", "spherical illumination benchmark");
    illum_cmd->add_option("--outputs", illum_config.max_outputs, "max observation angles D");
    illum_cmd->add_option("--gen-per-output", illum_config.generators_per_output,
                          "generators per output J");
    illum_cmd->add_option("--realizations", illum_config.realizations,
                          "point-set realizations to average");
    illum_cmd->add_option("--mc-samples", illum_config.mc_samples,
                          "Monte Carlo samples for reference integrals");
    illum_cmd->add_option("--env-map", env_map, "plain-text equirectangular radiance grid");

    ChangeOfMeasureRunConfig com_config;
    CLI::App* com_cmd = app.add_subcommand("com", "8-D Gaussian change-of-measure benchmark");
    com_cmd->add_option("--levels", com_config.levels, "sparse grid levels");
    com_cmd->add_option("--length-scale", com_config.length_scale, "Gaussian kernel length-scale");

    CLI::App* selftest_cmd = app.add_subcommand("selftest", "oracle-equivalence suites");

    CLI11_PARSE(app, argc, argv);

    try {
        if (bc_run->parsed()) {
            run_bc(global, kopts, generator_file, jitter);
        } else if (bc_cmd->parsed()) {
            std::cerr << "usage: symcub bc run ...\n";
            return 2;
        } else if (bsc_run->parsed()) {
            run_bsc(global, kopts, generator_file, jitter, poly_degree, alpha_file);
        } else if (bsc_cmd->parsed()) {
            std::cerr << "usage: symcub bsc run ...\n";
            return 2;
        } else if (mobc_run->parsed()) {
            run_mobc(global, outputs, gen_per_output, b_matrix);
        } else if (mobc_cmd->parsed()) {
            std::cerr << "usage: symcub mobc run ...\n";
            return 2;
        } else if (zcb_cmd->parsed()) {
            zcb_config.out = global.out;
            run_zcb(zcb_config);
        } else if (illum_cmd->parsed()) {
            illum_config.seed = global.seed;
            illum_config.out = global.out;
            if (!env_map.empty()) {
                illum_config.source = std::make_shared<EnvironmentMapRadiance>(env_map);
            }
            run_illumination(illum_config);
        } else if (com_cmd->parsed()) {
            com_config.out = global.out;
            run_change_of_measure(com_config);
        } else if (selftest_cmd->parsed()) {
            SelftestConfig config;
            config.seed = global.seed;
            config.threads = global.threads;
            config.out = global.out;
            if (!run_selftest(config)) {
                std::cerr << "selftest: at least one suite failed\n";
                return 1;
            }
        }
    } catch (const PreconditionError& e) {
        std::cerr << "precondition violation: " << e.what() << '\n';
        return 2;
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const NotImplementedError& e) {
        std::cerr << "not implemented: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
