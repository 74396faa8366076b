// Copyright 2026 The vqlsgp Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "vqlsgp/circuits/circuits.hpp"
#include "vqlsgp/gp/gp.hpp"
#include "vqlsgp/vqls/vqls.hpp"
#include "vqlsgp/vqls_gp/vqls_gp.hpp"

namespace vqlsgp::bench {

using numerics::Vector;

/// sin(2x) + cos(5x).
[[nodiscard]] double snelson(double x) noexcept;

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

/// n equidistant points including both endpoints.
[[nodiscard]] Vector linspace(Interval range, std::size_t n);

enum class Experiment { KernelComparison, AnsatzComparison, Single };

struct ExperimentConfig {
    Experiment experiment = Experiment::KernelComparison;
    std::size_t repetitions = 10;
    std::uint64_t seed = 0;
    std::size_t n_train = 16;
    std::size_t m_test = 1000;
    Interval train{-1.0, 2.2};
    Interval test{-3.0, 4.0};
    double noise_std = 0.1;
    /// Starting points for the classical fit; σ_ε² and θ_taper are kept.
    std::vector<gp::KernelSpec> kernels{
        {gp::KernelFamily::RBF, {1.0, 1.0, 0.64, 0.01}},
        {gp::KernelFamily::MT, {1.0, 1.0, 0.64, 0.01}},
    };
    std::vector<circuits::AnsatzKind> ansaetze{circuits::AnsatzKind::HEA,
                                               circuits::AnsatzKind::UHEA,
                                               circuits::AnsatzKind::MUHEA};
    std::size_t layers = 3;
    circuits::CzPattern cz_pattern = circuits::CzPattern::Linear;
    vqls::VqlsConfig vqls;
    vqls_gp::Option option = vqls_gp::Option::InverseColumns;
    /// When false the kernels' hyperparameters are used as given.
    bool optimize_hyperparameters = true;
    std::size_t hyper_restarts = 2;
    /// MSE against noisy test targets instead of the latent function.
    bool noisy_mse = false;
    std::size_t threads = 1;
    std::string output_dir = "results";

    /// Throws ConfigError on an empty or inverted setting.
    void validate() const;
};

struct Split {
    gp::Dataset train;
    std::vector<Vector> x_test;
    /// Latent function at the test inputs, or noisy targets if configured.
    Vector truth;
};

/// Seeded from (config.seed, repetition).
[[nodiscard]] Split generate_dataset(const ExperimentConfig &config, std::size_t repetition);

[[nodiscard]] double mse(std::span<const double> predictions, std::span<const double> truths);

struct RunRecord {
    std::string model;
    std::string kernel;
    std::string ansatz;
    std::size_t pauli_strings = 0;
    double iterations_mean = 0.0;
    double iterations_std = 0.0;
    double mse_mean = 0.0;
    double mse_std = 0.0;
    double converged_fraction = 1.0;
    std::vector<double> mse_per_repetition;
    std::vector<double> iterations_per_repetition;
    /// MSE of the unsymmetrised-inverse mean, per repetition.
    std::vector<double> raw_mse_per_repetition;
    std::size_t negative_variance_repetitions = 0;
    std::size_t solve_loops = 0;
};

struct LossCurve {
    std::string model;
    std::vector<double> mean_log10;
    std::vector<double> std_log10;
};

struct RegressionCurve {
    std::string model;
    Vector x;
    Vector mean;
    Vector variance;
    Vector truth;
    Vector train_x;
    Vector train_y;
};

struct BenchResult {
    std::vector<RunRecord> records;
    std::vector<LossCurve> losses;
    /// First repetition of every model.
    std::vector<RegressionCurve> regressions;
};

/// Classical LML fit for one repetition, or `start` unchanged when
/// optimisation is off. Seeded from (config.seed, config.vqls.seed, repetition).
[[nodiscard]] gp::KernelSpec fit_hyperparameters(const ExperimentConfig &config,
                                                 const gp::Dataset &train,
                                                 const gp::KernelSpec &start,
                                                 std::size_t repetition);

/// GP and VQLS-GP rows for every configured kernel, HEA ansatz.
[[nodiscard]] BenchResult run_kernel_comparison(const ExperimentConfig &config);
/// GP and one VQLS-GP row per ansatz, MT kernel.
[[nodiscard]] BenchResult run_ansatz_comparison(const ExperimentConfig &config);
/// One VQLS-GP row with the first kernel and first ansatz.
[[nodiscard]] BenchResult run_single(const ExperimentConfig &config);
[[nodiscard]] BenchResult run_experiment(const ExperimentConfig &config);

/// Mean and sample standard deviation (0 for one sample).
[[nodiscard]] std::pair<double, double> mean_std(std::span<const double> v);

/// log10 cost averaged over traces; shorter traces are held at their last
/// value.
[[nodiscard]] LossCurve average_log_loss(std::string model,
                                         const std::vector<std::vector<double>> &traces);

// ---------------------------------------------------------------------------
// Reports

void write_results_csv(const std::vector<RunRecord> &records, const std::filesystem::path &file);
void write_loss_csv(const LossCurve &curve, const std::filesystem::path &file);
void write_regression_csv(const RegressionCurve &curve, const std::filesystem::path &file);
[[nodiscard]] LossCurve read_loss_csv(const std::filesystem::path &file, std::string model);
[[nodiscard]] RegressionCurve read_regression_csv(const std::filesystem::path &file,
                                                  std::string model);

[[nodiscard]] std::string regression_svg(const RegressionCurve &curve);
[[nodiscard]] std::string loss_svg(const std::vector<LossCurve> &curves);

/// results.csv, loss_<model>.csv, regression_<model>.csv/.svg and loss.svg.
/// Throws IoError when the directory is not writable.
void emit_reports(const BenchResult &result, const std::filesystem::path &dir);

/// Re-renders the SVGs from the CSVs that emit_reports wrote.
void render_reports(const std::filesystem::path &dir);

/// File-safe model label ("VQLS-GP MT HEA" → "VQLS-GP_MT_HEA").
[[nodiscard]] std::string slug(std::string_view model);

// ---------------------------------------------------------------------------
// Configuration

/// Parses a JSON document; unknown keys raise ConfigError. Missing keys keep
/// their defaults.
[[nodiscard]] ExperimentConfig config_from_json(const std::string &text);
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path &file);
[[nodiscard]] std::string config_to_json(const ExperimentConfig &config);

} // namespace vqlsgp::bench
