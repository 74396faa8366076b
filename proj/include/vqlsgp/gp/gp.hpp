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
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "vqlsgp/numerics/matrix.hpp"

namespace vqlsgp::gp {

using numerics::DenseMatrix;
using numerics::Vector;

enum class KernelFamily { RBF, Matern52, MT };

struct Hyperparameters {
    double sigma = 1.0;
    double length = 1.0;
    /// Wendland₂ support radius; read only by MT.
    double taper = 0.64;
    double noise = 0.01;
};

struct KernelSpec {
    KernelFamily family = KernelFamily::RBF;
    Hyperparameters hyper;

    /// Throws InvalidArgument on non-positive σ, l or taper, or negative noise.
    void validate() const;
};

[[nodiscard]] std::string_view to_string(KernelFamily family) noexcept;
/// Accepts "RBF", "Matern52" and "MT"; throws ConfigError otherwise.
[[nodiscard]] KernelFamily parse_kernel_family(std::string_view text);

/// Inputs are rows of `x`; every row has the same dimension.
struct Dataset {
    std::vector<Vector> x;
    Vector y;

    static Dataset from_1d(std::span<const double> x, std::span<const double> y);
    [[nodiscard]] std::size_t size() const noexcept { return y.size(); }
    void validate() const;
};

[[nodiscard]] std::vector<Vector> points_1d(std::span<const double> x);

[[nodiscard]] double rbf(double h, double sigma, double length);
[[nodiscard]] double matern52(double h, double sigma, double length);
/// (1 − h/θ)₊⁶ (1 + 6h/θ + 35h²/3θ²).
[[nodiscard]] double wendland2(double h, double theta);
[[nodiscard]] double kernel_eval(const KernelSpec &spec, double h);

/// ∂k/∂σ and ∂k/∂l at distance h.
struct KernelGradient {
    double d_sigma = 0.0;
    double d_length = 0.0;
};
[[nodiscard]] KernelGradient kernel_derivatives(const KernelSpec &spec, double h);

[[nodiscard]] DenseMatrix covariance_matrix(const std::vector<Vector> &xa,
                                            const std::vector<Vector> &xb,
                                            const KernelSpec &spec);
/// K + σ_ε²·I on the training inputs.
[[nodiscard]] DenseMatrix noisy_covariance(const Dataset &train, const KernelSpec &spec);

/// (∂K̂/∂σ, ∂K̂/∂l) over the training inputs.
[[nodiscard]] std::pair<DenseMatrix, DenseMatrix> covariance_derivatives(const Dataset &train,
                                                                       const KernelSpec &spec);

struct CholeskySolver {};
struct ProvidedInverse {
    DenseMatrix inverse;
};
using PosteriorSolver = std::variant<CholeskySolver, ProvidedInverse>;

struct PosteriorResult {
    Vector mean;
    DenseMatrix covariance;
    std::optional<double> lml;

    [[nodiscard]] Vector variance() const;
};

/// μ* = K*ᵀK̂⁻¹y and Σ* = K** − K*ᵀK̂⁻¹K*. The Cholesky path also fills lml.
[[nodiscard]] PosteriorResult posterior(const Dataset &train, const std::vector<Vector> &x_star,
                                        const KernelSpec &spec,
                                        const PosteriorSolver &solver = CholeskySolver{});

/// −½yᵀα − ½log|K̂| − (N/2)log 2π.
[[nodiscard]] double log_marginal_likelihood(const Dataset &train, const KernelSpec &spec);

/// ∂LML/∂(σ, l), plus ∂LML/∂σ_ε² as a third entry when `include_noise`.
[[nodiscard]] Vector lml_gradient(const Dataset &train, const KernelSpec &spec,
                                  bool include_noise = false);

struct OptimizeOptions {
    std::size_t restarts = 2;
    std::uint64_t seed = 0;
    bool optimize_noise = false;
};

struct OptimizeResult {
    Hyperparameters hyper;
    double lml = 0.0;
    double gradient_norm = 0.0;
};

/// Maximises the LML over (log σ, log l) with L-BFGS, starting from (1, 1)
/// and then from `restarts` log-uniform points in [0.1, 10]². The taper
/// range, and the noise unless requested, stay at their configured values.
[[nodiscard]] OptimizeResult optimize_hyperparameters(const Dataset &train, const KernelSpec &spec,
                                                     const OptimizeOptions &options = {});

} // namespace vqlsgp::gp
