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
#include <functional>
#include <span>

#include "vqlsgp/numerics/matrix.hpp"

namespace vqlsgp::numerics {

struct AdamConfig {
    double learning_rate = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

/// Adam moments. Passed and returned by value so an update is a pure
/// function of its inputs.
struct AdamState {
    AdamConfig config;
    std::size_t step = 0;
    Vector first_moment;
    Vector second_moment;

    static AdamState make(std::size_t dim, AdamConfig config = {});
};

struct AdamStepResult {
    Vector params;
    AdamState state;
};

/// Bias-corrected Adam update. Throws NonFiniteGradient on NaN/Inf input.
[[nodiscard]] AdamStepResult adam_step(AdamState state, std::span<const double> params,
                                       std::span<const double> grad);

using ScalarFunction = std::function<double(std::span<const double>)>;
using GradientFunction = std::function<Vector(std::span<const double>)>;

struct QuasiNewtonConfig {
    std::size_t memory = 10;
    std::size_t max_iterations = 200;
    double gradient_tolerance = 1e-8;
    /// Armijo sufficient-decrease constant for the backtracking search.
    double armijo = 1e-4;
    std::size_t max_backtracks = 40;
};

struct QuasiNewtonResult {
    Vector x;
    double value = 0.0;
    double gradient_norm = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Limited-memory BFGS with a backtracking Armijo line search. Trial points
/// where `f` is non-finite are treated as failed steps; a non-finite value at
/// `x0` raises NonFiniteObjective.
[[nodiscard]] QuasiNewtonResult quasi_newton_minimize(const ScalarFunction &f,
                                                      const GradientFunction &grad_f,
                                                      std::span<const double> x0,
                                                      const QuasiNewtonConfig &config = {});

/// Central differences (f(x + h·e_i) − f(x − h·e_i)) / 2h.
[[nodiscard]] Vector finite_difference_gradient(const ScalarFunction &f,
                                                std::span<const double> x, double h);

} // namespace vqlsgp::numerics
