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

#include <cmath>
#include <numbers>
#include <random>

#include "vqlsgp/error.hpp"
#include "vqlsgp/vqls/vqls.hpp"

namespace vqlsgp::vqls {

namespace {

struct Run {
    ParamVector theta;
    std::vector<double> trace;
    bool converged = false;
};

ParamVector initial_theta(std::size_t count, std::uint64_t seed, std::size_t restart) {
    std::seed_seq seq{seed, static_cast<std::uint64_t>(restart)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> dist(0.0, 2.0 * std::numbers::pi);
    ParamVector theta(count);
    for (double &t : theta) {
        t = dist(rng);
    }
    return theta;
}

// Loop order per iteration: cost, convergence check, gradient, update. The
// returned θ is the one whose cost was last recorded.
Run optimise(CostEvaluator &evaluator, const VqlsConfig &config, ParamVector theta) {
    Run run;
    numerics::AdamConfig adam;
    adam.learning_rate = config.learning_rate;
    numerics::AdamState state = numerics::AdamState::make(theta.size(), adam);
    run.trace.reserve(config.max_iters);
    for (std::size_t it = 1; it <= config.max_iters; ++it) {
        const double c = evaluator.cost(theta, config.cost);
        if (!std::isfinite(c)) {
            throw Error(ErrorCode::NonFiniteObjective, "VQLS cost is not finite");
        }
        run.trace.push_back(c);
        if (c < config.tol) {
            run.converged = true;
            break;
        }
        if (it == config.max_iters) {
            break;
        }
        const numerics::Vector grad = cost_gradient(evaluator, theta, config);
        auto step = numerics::adam_step(std::move(state), theta, grad);
        theta = std::move(step.params);
        state = std::move(step.state);
    }
    run.theta = std::move(theta);
    return run;
}

numerics::Vector rhs_vector(const VqlsProblem &problem) {
    const std::size_t n = problem.n_qubits();
    quantum::StateVector b(n);
    b.apply(problem.rhs_prep.circuit(n));
    numerics::Vector out(b.dim());
    for (std::size_t i = 0; i < b.dim(); ++i) {
        out[i] = problem.rhs_norm * b[i].real();
    }
    return out;
}

} // namespace

VqlsSolution solve(const VqlsProblem &problem, const VqlsConfig &config) {
    problem.validate();
    config.validate();
    const numerics::DenseMatrix a =
        problem.matrix ? *problem.matrix : pauli::reconstruct(problem.decomposition);
    const numerics::LuResult lu = numerics::lu_determinant(a);
    if (lu.min_pivot <= 1e-14 * std::max(1.0, lu.max_pivot)) {
        throw Error(ErrorCode::SingularMatrix, "system matrix is numerically singular");
    }

    CostEvaluator evaluator(problem, config.eval);
    VqlsSolution sol;
    std::optional<Run> best;
    for (std::size_t r = 0; r <= config.restarts; ++r) {
        Run run = optimise(evaluator, config,
                           initial_theta(problem.ansatz.parameter_count(), config.seed, r));
        sol.iterations_used += run.trace.size();
        sol.restarts_used = r;
        sol.run_traces.push_back(run.trace);
        const bool better = !best || run.trace.back() < best->trace.back();
        const bool done = run.converged;
        if (better) {
            best = std::move(run);
            sol.best_run = r;
        }
        if (done) {
            break;
        }
    }

    sol.theta = best->theta;
    sol.cost_trace = best->trace;
    sol.converged = best->converged;
    sol.final_cost = best->trace.back();

    const numerics::Vector b = rhs_vector(problem);
    numerics::Vector x = ansatz_amplitudes(problem.ansatz, sol.theta);
    numerics::Vector ax = a * x;
    const double ax_norm = numerics::norm2(ax);
    if (!(ax_norm > 0.0)) {
        throw Error(ErrorCode::NonPositiveNorm, "A·x vanished during rescale");
    }
    const double scale = problem.rhs_norm / ax_norm;
    double plus = 0.0;
    double minus = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        plus += std::pow(scale * ax[i] - b[i], 2);
        minus += std::pow(-scale * ax[i] - b[i], 2);
    }
    const double sign = minus < plus ? -1.0 : 1.0;
    for (double &v : x) {
        v *= sign * scale;
    }
    sol.x = std::move(x);
    sol.relative_residual = std::sqrt(std::min(plus, minus)) / problem.rhs_norm;
    return sol;
}

} // namespace vqlsgp::vqls
