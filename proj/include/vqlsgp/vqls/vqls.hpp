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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "vqlsgp/circuits/circuits.hpp"
#include "vqlsgp/numerics/matrix.hpp"
#include "vqlsgp/numerics/optimize.hpp"
#include "vqlsgp/pauli/pauli.hpp"

namespace vqlsgp::vqls {

using circuits::ParamVector;

enum class CostKind { Local, Global };

/// How the expectation terms are obtained.
enum class Engine {
    /// One ancilla-controlled circuit per term; counts every test.
    HadamardTests,
    /// |ψ⟩ = Σ c_l P_l V|0⟩ is formed explicitly and the same term sums are
    /// read off by vector algebra. Analytic only.
    Statevector,
};

enum class GradientMethod { ParameterShift, FiniteDifference };

struct EvalOptions {
    Engine engine = Engine::Statevector;
    circuits::EvalMode mode = circuits::Analytic{};
};

/// A·x = b with A = Σ c_l P_l and |b⟩ = U|0⟩, b = rhs_norm·|b⟩.
struct VqlsProblem {
    pauli::DecomposedOperator decomposition;
    circuits::StatePrep rhs_prep;
    double rhs_norm = 1.0;
    circuits::AnsatzSpec ansatz;
    /// Dense A when known. Used for the invertibility check, the sign fix and
    /// the rescale; otherwise rebuilt from the decomposition.
    std::optional<numerics::DenseMatrix> matrix;

    [[nodiscard]] std::size_t n_qubits() const noexcept { return decomposition.n_qubits; }
    /// Throws DimensionMismatch unless every register size agrees.
    void validate() const;
};

/// Decomposes `a` (2^n square) and embeds b by amplitude embedding.
[[nodiscard]] VqlsProblem make_problem(const numerics::DenseMatrix &a, std::span<const double> b,
                                       circuits::AnsatzSpec ansatz,
                                       double cutoff = pauli::kDefaultCutoff);

struct VqlsConfig {
    CostKind cost = CostKind::Local;
    double tol = 1e-4;
    std::size_t max_iters = 1500;
    std::size_t restarts = 2;
    double learning_rate = 0.01;
    EvalOptions eval;
    GradientMethod gradient = GradientMethod::ParameterShift;
    double finite_difference_step = 1e-5;
    std::uint64_t seed = 0;

    /// Throws ConfigError on tol ≤ 0, max_iters = 0, a non-positive learning
    /// rate or shots with the statevector engine.
    void validate() const;
};

struct VqlsSolution {
    numerics::Vector x;
    ParamVector theta;
    /// Cost at every iteration of the returned run; entry k is iteration k+1.
    std::vector<double> cost_trace;
    /// Traces of all runs in restart order.
    std::vector<std::vector<double>> run_traces;
    bool converged = false;
    std::size_t iterations_used = 0;
    std::size_t restarts_used = 0;
    std::size_t best_run = 0;
    double final_cost = 1.0;
    /// ‖A·x − b‖ / ‖b‖ of the rescaled output.
    double relative_residual = 0.0;
};

/// Numerator and denominator of a normalised cost.
struct CostTerms {
    double norm = 0.0;
    double numerator = 0.0;
};

/// Shared state for repeated evaluations on one problem. Not thread-safe.
class CostEvaluator {
  public:
    CostEvaluator(const VqlsProblem &problem, EvalOptions options);

    /// ⟨ψ|ψ⟩ with |ψ⟩ = A·V(θ)|0⟩.
    double norm_term(std::span<const double> theta);
    /// |⟨b|ψ⟩|².
    double global_overlap_term(std::span<const double> theta);
    /// Σ_q ⟨ψ|U Z_q U†|ψ⟩.
    double local_numerator_term(std::span<const double> theta);

    CostTerms terms(std::span<const double> theta, CostKind kind);
    /// Terms at θ ± shift·e_k for every k. Statevector engine only; reuses
    /// the state in front of each parameterised gate.
    std::vector<std::pair<CostTerms, CostTerms>> shifted_terms(std::span<const double> theta,
                                                               CostKind kind, double shift);
    double cost(std::span<const double> theta, CostKind kind);

    [[nodiscard]] std::size_t tests_run() const noexcept { return executor_.tests_run(); }
    void reset_count() noexcept { executor_.reset_count(); }
    [[nodiscard]] const VqlsProblem &problem() const noexcept { return *problem_; }
    [[nodiscard]] Engine engine() const noexcept { return options_.engine; }

  private:
    void prepare_state(std::span<const double> theta);
    quantum::CircuitOp ansatz_op(std::span<const double> theta) const;
    void load_psi(std::span<const std::complex<double>> amps);
    CostTerms terms_from_psi(CostKind kind) const;
    double psi_norm() const;
    double psi_overlap() const;
    double psi_local() const;

    const VqlsProblem *problem_;
    EvalOptions options_;
    circuits::HadamardTestExecutor executor_;
    std::size_t n_;
    std::size_t dim_;
    quantum::CircuitOp ansatz_template_;
    std::vector<std::size_t> param_positions_;
    quantum::CircuitOp rhs_op_;
    std::vector<quantum::CircuitOp> pauli_ops_;
    // Statevector engine caches.
    std::vector<std::uint64_t> flips_;
    std::vector<std::vector<std::complex<double>>> phases_;
    std::vector<std::complex<double>> b_state_;
    std::vector<std::complex<double>> u_adjoint_; // row-major dim × dim
    std::vector<double> z_sum_;
    std::vector<std::complex<double>> psi_;
};

/// Maps (⟨ψ|ψ⟩, numerator) to C_L or C_G.
[[nodiscard]] double combine(const CostTerms &t, CostKind kind, std::size_t n_qubits);

[[nodiscard]] double norm_term(std::span<const double> theta, const VqlsProblem &problem,
                               const EvalOptions &options = {});
[[nodiscard]] double global_overlap_term(std::span<const double> theta,
                                         const VqlsProblem &problem,
                                         const EvalOptions &options = {});
/// C_G = 1 − |⟨b|ψ⟩|²/⟨ψ|ψ⟩.
[[nodiscard]] double global_cost(std::span<const double> theta, const VqlsProblem &problem,
                                 const EvalOptions &options = {});
/// C_L = 1/2 − (1/2n)·Σ_q ⟨ψ|U Z_q U†|ψ⟩/⟨ψ|ψ⟩.
[[nodiscard]] double local_cost(std::span<const double> theta, const VqlsProblem &problem,
                                const EvalOptions &options = {});

/// Same costs from the dense matrix A and explicit unitaries, without any
/// term decomposition. n ≤ 6.
[[nodiscard]] double direct_cost_oracle(std::span<const double> theta, const VqlsProblem &problem,
                                        CostKind kind);

/// Hadamard tests one cost evaluation issues in circuit mode.
[[nodiscard]] std::size_t hadamard_test_budget(std::size_t n_qubits, std::size_t n_terms,
                                               CostKind kind) noexcept;

[[nodiscard]] numerics::Vector cost_gradient(std::span<const double> theta,
                                             const VqlsProblem &problem,
                                             const VqlsConfig &config);
/// Gradient through an existing evaluator (reuses its caches).
[[nodiscard]] numerics::Vector cost_gradient(CostEvaluator &evaluator,
                                             std::span<const double> theta,
                                             const VqlsConfig &config);

/// Adam with restarts; deterministic given (problem, config.seed). Throws
/// SingularMatrix when A is numerically singular.
[[nodiscard]] VqlsSolution solve(const VqlsProblem &problem, const VqlsConfig &config);

/// Amplitudes of V(θ)|0⟩ as a real vector.
[[nodiscard]] numerics::Vector ansatz_amplitudes(const circuits::AnsatzSpec &spec,
                                                 std::span<const double> theta);

} // namespace vqlsgp::vqls
