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

#include "vqlsgp/error.hpp"
#include "vqlsgp/vqls/vqls.hpp"

namespace vqlsgp::vqls {

using circuits::Part;
using quantum::Circuit;
using quantum::CircuitOp;
using quantum::Complex;
using quantum::StateVector;

void VqlsProblem::validate() const {
    const std::size_t n = decomposition.n_qubits;
    if (n == 0 || ansatz.n_qubits != n) {
        throw Error(ErrorCode::DimensionMismatch, "ansatz and operator qubit counts differ");
    }
    if (const auto *a = std::get_if<circuits::AmplitudePrep>(&rhs_prep.kind)) {
        if (a->amplitudes.size() != (std::size_t{1} << n)) {
            throw Error(ErrorCode::DimensionMismatch, "rhs length is not 2^n");
        }
    }
    if (matrix && (matrix->rows() != (std::size_t{1} << n) || !matrix->is_square())) {
        throw Error(ErrorCode::DimensionMismatch, "dense matrix does not match the operator");
    }
    if (!(rhs_norm > 0.0)) {
        throw Error(ErrorCode::ZeroVector, "rhs norm must be positive");
    }
}

VqlsProblem make_problem(const numerics::DenseMatrix &a, std::span<const double> b,
                         circuits::AnsatzSpec ansatz, double cutoff) {
    VqlsProblem p{pauli::decompose(a, cutoff), circuits::StatePrep::amplitude({b.begin(), b.end()}),
                  numerics::norm2(b), std::move(ansatz), a};
    p.validate();
    return p;
}

void VqlsConfig::validate() const {
    if (!(tol > 0.0)) {
        throw Error(ErrorCode::ConfigError, "tol must be positive");
    }
    if (max_iters == 0) {
        throw Error(ErrorCode::ConfigError, "max_iters must be at least 1");
    }
    if (!(learning_rate > 0.0)) {
        throw Error(ErrorCode::ConfigError, "learning rate must be positive");
    }
    if (eval.engine == Engine::Statevector && std::holds_alternative<circuits::Shots>(eval.mode)) {
        throw Error(ErrorCode::ConfigError, "shot sampling needs the Hadamard-test engine");
    }
}

double combine(const CostTerms &t, CostKind kind, std::size_t n_qubits) {
    if (kind == CostKind::Global) {
        return 1.0 - t.numerator / t.norm;
    }
    return 0.5 - t.numerator / (2.0 * static_cast<double>(n_qubits) * t.norm);
}

std::size_t hadamard_test_budget(std::size_t n, std::size_t l, CostKind kind) noexcept {
    const std::size_t pairs = l * (l - 1) / 2;
    if (kind == CostKind::Global) {
        return pairs + 2 * l;
    }
    return pairs + n * pairs + n * l;
}

namespace {

StateVector run(std::size_t n, const CircuitOp &op) {
    StateVector s(n);
    s.apply(op);
    return s;
}

void check_norm(double norm) {
    if (!std::isfinite(norm) || norm <= 1e-14) {
        throw Error(ErrorCode::NonPositiveNorm, "<psi|psi> = " + std::to_string(norm));
    }
}

CircuitOp z_on(std::size_t q) { return CircuitOp{{quantum::Gate::z(q)}, std::nullopt}; }

} // namespace

CostEvaluator::CostEvaluator(const VqlsProblem &problem, EvalOptions options)
    : problem_(&problem), options_(options), executor_(options.mode), n_(problem.n_qubits()),
      dim_(std::size_t{1} << n_) {
    problem.validate();
    const ParamVector zeros(problem.ansatz.parameter_count(), 0.0);
    ansatz_template_ = circuits::build_ansatz(problem.ansatz, zeros);
    param_positions_ = circuits::parameter_gate_indices(problem.ansatz);
    rhs_op_ = problem.rhs_prep.circuit(n_);
    for (const auto &t : problem.decomposition.terms) {
        pauli_ops_.push_back(t.string.as_circuit_op());
    }
    if (options_.engine != Engine::Statevector) {
        return;
    }
    for (const auto &t : problem.decomposition.terms) {
        const auto m = pauli::pauli_to_matrix(t.string);
        std::uint64_t flip = 0;
        std::vector<Complex> phase(dim_);
        for (std::size_t j = 0; j < dim_; ++j) {
            if (m(0, j) != Complex{0.0, 0.0}) {
                flip = j;
            }
        }
        for (std::size_t i = 0; i < dim_; ++i) {
            phase[i] = m(i, i ^ flip);
        }
        flips_.push_back(flip);
        phases_.push_back(std::move(phase));
    }
    const StateVector b = run(n_, rhs_op_);
    b_state_.assign(b.amplitudes().begin(), b.amplitudes().end());
    u_adjoint_.assign(dim_ * dim_, Complex{0.0, 0.0});
    for (std::size_t j = 0; j < dim_; ++j) {
        std::vector<Complex> e(dim_, Complex{0.0, 0.0});
        e[j] = 1.0;
        StateVector col(n_, std::move(e));
        col.apply(rhs_op_);
        for (std::size_t i = 0; i < dim_; ++i) {
            u_adjoint_[j * dim_ + i] = std::conj(col[i]);
        }
    }
    z_sum_.assign(dim_, 0.0);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t q = 0; q < n_; ++q) {
            z_sum_[i] += ((i >> (n_ - 1 - q)) & 1U) != 0 ? -1.0 : 1.0;
        }
    }
}

CircuitOp CostEvaluator::ansatz_op(std::span<const double> theta) const {
    if (theta.size() != param_positions_.size()) {
        throw Error(ErrorCode::ParamCountMismatch, "theta length does not match the ansatz");
    }
    CircuitOp op = ansatz_template_;
    for (std::size_t k = 0; k < theta.size(); ++k) {
        op.gates[param_positions_[k]].angle = theta[k];
    }
    return op;
}

void CostEvaluator::prepare_state(std::span<const double> theta) {
    const StateVector x = run(n_, ansatz_op(theta));
    load_psi(x.amplitudes());
}

CostTerms CostEvaluator::terms_from_psi(CostKind kind) const {
    CostTerms t;
    t.norm = psi_norm();
    check_norm(t.norm);
    t.numerator = kind == CostKind::Global ? psi_overlap() : psi_local();
    return t;
}

std::vector<std::pair<CostTerms, CostTerms>>
CostEvaluator::shifted_terms(std::span<const double> theta, CostKind kind, double shift) {
    if (options_.engine != Engine::Statevector) {
        throw Error(ErrorCode::InvalidArgument, "shifted_terms needs the statevector engine");
    }
    const CircuitOp op = ansatz_op(theta);
    const auto &gates = op.gates;
    // States just before each parameterised gate, shared by both shifts.
    std::vector<StateVector> prefix;
    prefix.reserve(theta.size());
    StateVector s(n_);
    std::size_t next = 0;
    for (std::size_t k = 0; k < theta.size(); ++k) {
        const std::size_t pos = param_positions_[k];
        if (pos < next) {
            throw Error(ErrorCode::InvalidArgument, "parameter gates out of order");
        }
        for (; next < pos; ++next) {
            s.apply(gates[next]);
        }
        prefix.push_back(s);
    }
    std::vector<std::pair<CostTerms, CostTerms>> out(theta.size());
    for (std::size_t k = 0; k < theta.size(); ++k) {
        const std::size_t pos = param_positions_[k];
        for (int sign : {1, -1}) {
            StateVector t = prefix[k];
            quantum::Gate g = gates[pos];
            g.angle = theta[k] + sign * shift;
            t.apply(g);
            for (std::size_t i = pos + 1; i < gates.size(); ++i) {
                t.apply(gates[i]);
            }
            load_psi(t.amplitudes());
            (sign > 0 ? out[k].first : out[k].second) = terms_from_psi(kind);
        }
    }
    return out;
}

void CostEvaluator::load_psi(std::span<const Complex> amps) {
    psi_.assign(dim_, Complex{0.0, 0.0});
    const auto &terms = problem_->decomposition.terms;
    for (std::size_t l = 0; l < terms.size(); ++l) {
        const double c = terms[l].coefficient;
        const auto &phase = phases_[l];
        const std::uint64_t flip = flips_[l];
        for (std::size_t i = 0; i < dim_; ++i) {
            psi_[i] += c * phase[i] * amps[i ^ flip];
        }
    }
}

double CostEvaluator::psi_norm() const {
    double norm = 0.0;
    for (const Complex &a : psi_) {
        norm += std::norm(a);
    }
    return norm;
}

double CostEvaluator::psi_overlap() const {
    Complex overlap{0.0, 0.0};
    for (std::size_t i = 0; i < dim_; ++i) {
        overlap += std::conj(b_state_[i]) * psi_[i];
    }
    return std::norm(overlap);
}

double CostEvaluator::psi_local() const {
    double total = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        Complex w{0.0, 0.0};
        const Complex *row = &u_adjoint_[i * dim_];
        for (std::size_t j = 0; j < dim_; ++j) {
            w += row[j] * psi_[j];
        }
        total += z_sum_[i] * std::norm(w);
    }
    return total;
}

double CostEvaluator::norm_term(std::span<const double> theta) {
    const auto &terms = problem_->decomposition.terms;
    double norm = 0.0;
    if (options_.engine == Engine::Statevector) {
        prepare_state(theta);
        norm = psi_norm();
    } else {
        const CircuitOp v = ansatz_op(theta);
        const CircuitOp v_dag = v.adjoint();
        for (const auto &t : terms) {
            norm += t.coefficient * t.coefficient;
        }
        for (std::size_t l = 0; l < terms.size(); ++l) {
            for (std::size_t m = l + 1; m < terms.size(); ++m) {
                const double re =
                    executor_.run(n_, Circuit{v, pauli_ops_[m], pauli_ops_[l], v_dag}, Part::Real);
                norm += 2.0 * terms[l].coefficient * terms[m].coefficient * re;
            }
        }
    }
    check_norm(norm);
    return norm;
}

double CostEvaluator::global_overlap_term(std::span<const double> theta) {
    if (options_.engine == Engine::Statevector) {
        prepare_state(theta);
        return psi_overlap();
    }
    const auto &terms = problem_->decomposition.terms;
    const CircuitOp v = ansatz_op(theta);
    const CircuitOp u_dag = rhs_op_.adjoint();
    double re = 0.0;
    double im = 0.0;
    for (std::size_t l = 0; l < terms.size(); ++l) {
        const Circuit w{v, pauli_ops_[l], u_dag};
        re += terms[l].coefficient * executor_.run(n_, w, Part::Real);
        im += terms[l].coefficient * executor_.run(n_, w, Part::Imaginary);
    }
    return re * re + im * im;
}

double CostEvaluator::local_numerator_term(std::span<const double> theta) {
    if (options_.engine == Engine::Statevector) {
        prepare_state(theta);
        return psi_local();
    }
    const auto &terms = problem_->decomposition.terms;
    const CircuitOp v = ansatz_op(theta);
    const CircuitOp v_dag = v.adjoint();
    const CircuitOp u_dag = rhs_op_.adjoint();
    double total = 0.0;
    for (std::size_t q = 0; q < n_; ++q) {
        const CircuitOp z = z_on(q);
        for (std::size_t l = 0; l < terms.size(); ++l) {
            const double cl = terms[l].coefficient;
            const Circuit diag{v, pauli_ops_[l], u_dag, z, rhs_op_, pauli_ops_[l], v_dag};
            total += cl * cl * executor_.run(n_, diag, Part::Real);
            for (std::size_t m = l + 1; m < terms.size(); ++m) {
                const Circuit cross{v, pauli_ops_[m], u_dag, z, rhs_op_, pauli_ops_[l], v_dag};
                total += 2.0 * cl * terms[m].coefficient * executor_.run(n_, cross, Part::Real);
            }
        }
    }
    return total;
}

CostTerms CostEvaluator::terms(std::span<const double> theta, CostKind kind) {
    CostTerms t;
    if (options_.engine == Engine::Statevector) {
        prepare_state(theta);
        return terms_from_psi(kind);
    }
    t.norm = norm_term(theta);
    t.numerator = kind == CostKind::Global ? global_overlap_term(theta) : local_numerator_term(theta);
    return t;
}

double CostEvaluator::cost(std::span<const double> theta, CostKind kind) {
    return combine(terms(theta, kind), kind, n_);
}

double norm_term(std::span<const double> theta, const VqlsProblem &problem,
                 const EvalOptions &options) {
    CostEvaluator e(problem, options);
    return e.norm_term(theta);
}

double global_overlap_term(std::span<const double> theta, const VqlsProblem &problem,
                           const EvalOptions &options) {
    CostEvaluator e(problem, options);
    return e.global_overlap_term(theta);
}

double global_cost(std::span<const double> theta, const VqlsProblem &problem,
                   const EvalOptions &options) {
    CostEvaluator e(problem, options);
    return e.cost(theta, CostKind::Global);
}

double local_cost(std::span<const double> theta, const VqlsProblem &problem,
                  const EvalOptions &options) {
    CostEvaluator e(problem, options);
    return e.cost(theta, CostKind::Local);
}

numerics::Vector ansatz_amplitudes(const circuits::AnsatzSpec &spec,
                                   std::span<const double> theta) {
    const StateVector s = run(spec.n_qubits, circuits::build_ansatz(spec, theta));
    numerics::Vector x(s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) {
        x[i] = s[i].real();
    }
    return x;
}

double direct_cost_oracle(std::span<const double> theta, const VqlsProblem &problem,
                          CostKind kind) {
    problem.validate();
    const std::size_t n = problem.n_qubits();
    const std::size_t dim = std::size_t{1} << n;
    const numerics::DenseMatrix a =
        problem.matrix ? *problem.matrix : pauli::reconstruct(problem.decomposition);
    const StateVector x = run(n, circuits::build_ansatz(problem.ansatz, theta));
    std::vector<Complex> psi(dim, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            psi[i] += a(i, j) * x[j];
        }
    }
    double norm = 0.0;
    for (const Complex &v : psi) {
        norm += std::norm(v);
    }
    const CircuitOp u = problem.rhs_prep.circuit(n);
    if (kind == CostKind::Global) {
        const StateVector b = run(n, u);
        Complex overlap{0.0, 0.0};
        for (std::size_t i = 0; i < dim; ++i) {
            overlap += std::conj(b[i]) * psi[i];
        }
        return 1.0 - std::norm(overlap) / norm;
    }
    // Dense U, column j = U|j⟩.
    std::vector<Complex> umat(dim * dim);
    for (std::size_t j = 0; j < dim; ++j) {
        std::vector<Complex> e(dim, Complex{0.0, 0.0});
        e[j] = 1.0;
        StateVector col(n, std::move(e));
        col.apply(u);
        for (std::size_t i = 0; i < dim; ++i) {
            umat[i * dim + j] = col[i];
        }
    }
    double total = 0.0;
    for (std::size_t q = 0; q < n; ++q) {
        // M_q = U Z_q U†, then ⟨ψ|M_q|ψ⟩.
        std::vector<Complex> m(dim * dim, Complex{0.0, 0.0});
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                Complex acc{0.0, 0.0};
                for (std::size_t k = 0; k < dim; ++k) {
                    const double z = ((k >> (n - 1 - q)) & 1U) != 0 ? -1.0 : 1.0;
                    acc += umat[i * dim + k] * z * std::conj(umat[j * dim + k]);
                }
                m[i * dim + j] = acc;
            }
        }
        Complex e{0.0, 0.0};
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                e += std::conj(psi[i]) * m[i * dim + j] * psi[j];
            }
        }
        total += e.real();
    }
    return 0.5 - total / (2.0 * static_cast<double>(n) * norm);
}

numerics::Vector cost_gradient(CostEvaluator &evaluator, std::span<const double> theta,
                               const VqlsConfig &config) {
    const std::size_t n = evaluator.problem().n_qubits();
    const CostKind kind = config.cost;
    if (config.gradient == GradientMethod::FiniteDifference) {
        return numerics::finite_difference_gradient(
            [&](std::span<const double> t) { return evaluator.cost(t, kind); }, theta,
            config.finite_difference_step);
    }
    const CostTerms base = evaluator.terms(theta, kind);
    const double scale = kind == CostKind::Global ? 1.0 : 1.0 / (2.0 * static_cast<double>(n));
    numerics::Vector grad(theta.size());
    constexpr double kShift = std::numbers::pi / 2.0;
    std::vector<std::pair<CostTerms, CostTerms>> shifts;
    if (evaluator.engine() == Engine::Statevector) {
        shifts = evaluator.shifted_terms(theta, kind, kShift);
    } else {
        ParamVector shifted(theta.begin(), theta.end());
        for (std::size_t k = 0; k < theta.size(); ++k) {
            shifted[k] = theta[k] + kShift;
            const CostTerms plus = evaluator.terms(shifted, kind);
            shifted[k] = theta[k] - kShift;
            const CostTerms minus = evaluator.terms(shifted, kind);
            shifted[k] = theta[k];
            shifts.emplace_back(plus, minus);
        }
    }
    for (std::size_t k = 0; k < theta.size(); ++k) {
        const auto &[plus, minus] = shifts[k];
        const double d_norm = 0.5 * (plus.norm - minus.norm);
        const double d_num = 0.5 * (plus.numerator - minus.numerator);
        grad[k] = -scale * (d_num * base.norm - base.numerator * d_norm) / (base.norm * base.norm);
    }
    return grad;
}

numerics::Vector cost_gradient(std::span<const double> theta, const VqlsProblem &problem,
                               const VqlsConfig &config) {
    CostEvaluator e(problem, config.eval);
    return cost_gradient(e, theta, config);
}

} // namespace vqlsgp::vqls
