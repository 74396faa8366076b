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
#include <random>
#include <span>
#include <string>
#include <vector>

namespace vqlsgp::quantum {

using Complex = std::complex<double>;

/// Largest register the simulator accepts.
inline constexpr std::size_t kMaxQubits = 16;

enum class GateKind {
    Identity,
    RotY,
    Hadamard,
    PauliX,
    PauliY,
    PauliZ,
    S,
    SDagger,
    CZ,
};

/// A primitive gate. Single-qubit kinds use `target`; CZ also uses
/// `partner`. RotY carries its angle.
struct Gate {
    GateKind kind = GateKind::Identity;
    std::size_t target = 0;
    std::size_t partner = 0;
    double angle = 0.0;

    static Gate identity(std::size_t q) { return {GateKind::Identity, q, 0, 0.0}; }
    static Gate ry(std::size_t q, double theta) { return {GateKind::RotY, q, 0, theta}; }
    static Gate h(std::size_t q) { return {GateKind::Hadamard, q, 0, 0.0}; }
    static Gate x(std::size_t q) { return {GateKind::PauliX, q, 0, 0.0}; }
    static Gate y(std::size_t q) { return {GateKind::PauliY, q, 0, 0.0}; }
    static Gate z(std::size_t q) { return {GateKind::PauliZ, q, 0, 0.0}; }
    static Gate s(std::size_t q) { return {GateKind::S, q, 0, 0.0}; }
    static Gate sdg(std::size_t q) { return {GateKind::SDagger, q, 0, 0.0}; }
    static Gate cz(std::size_t a, std::size_t b) { return {GateKind::CZ, a, b, 0.0}; }

    [[nodiscard]] bool is_two_qubit() const noexcept { return kind == GateKind::CZ; }
    [[nodiscard]] bool acts_on(std::size_t q) const noexcept {
        return target == q || (is_two_qubit() && partner == q);
    }
    [[nodiscard]] Gate adjoint() const;

    friend bool operator==(const Gate &, const Gate &) = default;
};

/// An ordered gate list, optionally applied under a single control qubit.
struct CircuitOp {
    std::vector<Gate> gates;
    std::optional<std::size_t> control;

    [[nodiscard]] CircuitOp adjoint() const;
    [[nodiscard]] CircuitOp controlled_by(std::size_t qubit) const;
};

using Circuit = std::vector<CircuitOp>;

[[nodiscard]] Circuit adjoint(const Circuit &circuit);

/// Plain-text gate list, one gate per line, for debugging dumps.
[[nodiscard]] std::string to_string(const CircuitOp &op);
[[nodiscard]] std::string to_string(const Circuit &circuit);

/// Dense register of 2^n amplitudes. Qubit 0 is the most significant bit of
/// the basis index.
class StateVector {
  public:
    /// |0…0⟩ on n qubits; throws QubitCountOutOfRange outside [1, kMaxQubits].
    explicit StateVector(std::size_t n_qubits);
    StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dim() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] const Complex &operator[](std::size_t i) const noexcept { return amps_[i]; }
    [[nodiscard]] double norm() const noexcept;

    /// Bit mask of qubit q within a basis index.
    [[nodiscard]] std::uint64_t mask(std::size_t q) const noexcept {
        return std::uint64_t{1} << (n_qubits_ - 1 - q);
    }

    /// In-place application. `controls` is a bit mask of qubits that must be
    /// |1⟩ for the gate to act.
    void apply(const Gate &gate, std::uint64_t controls = 0);
    void apply(const CircuitOp &op);
    void apply(const Circuit &circuit);

  private:
    void check_target(std::size_t q) const;

    std::size_t n_qubits_;
    std::vector<Complex> amps_;
};

[[nodiscard]] StateVector zero_state(std::size_t n);
[[nodiscard]] StateVector apply_gate(StateVector state, const Gate &gate);

/// Applies `op` on the control=|1⟩ subspace of `control`. Throws
/// ControlTargetOverlap if the control is among the op's targets.
[[nodiscard]] StateVector apply_controlled(StateVector state, const CircuitOp &op,
                                           std::size_t control);

[[nodiscard]] double prob_zero(const StateVector &state, std::size_t qubit);

/// Fraction of `shots` Bernoulli draws that land on outcome 0.
[[nodiscard]] double sample_prob_zero(const StateVector &state, std::size_t qubit,
                                      std::size_t shots, std::mt19937_64 &rng);

/// ⟨a|b⟩.
[[nodiscard]] Complex inner_product(const StateVector &a, const StateVector &b);

} // namespace vqlsgp::quantum
