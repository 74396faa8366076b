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
#include <variant>

#include "vqlsgp/numerics/matrix.hpp"
#include "vqlsgp/quantum/state_vector.hpp"

namespace vqlsgp::circuits {

using quantum::Circuit;
using quantum::CircuitOp;
using ParamVector = std::vector<double>;

// ---------------------------------------------------------------------------
// State preparation

/// X gates on the set bits of i, so the op maps |0…0⟩ to |i⟩.
[[nodiscard]] CircuitOp basis_embedding(std::size_t index, std::size_t n_qubits);

/// Prepares y/‖y‖ from |0…0⟩ with a cascade of uniformly-controlled
/// Y-rotations, each compiled to RY and CNOT (as H·CZ·H). All amplitudes
/// are real and their signs are carried by the rotation angles.
[[nodiscard]] CircuitOp amplitude_embedding(std::span<const double> y);

struct BasisPrep {
    std::size_t index = 0;
};
struct AmplitudePrep {
    numerics::Vector amplitudes;
};

/// U with |b⟩ = U|0⟩.
struct StatePrep {
    std::variant<BasisPrep, AmplitudePrep> kind;

    static StatePrep basis(std::size_t i) { return {BasisPrep{i}}; }
    static StatePrep amplitude(numerics::Vector v) { return {AmplitudePrep{std::move(v)}}; }

    [[nodiscard]] CircuitOp circuit(std::size_t n_qubits) const;
    [[nodiscard]] bool is_basis() const noexcept {
        return std::holds_alternative<BasisPrep>(kind);
    }
};

// ---------------------------------------------------------------------------
// Ansätze

enum class AnsatzKind { HEA, UHEA, MUHEA };

/// Entangler layout inside each layer.
enum class CzPattern {
    /// (0,1), (1,2), …, (n−2, n−1) in every layer.
    Linear,
    /// Even pairs on even layers, odd pairs on odd layers.
    Alternating,
};

struct AnsatzSpec {
    AnsatzKind kind = AnsatzKind::HEA;
    std::size_t n_qubits = 1;
    std::size_t layers = 0;
    /// Required for UHEA and MUHEA; normalised before embedding.
    std::optional<numerics::Vector> reupload_vector;
    CzPattern cz_pattern = CzPattern::Linear;

    [[nodiscard]] std::size_t parameter_count() const noexcept {
        return n_qubits * (layers + 1);
    }
};

/// HEA: RY column, then `layers` × [CZ chain, RY column].
/// UHEA: U_y followed by the HEA.
/// MUHEA: RY column, then `layers` × [U_y, CZ chain, RY column].
/// θ is laid out column by column: θ[c·n + q] drives qubit q in column c.
[[nodiscard]] CircuitOp build_ansatz(const AnsatzSpec &spec, std::span<const double> theta);

/// Positions inside build_ansatz's gate list that hold each parameter; the
/// entry for θ_k is the index of its RY gate.
[[nodiscard]] std::vector<std::size_t> parameter_gate_indices(const AnsatzSpec &spec);

[[nodiscard]] std::string_view to_string(AnsatzKind kind) noexcept;
[[nodiscard]] AnsatzKind parse_ansatz_kind(std::string_view text);

// ---------------------------------------------------------------------------
// Hadamard test

enum class Part { Real, Imaginary };

struct Analytic {};
struct Shots {
    std::size_t count = 1000;
    std::uint64_t seed = 0;
};
using EvalMode = std::variant<Analytic, Shots>;

/// Estimates Re or Im of ⟨0|W|0⟩ on `system_qubits` qubits using one extra
/// ancilla, which sits after the system register (index = system_qubits).
struct HadamardTestSpec {
    std::size_t system_qubits = 1;
    std::size_t ancilla = 1;
    Circuit op;
    Part part = Part::Real;
};

/// Runs H (S†) controlled-W H on the ancilla and returns 2·P(0) − 1.
[[nodiscard]] double hadamard_test(const HadamardTestSpec &spec, const EvalMode &mode);

/// Counting wrapper used by the cost functions. Shot seeds are derived from
/// (base seed, call index) so repeated evaluation is reproducible.
class HadamardTestExecutor {
  public:
    explicit HadamardTestExecutor(EvalMode mode = Analytic{}) : mode_(mode) {}

    double run(std::size_t system_qubits, Circuit op, Part part);

    [[nodiscard]] std::size_t tests_run() const noexcept { return tests_run_; }
    void reset_count() noexcept { tests_run_ = 0; }
    [[nodiscard]] const EvalMode &mode() const noexcept { return mode_; }

  private:
    EvalMode mode_;
    std::size_t tests_run_ = 0;
};

} // namespace vqlsgp::circuits
