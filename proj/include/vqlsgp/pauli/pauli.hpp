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
#include <string>
#include <string_view>
#include <vector>

#include "vqlsgp/numerics/matrix.hpp"
#include "vqlsgp/quantum/state_vector.hpp"

namespace vqlsgp::pauli {

enum class Letter : unsigned char { I = 0, X = 1, Y = 2, Z = 3 };

/// Tensor product of single-qubit Paulis; letter k acts on qubit k.
class PauliString {
  public:
    PauliString() = default;
    explicit PauliString(std::vector<Letter> letters) : letters_(std::move(letters)) {}

    /// Parses text such as "IXZZ"; throws InvalidArgument on other letters.
    static PauliString parse(std::string_view text);
    /// The string with index `code` in base-4 enumeration order I<X<Y<Z,
    /// most significant letter first.
    static PauliString from_index(std::size_t code, std::size_t n_qubits);

    [[nodiscard]] std::size_t size() const noexcept { return letters_.size(); }
    [[nodiscard]] Letter operator[](std::size_t q) const noexcept { return letters_[q]; }
    [[nodiscard]] std::size_t count(Letter l) const noexcept;
    [[nodiscard]] std::string text() const;

    /// X/Y/Z gates on the non-identity positions.
    [[nodiscard]] quantum::CircuitOp as_circuit_op() const;

    friend auto operator<=>(const PauliString &, const PauliString &) = default;

  private:
    std::vector<Letter> letters_;
};

struct ComplexMatrix {
    std::size_t dim = 0;
    std::vector<std::complex<double>> entries; // row-major

    std::complex<double> operator()(std::size_t i, std::size_t j) const {
        return entries[i * dim + j];
    }
};

[[nodiscard]] ComplexMatrix pauli_to_matrix(const PauliString &s);

struct PauliTerm {
    double coefficient = 0.0;
    PauliString string;
};

/// A = Σ c_l P_l with real coefficients, no duplicate strings, sorted by
/// string text.
struct DecomposedOperator {
    std::size_t n_qubits = 0;
    std::vector<PauliTerm> terms;

    [[nodiscard]] std::size_t size() const noexcept { return terms.size(); }
};

inline constexpr double kDefaultCutoff = 1e-10;

/// Trace-inner-product decomposition c_l = Tr(P_l·A)/2^n over all 4^n
/// strings; terms with |c_l| ≤ cutoff are dropped. Throws NotPowerOfTwo
/// when the dimension is not 2^n and NonRealInput when a coefficient has an
/// imaginary part above 1e-10.
[[nodiscard]] DecomposedOperator decompose(const numerics::DenseMatrix &a,
                                           double cutoff = kDefaultCutoff);

/// Σ c_l · matrix(P_l). Real because every retained coefficient is real and
/// strings with an odd Y count cancel for real inputs.
[[nodiscard]] numerics::DenseMatrix reconstruct(const DecomposedOperator &d);

/// Result of embedding an N-dimensional system into the next power of two.
struct PaddedSystem {
    numerics::DenseMatrix matrix;
    numerics::Vector rhs;
    std::size_t original_dim = 0;
};

/// Pads with an identity block and zero right-hand side entries.
[[nodiscard]] PaddedSystem pad_system(const numerics::DenseMatrix &a,
                                      std::span<const double> b);

[[nodiscard]] std::size_t next_power_of_two(std::size_t n);
[[nodiscard]] bool is_power_of_two(std::size_t n) noexcept;
[[nodiscard]] std::size_t log2_exact(std::size_t n);

/// P|ψ⟩ computed by index permutation and phases, without a circuit.
void apply_pauli(const PauliString &s, std::span<const std::complex<double>> in,
                 std::span<std::complex<double>> out);

} // namespace vqlsgp::pauli
