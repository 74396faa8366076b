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

#include <bit>
#include <cmath>

#include "vqlsgp/circuits/circuits.hpp"
#include "vqlsgp/error.hpp"
#include "vqlsgp/pauli/pauli.hpp"

namespace vqlsgp::circuits {

using quantum::Gate;

CircuitOp basis_embedding(std::size_t index, std::size_t n_qubits) {
    if (n_qubits < 1 || n_qubits > quantum::kMaxQubits) {
        throw Error(ErrorCode::QubitCountOutOfRange, "basis embedding register");
    }
    if (index >= (std::size_t{1} << n_qubits)) {
        throw Error(ErrorCode::IndexOutOfRange, "basis index " + std::to_string(index) +
                                                    " needs more than " +
                                                    std::to_string(n_qubits) + " qubits");
    }
    CircuitOp op;
    for (std::size_t q = 0; q < n_qubits; ++q) {
        if (((index >> (n_qubits - 1 - q)) & 1U) != 0) {
            op.gates.push_back(Gate::x(q));
        }
    }
    return op;
}

namespace {

std::size_t gray(std::size_t i) { return i ^ (i >> 1); }

void cnot(CircuitOp &op, std::size_t control, std::size_t target) {
    op.gates.push_back(Gate::h(target));
    op.gates.push_back(Gate::cz(control, target));
    op.gates.push_back(Gate::h(target));
}

// Uniformly-controlled RY on `target` with controls 0..target-1: for control
// value j (qubit 0 most significant) the target is rotated by alpha[j].
void uniformly_controlled_ry(CircuitOp &op, std::size_t target,
                             const std::vector<double> &alpha) {
    const std::size_t k = target;
    if (k == 0) {
        op.gates.push_back(Gate::ry(target, alpha[0]));
        return;
    }
    const std::size_t count = std::size_t{1} << k;
    const double scale = 1.0 / static_cast<double>(count);
    for (std::size_t i = 0; i < count; ++i) {
        double theta = 0.0;
        const std::size_t g = gray(i);
        for (std::size_t j = 0; j < count; ++j) {
            theta += (std::popcount(j & g) % 2 == 0 ? 1.0 : -1.0) * alpha[j];
        }
        op.gates.push_back(Gate::ry(target, theta * scale));
        const std::size_t changed = g ^ gray((i + 1) % count);
        const auto bit_pos = static_cast<std::size_t>(std::countr_zero(changed));
        cnot(op, k - 1 - bit_pos, target);
    }
}

} // namespace

CircuitOp amplitude_embedding(std::span<const double> y) {
    const std::size_t n = pauli::log2_exact(y.size());
    if (n < 1 || n > quantum::kMaxQubits) {
        throw Error(ErrorCode::QubitCountOutOfRange, "amplitude embedding register");
    }
    double norm = 0.0;
    for (double v : y) {
        norm += v * v;
    }
    norm = std::sqrt(norm);
    if (!(norm > 0.0)) {
        throw Error(ErrorCode::ZeroVector, "cannot embed a zero vector");
    }

    // subtree_norm[k][j]: norm of entries whose top k bits equal j.
    std::vector<std::vector<double>> subtree(n + 1);
    subtree[n].resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        subtree[n][i] = std::abs(y[i]) / norm;
    }
    for (std::size_t k = n; k-- > 0;) {
        subtree[k].resize(std::size_t{1} << k);
        for (std::size_t j = 0; j < subtree[k].size(); ++j) {
            const double l = subtree[k + 1][2 * j];
            const double r = subtree[k + 1][2 * j + 1];
            subtree[k][j] = std::sqrt(l * l + r * r);
        }
    }

    CircuitOp op;
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<double> alpha(std::size_t{1} << k);
        for (std::size_t j = 0; j < alpha.size(); ++j) {
            if (k + 1 == n) {
                // Leaf level: signed amplitudes fix the sign of each entry.
                alpha[j] = 2.0 * std::atan2(y[2 * j + 1], y[2 * j]);
            } else {
                alpha[j] = 2.0 * std::atan2(subtree[k + 1][2 * j + 1], subtree[k + 1][2 * j]);
            }
        }
        uniformly_controlled_ry(op, k, alpha);
    }
    return op;
}

CircuitOp StatePrep::circuit(std::size_t n_qubits) const {
    if (const auto *b = std::get_if<BasisPrep>(&kind)) {
        return basis_embedding(b->index, n_qubits);
    }
    const auto &a = std::get<AmplitudePrep>(kind);
    if (a.amplitudes.size() != (std::size_t{1} << n_qubits)) {
        throw Error(ErrorCode::DimensionMismatch, "amplitude prep length is not 2^n");
    }
    return amplitude_embedding(a.amplitudes);
}

} // namespace vqlsgp::circuits
