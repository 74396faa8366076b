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

#include "vqlsgp/circuits/circuits.hpp"
#include "vqlsgp/error.hpp"

namespace vqlsgp::circuits {

using quantum::Gate;

namespace {

void ry_column(CircuitOp &op, std::size_t n, std::span<const double> theta, std::size_t column) {
    for (std::size_t q = 0; q < n; ++q) {
        op.gates.push_back(Gate::ry(q, theta[column * n + q]));
    }
}

void cz_layer(CircuitOp &op, std::size_t n, CzPattern pattern, std::size_t layer) {
    if (n < 2) {
        return;
    }
    std::size_t start = 0;
    std::size_t stride = 1;
    if (pattern == CzPattern::Alternating) {
        start = layer % 2;
        stride = 2;
    }
    for (std::size_t q = start; q + 1 < n; q += stride) {
        op.gates.push_back(Gate::cz(q, q + 1));
    }
}

CircuitOp reupload_block(const AnsatzSpec &spec) {
    if (!spec.reupload_vector) {
        throw Error(ErrorCode::MissingReuploadVector,
                    std::string(to_string(spec.kind)) + " needs a reupload vector");
    }
    if (spec.reupload_vector->size() != (std::size_t{1} << spec.n_qubits)) {
        throw Error(ErrorCode::DimensionMismatch, "reupload vector length is not 2^n");
    }
    return amplitude_embedding(*spec.reupload_vector);
}

void append(CircuitOp &dst, const CircuitOp &src) {
    dst.gates.insert(dst.gates.end(), src.gates.begin(), src.gates.end());
}

CircuitOp build(const AnsatzSpec &spec, std::span<const double> theta,
                std::vector<std::size_t> *positions) {
    const std::size_t n = spec.n_qubits;
    if (theta.size() != spec.parameter_count()) {
        throw Error(ErrorCode::ParamCountMismatch,
                    "expected " + std::to_string(spec.parameter_count()) + " parameters, got " +
                        std::to_string(theta.size()));
    }
    CircuitOp op;
    auto column = [&](std::size_t c) {
        if (positions != nullptr) {
            for (std::size_t q = 0; q < n; ++q) {
                positions->push_back(op.gates.size() + q);
            }
        }
        ry_column(op, n, theta, c);
    };
    std::optional<CircuitOp> uy;
    if (spec.kind != AnsatzKind::HEA) {
        uy = reupload_block(spec);
    }
    if (spec.kind == AnsatzKind::UHEA) {
        append(op, *uy);
    }
    column(0);
    for (std::size_t l = 0; l < spec.layers; ++l) {
        if (spec.kind == AnsatzKind::MUHEA) {
            append(op, *uy);
        }
        cz_layer(op, n, spec.cz_pattern, l);
        column(l + 1);
    }
    return op;
}

} // namespace

CircuitOp build_ansatz(const AnsatzSpec &spec, std::span<const double> theta) {
    return build(spec, theta, nullptr);
}

std::vector<std::size_t> parameter_gate_indices(const AnsatzSpec &spec) {
    std::vector<std::size_t> positions;
    const ParamVector zeros(spec.parameter_count(), 0.0);
    (void)build(spec, zeros, &positions);
    return positions;
}

std::string_view to_string(AnsatzKind kind) noexcept {
    switch (kind) {
    case AnsatzKind::HEA: return "HEA";
    case AnsatzKind::UHEA: return "UHEA";
    case AnsatzKind::MUHEA: return "MUHEA";
    }
    return "?";
}

AnsatzKind parse_ansatz_kind(std::string_view text) {
    if (text == "HEA") return AnsatzKind::HEA;
    if (text == "UHEA") return AnsatzKind::UHEA;
    if (text == "MUHEA") return AnsatzKind::MUHEA;
    throw Error(ErrorCode::ConfigError, "unknown ansatz '" + std::string(text) + "'");
}

} // namespace vqlsgp::circuits
