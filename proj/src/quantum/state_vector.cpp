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

#include "vqlsgp/quantum/state_vector.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vqlsgp/error.hpp"

namespace vqlsgp::quantum {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
const Complex kI{0.0, 1.0};

std::string_view gate_name(GateKind k) {
    switch (k) {
    case GateKind::Identity: return "I";
    case GateKind::RotY: return "RY";
    case GateKind::Hadamard: return "H";
    case GateKind::PauliX: return "X";
    case GateKind::PauliY: return "Y";
    case GateKind::PauliZ: return "Z";
    case GateKind::S: return "S";
    case GateKind::SDagger: return "Sdg";
    case GateKind::CZ: return "CZ";
    }
    return "?";
}

} // namespace

Gate Gate::adjoint() const {
    Gate g = *this;
    switch (kind) {
    case GateKind::RotY: g.angle = -angle; break;
    case GateKind::S: g.kind = GateKind::SDagger; break;
    case GateKind::SDagger: g.kind = GateKind::S; break;
    default: break;
    }
    return g;
}

CircuitOp CircuitOp::adjoint() const {
    CircuitOp out{{}, control};
    out.gates.reserve(gates.size());
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        out.gates.push_back(it->adjoint());
    }
    return out;
}

CircuitOp CircuitOp::controlled_by(std::size_t qubit) const {
    if (control && *control != qubit) {
        throw Error(ErrorCode::InvalidArgument, "op already has a different control");
    }
    return CircuitOp{gates, qubit};
}

Circuit adjoint(const Circuit &circuit) {
    Circuit out;
    out.reserve(circuit.size());
    for (auto it = circuit.rbegin(); it != circuit.rend(); ++it) {
        out.push_back(it->adjoint());
    }
    return out;
}

std::string to_string(const CircuitOp &op) {
    std::ostringstream os;
    for (const Gate &g : op.gates) {
        if (op.control) {
            os << "C[" << *op.control << "]-";
        }
        os << gate_name(g.kind) << ' ' << g.target;
        if (g.is_two_qubit()) {
            os << ' ' << g.partner;
        }
        if (g.kind == GateKind::RotY) {
            os << " (" << g.angle << ')';
        }
        os << '\n';
    }
    return os.str();
}

std::string to_string(const Circuit &circuit) {
    std::string s;
    for (const CircuitOp &op : circuit) {
        s += to_string(op);
    }
    return s;
}

StateVector::StateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw Error(ErrorCode::QubitCountOutOfRange,
                    "qubit count " + std::to_string(n_qubits));
    }
    amps_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw Error(ErrorCode::QubitCountOutOfRange,
                    "qubit count " + std::to_string(n_qubits));
    }
    if (amps_.size() != (std::size_t{1} << n_qubits)) {
        throw Error(ErrorCode::DimensionMismatch, "amplitude count is not 2^n");
    }
}

double StateVector::norm() const noexcept {
    double s = 0.0;
    for (const Complex &a : amps_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

void StateVector::check_target(std::size_t q) const {
    if (q >= n_qubits_) {
        throw Error(ErrorCode::InvalidTarget, "qubit " + std::to_string(q) +
                                                  " out of range for " +
                                                  std::to_string(n_qubits_) + " qubits");
    }
}

void StateVector::apply(const Gate &gate, std::uint64_t controls) {
    check_target(gate.target);
    const std::uint64_t bit = mask(gate.target);
    const std::size_t dim = amps_.size();

    if (gate.kind == GateKind::Identity) {
        return;
    }

    if (gate.kind == GateKind::CZ) {
        check_target(gate.partner);
        if (gate.partner == gate.target) {
            throw Error(ErrorCode::InvalidTarget, "CZ targets must be distinct");
        }
        const std::uint64_t sel = bit | mask(gate.partner) | controls;
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & sel) == sel) {
                amps_[i] = -amps_[i];
            }
        }
        return;
    }

    if ((controls & bit) != 0) {
        throw Error(ErrorCode::ControlTargetOverlap, "control coincides with target");
    }

    // Diagonal single-qubit gates touch only the |1⟩ half.
    if (gate.kind == GateKind::PauliZ || gate.kind == GateKind::S ||
        gate.kind == GateKind::SDagger) {
        const Complex phase = gate.kind == GateKind::PauliZ ? Complex{-1.0, 0.0}
                              : gate.kind == GateKind::S    ? kI
                                                            : -kI;
        const std::uint64_t sel = bit | controls;
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & sel) == sel) {
                amps_[i] *= phase;
            }
        }
        return;
    }

    // General 2x2 acting on pairs (i, i|bit).
    Complex m00, m01, m10, m11;
    switch (gate.kind) {
    case GateKind::RotY: {
        if (!std::isfinite(gate.angle)) {
            throw Error(ErrorCode::InvalidArgument, "RotY angle is not finite");
        }
        const double c = std::cos(0.5 * gate.angle);
        const double s = std::sin(0.5 * gate.angle);
        m00 = c;
        m01 = -s;
        m10 = s;
        m11 = c;
        break;
    }
    case GateKind::Hadamard:
        m00 = m01 = m10 = kInvSqrt2;
        m11 = -kInvSqrt2;
        break;
    case GateKind::PauliX:
        m00 = m11 = 0.0;
        m01 = m10 = 1.0;
        break;
    case GateKind::PauliY:
        m00 = m11 = 0.0;
        m01 = -kI;
        m10 = kI;
        break;
    default:
        throw Error(ErrorCode::InvalidArgument, "unsupported gate kind");
    }
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & bit) != 0 || (i & controls) != controls) {
            continue;
        }
        const std::size_t j = i | bit;
        const Complex a0 = amps_[i];
        const Complex a1 = amps_[j];
        amps_[i] = m00 * a0 + m01 * a1;
        amps_[j] = m10 * a0 + m11 * a1;
    }
}

void StateVector::apply(const CircuitOp &op) {
    std::uint64_t controls = 0;
    if (op.control) {
        check_target(*op.control);
        for (const Gate &g : op.gates) {
            if (g.acts_on(*op.control)) {
                throw Error(ErrorCode::ControlTargetOverlap,
                            "control qubit " + std::to_string(*op.control) +
                                " is also a target");
            }
        }
        controls = mask(*op.control);
    }
    for (const Gate &g : op.gates) {
        apply(g, controls);
    }
}

void StateVector::apply(const Circuit &circuit) {
    for (const CircuitOp &op : circuit) {
        apply(op);
    }
}

StateVector zero_state(std::size_t n) { return StateVector(n); }

StateVector apply_gate(StateVector state, const Gate &gate) {
    state.apply(gate);
    return state;
}

StateVector apply_controlled(StateVector state, const CircuitOp &op, std::size_t control) {
    state.apply(op.controlled_by(control));
    return state;
}

double prob_zero(const StateVector &state, std::size_t qubit) {
    if (qubit >= state.n_qubits()) {
        throw Error(ErrorCode::InvalidTarget, "measured qubit out of range");
    }
    const std::uint64_t bit = state.mask(qubit);
    double p = 0.0;
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & bit) == 0) {
            p += std::norm(amps[i]);
        }
    }
    return std::clamp(p, 0.0, 1.0);
}

double sample_prob_zero(const StateVector &state, std::size_t qubit, std::size_t shots,
                        std::mt19937_64 &rng) {
    if (shots < 1) {
        throw Error(ErrorCode::InvalidArgument, "shots must be at least 1");
    }
    const double p = prob_zero(state, qubit);
    std::binomial_distribution<std::size_t> draw(shots, p);
    return static_cast<double>(draw(rng)) / static_cast<double>(shots);
}

Complex inner_product(const StateVector &a, const StateVector &b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw Error(ErrorCode::DimensionMismatch, "inner product of different registers");
    }
    Complex s{0.0, 0.0};
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += std::conj(x[i]) * y[i];
    }
    return s;
}

} // namespace vqlsgp::quantum
