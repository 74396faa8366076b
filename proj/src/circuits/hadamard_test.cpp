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

#include <array>
#include <random>

#include "vqlsgp/circuits/circuits.hpp"
#include "vqlsgp/error.hpp"

namespace vqlsgp::circuits {

using quantum::Gate;
using quantum::StateVector;

namespace {

double prob_zero_for(const HadamardTestSpec &spec, const EvalMode &mode, std::uint64_t seed) {
    if (spec.ancilla != spec.system_qubits) {
        throw Error(ErrorCode::InvalidTarget, "ancilla must follow the system register");
    }
    const std::size_t anc = spec.ancilla;
    StateVector state(spec.system_qubits + 1);
    state.apply(Gate::h(anc));
    if (spec.part == Part::Imaginary) {
        state.apply(Gate::sdg(anc));
    }
    for (const CircuitOp &op : spec.op) {
        if (op.control) {
            throw Error(ErrorCode::InvalidArgument, "Hadamard-test operator is already controlled");
        }
        state.apply(op.controlled_by(anc));
    }
    state.apply(Gate::h(anc));
    if (const auto *shots = std::get_if<Shots>(&mode)) {
        std::mt19937_64 rng(seed);
        return quantum::sample_prob_zero(state, anc, shots->count, rng);
    }
    return quantum::prob_zero(state, anc);
}

std::uint64_t mode_seed(const EvalMode &mode) {
    if (const auto *shots = std::get_if<Shots>(&mode)) {
        return shots->seed;
    }
    return 0;
}

} // namespace

double hadamard_test(const HadamardTestSpec &spec, const EvalMode &mode) {
    return 2.0 * prob_zero_for(spec, mode, mode_seed(mode)) - 1.0;
}

double HadamardTestExecutor::run(std::size_t system_qubits, Circuit op, Part part) {
    std::seed_seq seq{mode_seed(mode_), static_cast<std::uint64_t>(tests_run_)};
    std::uint64_t seed = 0;
    {
        std::array<std::uint32_t, 2> words{};
        seq.generate(words.begin(), words.end());
        seed = (std::uint64_t{words[0]} << 32) | words[1];
    }
    ++tests_run_;
    const HadamardTestSpec spec{system_qubits, system_qubits, std::move(op), part};
    return 2.0 * prob_zero_for(spec, mode_, seed) - 1.0;
}

} // namespace vqlsgp::circuits
