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

#include "vqlsgp/pauli/pauli.hpp"

#include <algorithm>
#include <cmath>

#include "vqlsgp/error.hpp"

namespace vqlsgp::pauli {

using Complex = std::complex<double>;

namespace {

const Complex kI{0.0, 1.0};

// Pauli strings are monomial: row i has its single nonzero in column
// i ^ flip_mask, with the phase returned by row_phase.
std::uint64_t flip_mask(const PauliString &s) {
    const std::size_t n = s.size();
    std::uint64_t m = 0;
    for (std::size_t q = 0; q < n; ++q) {
        if (s[q] == Letter::X || s[q] == Letter::Y) {
            m |= std::uint64_t{1} << (n - 1 - q);
        }
    }
    return m;
}

Complex row_phase(const PauliString &s, std::uint64_t row) {
    const std::size_t n = s.size();
    Complex phase{1.0, 0.0};
    for (std::size_t q = 0; q < n; ++q) {
        const bool bit = ((row >> (n - 1 - q)) & 1U) != 0;
        switch (s[q]) {
        case Letter::Y: phase *= bit ? kI : -kI; break;
        case Letter::Z:
            if (bit) {
                phase = -phase;
            }
            break;
        default: break;
        }
    }
    return phase;
}

} // namespace

PauliString PauliString::parse(std::string_view text) {
    std::vector<Letter> letters;
    letters.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case 'I': letters.push_back(Letter::I); break;
        case 'X': letters.push_back(Letter::X); break;
        case 'Y': letters.push_back(Letter::Y); break;
        case 'Z': letters.push_back(Letter::Z); break;
        default:
            throw Error(ErrorCode::InvalidArgument,
                        "invalid Pauli letter in '" + std::string(text) + "'");
        }
    }
    return PauliString(std::move(letters));
}

PauliString PauliString::from_index(std::size_t code, std::size_t n_qubits) {
    std::vector<Letter> letters(n_qubits);
    for (std::size_t q = n_qubits; q-- > 0;) {
        letters[q] = static_cast<Letter>(code & 3U);
        code >>= 2;
    }
    return PauliString(std::move(letters));
}

std::size_t PauliString::count(Letter l) const noexcept {
    return static_cast<std::size_t>(std::count(letters_.begin(), letters_.end(), l));
}

std::string PauliString::text() const {
    static constexpr char kNames[] = {'I', 'X', 'Y', 'Z'};
    std::string s;
    s.reserve(letters_.size());
    for (Letter l : letters_) {
        s.push_back(kNames[static_cast<unsigned>(l)]);
    }
    return s;
}

quantum::CircuitOp PauliString::as_circuit_op() const {
    quantum::CircuitOp op;
    for (std::size_t q = 0; q < letters_.size(); ++q) {
        switch (letters_[q]) {
        case Letter::X: op.gates.push_back(quantum::Gate::x(q)); break;
        case Letter::Y: op.gates.push_back(quantum::Gate::y(q)); break;
        case Letter::Z: op.gates.push_back(quantum::Gate::z(q)); break;
        case Letter::I: break;
        }
    }
    return op;
}

ComplexMatrix pauli_to_matrix(const PauliString &s) {
    if (s.size() == 0) {
        throw Error(ErrorCode::InvalidArgument, "empty Pauli string");
    }
    const std::size_t dim = std::size_t{1} << s.size();
    ComplexMatrix m{dim, std::vector<Complex>(dim * dim, Complex{0.0, 0.0})};
    const std::uint64_t flips = flip_mask(s);
    for (std::size_t i = 0; i < dim; ++i) {
        m.entries[i * dim + (i ^ flips)] = row_phase(s, i);
    }
    return m;
}

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n) {
        p <<= 1;
    }
    return p;
}

std::size_t log2_exact(std::size_t n) {
    if (!is_power_of_two(n)) {
        throw Error(ErrorCode::NotPowerOfTwo, std::to_string(n) + " is not a power of two");
    }
    std::size_t k = 0;
    while ((std::size_t{1} << k) < n) {
        ++k;
    }
    return k;
}

DecomposedOperator decompose(const numerics::DenseMatrix &a, double cutoff) {
    if (!a.is_square()) {
        throw Error(ErrorCode::DimensionMismatch, "decompose needs a square matrix");
    }
    const std::size_t dim = a.rows();
    const std::size_t n = log2_exact(dim);
    if (n == 0) {
        throw Error(ErrorCode::NotPowerOfTwo, "1x1 matrices have no qubit representation");
    }
    const std::size_t total = std::size_t{1} << (2 * n);
    const double inv_dim = 1.0 / static_cast<double>(dim);

    DecomposedOperator out{n, {}};
    for (std::size_t code = 0; code < total; ++code) {
        PauliString s = PauliString::from_index(code, n);
        const std::uint64_t flips = flip_mask(s);
        // Tr(P·A) = Σ_i P[i, i^f] · A[i^f, i]
        Complex tr{0.0, 0.0};
        for (std::size_t i = 0; i < dim; ++i) {
            const double aji = a(i ^ flips, i);
            if (aji != 0.0) {
                tr += row_phase(s, i) * aji;
            }
        }
        const Complex c = tr * inv_dim;
        if (std::abs(c.imag()) > 1e-10) {
            throw Error(ErrorCode::NonRealInput,
                        "coefficient of " + s.text() + " has imaginary part " +
                            std::to_string(c.imag()));
        }
        if (std::abs(c.real()) > cutoff) {
            out.terms.push_back({c.real(), std::move(s)});
        }
    }
    // from_index enumerates I<X<Y<Z which coincides with text order.
    std::sort(out.terms.begin(), out.terms.end(),
              [](const PauliTerm &x, const PauliTerm &y) { return x.string.text() < y.string.text(); });
    return out;
}

numerics::DenseMatrix reconstruct(const DecomposedOperator &d) {
    const std::size_t dim = std::size_t{1} << d.n_qubits;
    std::vector<Complex> acc(dim * dim, Complex{0.0, 0.0});
    for (const PauliTerm &t : d.terms) {
        const std::uint64_t flips = flip_mask(t.string);
        for (std::size_t i = 0; i < dim; ++i) {
            acc[i * dim + (i ^ flips)] += t.coefficient * row_phase(t.string, i);
        }
    }
    numerics::DenseMatrix m(dim, dim);
    for (std::size_t k = 0; k < acc.size(); ++k) {
        m.data()[k] = acc[k].real();
    }
    return m;
}

PaddedSystem pad_system(const numerics::DenseMatrix &a, std::span<const double> b) {
    if (!a.is_square() || a.rows() != b.size()) {
        throw Error(ErrorCode::DimensionMismatch, "pad_system shape");
    }
    const std::size_t n = a.rows();
    const std::size_t padded = next_power_of_two(n);
    PaddedSystem out{numerics::DenseMatrix(padded, padded), numerics::Vector(padded, 0.0), n};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out.matrix(i, j) = a(i, j);
        }
        out.rhs[i] = b[i];
    }
    for (std::size_t i = n; i < padded; ++i) {
        out.matrix(i, i) = 1.0;
    }
    return out;
}

void apply_pauli(const PauliString &s, std::span<const Complex> in, std::span<Complex> out) {
    const std::size_t dim = std::size_t{1} << s.size();
    if (in.size() != dim || out.size() != dim) {
        throw Error(ErrorCode::DimensionMismatch, "apply_pauli register size");
    }
    const std::uint64_t flips = flip_mask(s);
    for (std::size_t i = 0; i < dim; ++i) {
        out[i] = row_phase(s, i) * in[i ^ flips];
    }
}

} // namespace vqlsgp::pauli
