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

#include <span>

#include "vqlsgp/numerics/matrix.hpp"

namespace vqlsgp::numerics {

/// Lower-triangular factor L with A = L·Lᵀ. Strictly-upper entries are
/// exactly zero and the diagonal is strictly positive.
class CholeskyFactor {
  public:
    [[nodiscard]] const DenseMatrix &lower() const noexcept { return lower_; }
    [[nodiscard]] std::size_t dim() const noexcept { return lower_.rows(); }

  private:
    friend struct CholeskyAccess;
    explicit CholeskyFactor(DenseMatrix lower) : lower_(std::move(lower)) {}
    DenseMatrix lower_;
};

struct CholeskyOptions {
    /// When set, `1e-10 · trace(A)/N` is added to the diagonal before
    /// factoring. Off by default so non-PD matrices surface as errors.
    bool jitter = false;
};

/// Throws NotPositiveDefinite when a pivot is not strictly positive.
[[nodiscard]] CholeskyFactor cholesky(const DenseMatrix &a,
                                      CholeskyOptions options = {});

/// Solves L·x = rhs, or Lᵀ·x = rhs when `transposed`.
[[nodiscard]] Vector triangular_solve(const CholeskyFactor &factor,
                                      std::span<const double> rhs,
                                      bool transposed);

/// Column-wise triangular solve L·X = B (or Lᵀ·X = B).
[[nodiscard]] DenseMatrix triangular_solve(const CholeskyFactor &factor,
                                           const DenseMatrix &rhs,
                                           bool transposed);

/// Solves (L·Lᵀ)·x = rhs.
[[nodiscard]] Vector cholesky_solve(const CholeskyFactor &factor,
                                    std::span<const double> rhs);

/// log det(L·Lᵀ) = 2 Σ log L_ii.
[[nodiscard]] double log_determinant(const CholeskyFactor &factor);

/// (L·Lᵀ)⁻¹, assembled from unit right-hand sides.
[[nodiscard]] DenseMatrix cholesky_inverse(const CholeskyFactor &factor);

} // namespace vqlsgp::numerics
