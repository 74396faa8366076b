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
#include <functional>
#include <optional>
#include <vector>

#include "vqlsgp/circuits/circuits.hpp"
#include "vqlsgp/gp/gp.hpp"
#include "vqlsgp/vqls/vqls.hpp"

namespace vqlsgp::vqls_gp {

using numerics::DenseMatrix;
using numerics::Vector;

enum class Option {
    /// N solves K̂·col_i = e_i, then the classical posterior formulas with
    /// the assembled inverse.
    InverseColumns,
    /// K̂·v = y and K̂·col_j(W) = col_j(K*), M + 1 solves.
    DirectProducts,
};

/// Replaceable linear-system backend. The config it receives already holds
/// the per-system seed.
using SystemSolver =
    std::function<vqls::VqlsSolution(const vqls::VqlsProblem &, const vqls::VqlsConfig &)>;

/// Exact LU solve of the problem's dense system, reported as converged
/// after zero iterations.
[[nodiscard]] SystemSolver exact_solver();

struct VqlsGpConfig {
    Option option = Option::InverseColumns;
    vqls::VqlsConfig vqls;
    circuits::AnsatzKind ansatz = circuits::AnsatzKind::HEA;
    std::size_t layers = 3;
    circuits::CzPattern cz_pattern = circuits::CzPattern::Linear;
    double cutoff = pauli::kDefaultCutoff;
    std::size_t threads = 1;
    /// Empty means vqls::solve.
    SystemSolver solver;
};

struct SystemSummary {
    std::size_t index = 0;
    bool converged = false;
    std::size_t iterations = 0;
    double final_cost = 0.0;
    double relative_residual = 0.0;
    /// Zero right-hand side answered without a solve.
    bool skipped = false;
    std::vector<double> cost_trace;
};

struct InverseResult {
    /// (B + Bᵀ)/2 of the assembled columns B, cropped to the unpadded size.
    DenseMatrix inverse;
    DenseMatrix raw;
    /// ‖B − Bᵀ‖_F.
    double asymmetry = 0.0;
    std::size_t pauli_string_count = 0;
    std::vector<SystemSummary> diagnostics;
};

/// Column-by-column inverse with basis-embedded right-hand sides. `reupload`
/// feeds UHEA/MUHEA and is zero-padded with the matrix.
[[nodiscard]] InverseResult invert_covariance(const DenseMatrix &k_hat, const VqlsGpConfig &config,
                                              const std::optional<Vector> &reupload = {});

struct VqlsGpReport {
    gp::PosteriorResult posterior;
    /// Posterior mean from the unsymmetrised inverse (Option 1 only).
    std::optional<Vector> raw_mean;
    std::vector<SystemSummary> diagnostics;
    std::size_t total_iterations = 0;
    std::size_t pauli_string_count = 0;
    double asymmetry = 0.0;
    /// Test points whose predictive variance is below −1e−9.
    std::size_t negative_variance_count = 0;
    /// log|K̂| always comes from a classical Cholesky factor.
    bool log_det_classical = true;
};

/// Option 2: amplitude-embedded y and K* columns; all-zero columns short
/// cut to zero solutions.
[[nodiscard]] VqlsGpReport posterior_direct(const gp::Dataset &train,
                                            const std::vector<Vector> &x_star,
                                            const gp::KernelSpec &spec, const VqlsGpConfig &config);

/// Dispatches on config.option and fills the report.
[[nodiscard]] VqlsGpReport vqls_gp_regress(const gp::Dataset &train,
                                           const std::vector<Vector> &x_star,
                                           const gp::KernelSpec &spec, const VqlsGpConfig &config);

[[nodiscard]] std::size_t count_negative_variances(const gp::PosteriorResult &p) noexcept;

} // namespace vqlsgp::vqls_gp
