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

#include "vqlsgp/vqls_gp/vqls_gp.hpp"

#include <cmath>
#include <numbers>

#include "vqlsgp/error.hpp"
#include "vqlsgp/numerics/cholesky.hpp"
#include "vqlsgp/parallel.hpp"

namespace vqlsgp::vqls_gp {

SystemSolver exact_solver() {
    return [](const vqls::VqlsProblem &problem, const vqls::VqlsConfig &) {
        const std::size_t n = problem.n_qubits();
        const DenseMatrix a =
            problem.matrix ? *problem.matrix : pauli::reconstruct(problem.decomposition);
        quantum::StateVector b_state(n);
        b_state.apply(problem.rhs_prep.circuit(n));
        Vector b(b_state.dim());
        for (std::size_t i = 0; i < b.size(); ++i) {
            b[i] = problem.rhs_norm * b_state[i].real();
        }
        vqls::VqlsSolution sol;
        sol.x = numerics::lu_solve(a, b);
        sol.converged = true;
        sol.final_cost = 0.0;
        return sol;
    };
}

namespace {

struct Workspace {
    pauli::PaddedSystem padded;
    pauli::DecomposedOperator decomposition;
    circuits::AnsatzSpec ansatz;
};

Workspace prepare(const DenseMatrix &k_hat, const VqlsGpConfig &config,
                  const std::optional<Vector> &reupload) {
    const Vector zeros(k_hat.rows(), 0.0);
    Workspace w{pauli::pad_system(k_hat, zeros), {}, {}};
    w.decomposition = pauli::decompose(w.padded.matrix, config.cutoff);
    const std::size_t dim = w.padded.matrix.rows();
    w.ansatz.kind = config.ansatz;
    w.ansatz.n_qubits = w.decomposition.n_qubits;
    w.ansatz.layers = config.layers;
    w.ansatz.cz_pattern = config.cz_pattern;
    if (config.ansatz != circuits::AnsatzKind::HEA) {
        if (!reupload) {
            throw Error(ErrorCode::MissingReuploadVector,
                        std::string(circuits::to_string(config.ansatz)) +
                            " needs the training labels");
        }
        Vector v(dim, 0.0);
        std::copy(reupload->begin(), reupload->end(), v.begin());
        w.ansatz.reupload_vector = std::move(v);
    }
    return w;
}

// Solves K̂·x = b for each right-hand side produced by `rhs(i)`; all-zero
// right-hand sides yield zero solutions.
std::vector<vqls::VqlsSolution> solve_all(const Workspace &w, const VqlsGpConfig &config,
                                          std::size_t count,
                                          const std::function<circuits::StatePrep(std::size_t,
                                                                                  double &)> &rhs,
                                          std::vector<SystemSummary> &diagnostics) {
    const SystemSolver solver = config.solver ? config.solver : SystemSolver(vqls::solve);
    const std::size_t dim = w.padded.matrix.rows();
    std::vector<vqls::VqlsSolution> solutions(count);
    diagnostics.assign(count, SystemSummary{});
    parallel_for(count, config.threads, [&](std::size_t i) {
        double norm = 0.0;
        circuits::StatePrep prep = rhs(i, norm);
        SystemSummary &d = diagnostics[i];
        d.index = i;
        if (!(norm > 0.0)) {
            solutions[i].x.assign(dim, 0.0);
            solutions[i].converged = true;
            solutions[i].final_cost = 0.0;
            d.converged = true;
            d.skipped = true;
            return;
        }
        vqls::VqlsProblem problem{w.decomposition, std::move(prep), norm, w.ansatz,
                                  w.padded.matrix};
        vqls::VqlsConfig cfg = config.vqls;
        cfg.seed = config.vqls.seed + i;
        solutions[i] = solver(problem, cfg);
        const auto &s = solutions[i];
        d.converged = s.converged;
        d.iterations = s.iterations_used;
        d.final_cost = s.final_cost;
        d.relative_residual = s.relative_residual;
        d.cost_trace = s.cost_trace;
    });
    return solutions;
}

std::size_t total_iterations(const std::vector<SystemSummary> &d) {
    std::size_t total = 0;
    for (const auto &s : d) {
        total += s.iterations;
    }
    return total;
}

double classical_log_det(const DenseMatrix &k_hat) {
    return numerics::log_determinant(numerics::cholesky(k_hat));
}

double lml_from_alpha(const gp::Dataset &train, const Vector &alpha, double log_det) {
    return -0.5 * numerics::dot(train.y, alpha) - 0.5 * log_det -
           0.5 * static_cast<double>(train.size()) * std::log(2.0 * std::numbers::pi);
}

} // namespace

std::size_t count_negative_variances(const gp::PosteriorResult &p) noexcept {
    std::size_t count = 0;
    for (std::size_t i = 0; i < p.covariance.rows(); ++i) {
        if (p.covariance(i, i) < -1e-9) {
            ++count;
        }
    }
    return count;
}

InverseResult invert_covariance(const DenseMatrix &k_hat, const VqlsGpConfig &config,
                                const std::optional<Vector> &reupload) {
    if (!k_hat.is_square()) {
        throw Error(ErrorCode::DimensionMismatch, "covariance must be square");
    }
    const Workspace w = prepare(k_hat, config, reupload);
    const std::size_t n = k_hat.rows();
    InverseResult out;
    out.pauli_string_count = w.decomposition.size();
    const auto solutions = solve_all(
        w, config, n,
        [](std::size_t i, double &norm) {
            norm = 1.0;
            return circuits::StatePrep::basis(i);
        },
        out.diagnostics);
    out.raw = DenseMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            out.raw(i, j) = solutions[j].x[i];
        }
    }
    out.asymmetry = (out.raw - out.raw.transpose()).frobenius_norm();
    out.inverse = 0.5 * (out.raw + out.raw.transpose());
    return out;
}

VqlsGpReport posterior_direct(const gp::Dataset &train, const std::vector<Vector> &x_star,
                              const gp::KernelSpec &spec, const VqlsGpConfig &config) {
    const DenseMatrix k_hat = gp::noisy_covariance(train, spec);
    const DenseMatrix k_star = gp::covariance_matrix(train.x, x_star, spec);
    const DenseMatrix k_ss = gp::covariance_matrix(x_star, x_star, spec);
    const Workspace w = prepare(k_hat, config, train.y);
    const std::size_t n = train.size();
    const std::size_t dim = w.padded.matrix.rows();
    const std::size_t m = x_star.size();

    auto padded_column = [&](std::size_t i) {
        Vector v(dim, 0.0);
        if (i == 0) {
            std::copy(train.y.begin(), train.y.end(), v.begin());
        } else {
            for (std::size_t r = 0; r < n; ++r) {
                v[r] = k_star(r, i - 1);
            }
        }
        return v;
    };
    VqlsGpReport report;
    report.pauli_string_count = w.decomposition.size();
    const auto solutions = solve_all(
        w, config, m + 1,
        [&](std::size_t i, double &norm) {
            Vector v = padded_column(i);
            norm = numerics::norm2(v);
            return circuits::StatePrep::amplitude(std::move(v));
        },
        report.diagnostics);

    const Vector alpha(solutions[0].x.begin(), solutions[0].x.begin() + n);
    DenseMatrix wmat(n, m);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t r = 0; r < n; ++r) {
            wmat(r, j) = solutions[j + 1].x[r];
        }
    }
    report.posterior.mean = k_star.transpose() * alpha;
    report.posterior.covariance = k_ss - transpose_times(k_star, wmat);
    report.posterior.lml = lml_from_alpha(train, alpha, classical_log_det(k_hat));
    report.total_iterations = total_iterations(report.diagnostics);
    report.negative_variance_count = count_negative_variances(report.posterior);
    report.asymmetry = 0.0;
    return report;
}

VqlsGpReport vqls_gp_regress(const gp::Dataset &train, const std::vector<Vector> &x_star,
                             const gp::KernelSpec &spec, const VqlsGpConfig &config) {
    train.validate();
    if (config.option == Option::DirectProducts) {
        return posterior_direct(train, x_star, spec, config);
    }
    const DenseMatrix k_hat = gp::noisy_covariance(train, spec);
    InverseResult inv = invert_covariance(k_hat, config, train.y);
    VqlsGpReport report;
    report.posterior =
        gp::posterior(train, x_star, spec, gp::ProvidedInverse{inv.inverse});
    const Vector alpha = inv.inverse * train.y;
    report.posterior.lml = lml_from_alpha(train, alpha, classical_log_det(k_hat));
    const DenseMatrix k_star = gp::covariance_matrix(train.x, x_star, spec);
    report.raw_mean = k_star.transpose() * (inv.raw * train.y);
    report.diagnostics = std::move(inv.diagnostics);
    report.total_iterations = total_iterations(report.diagnostics);
    report.pauli_string_count = inv.pauli_string_count;
    report.asymmetry = inv.asymmetry;
    report.negative_variance_count = count_negative_variances(report.posterior);
    return report;
}

} // namespace vqlsgp::vqls_gp
