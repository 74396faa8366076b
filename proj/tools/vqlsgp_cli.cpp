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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "vqlsgp/bench/bench.hpp"
#include "vqlsgp/error.hpp"
#include "vqlsgp/parallel.hpp"

using namespace vqlsgp;

namespace {

constexpr int kConfigExit = 2;
constexpr int kNumericalExit = 3;

std::vector<std::vector<double>> read_numeric_csv(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::ConfigError, "cannot read " + path);
    }
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception &) {
                throw Error(ErrorCode::ConfigError, "non-numeric cell '" + cell + "' in " + path);
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

numerics::DenseMatrix to_matrix(const std::vector<std::vector<double>> &rows, std::size_t count) {
    numerics::DenseMatrix a(count, count);
    for (std::size_t i = 0; i < count; ++i) {
        if (rows[i].size() != count) {
            throw Error(ErrorCode::ConfigError, "matrix rows must be square");
        }
        for (std::size_t j = 0; j < count; ++j) {
            a(i, j) = rows[i][j];
        }
    }
    return a;
}

// Values set on the command line; applied on top of the config file.
struct Overrides {
    std::string config_file;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> threads;
    std::optional<std::size_t> repetitions;
    std::optional<std::size_t> max_iters;
    std::optional<std::size_t> restarts;
    std::optional<double> tol;
    std::optional<std::string> out;
    std::optional<std::string> kernel;
    std::optional<std::string> ansatz;
    std::optional<std::size_t> layers;
};

void add_common(CLI::App *app, Overrides &o) {
    app->add_option("--config", o.config_file, "JSON experiment config");
    app->add_option("--seed", o.seed, "base seed");
    app->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    app->add_option("--repetitions", o.repetitions, "repetitions")->check(CLI::PositiveNumber);
    app->add_option("--max-iters", o.max_iters, "VQLS iteration cap")->check(CLI::PositiveNumber);
    app->add_option("--restarts", o.restarts, "VQLS restarts");
    app->add_option("--tol", o.tol, "VQLS cost threshold");
    app->add_option("--out", o.out, "output directory");
}

bench::ExperimentConfig resolve(const Overrides &o) {
    bench::ExperimentConfig c = o.config_file.empty() ? bench::ExperimentConfig{}
                                                      : bench::load_config(o.config_file);
    if (!o.threads && o.config_file.empty()) {
        c.threads = default_threads();
    }
    if (o.seed) c.seed = *o.seed;
    if (o.threads) c.threads = *o.threads;
    if (o.repetitions) c.repetitions = *o.repetitions;
    if (o.max_iters) c.vqls.max_iters = *o.max_iters;
    if (o.restarts) c.vqls.restarts = *o.restarts;
    if (o.tol) c.vqls.tol = *o.tol;
    if (o.out) c.output_dir = *o.out;
    if (o.layers) c.layers = *o.layers;
    if (o.kernel) {
        const auto family = gp::parse_kernel_family(*o.kernel);
        std::vector<gp::KernelSpec> keep;
        for (const auto &k : c.kernels) {
            if (k.family == family) keep.push_back(k);
        }
        if (keep.empty()) keep.push_back({family, {1.0, 1.0, 0.64, 0.01}});
        c.kernels = keep;
    }
    if (o.ansatz) {
        c.ansaetze = {circuits::parse_ansatz_kind(*o.ansatz)};
    }
    c.validate();
    return c;
}

void print_records(const std::vector<bench::RunRecord> &records) {
    std::printf("%-22s %6s %10s %10s %10s %10s %8s\n", "model", "pauli", "iters", "iters_sd",
                "mse", "mse_sd", "conv");
    for (const auto &r : records) {
        std::printf("%-22s %6zu %10.1f %10.1f %10.4f %10.4f %8.3f\n", r.model.c_str(),
                    r.pauli_strings, r.iterations_mean, r.iterations_std, r.mse_mean, r.mse_std,
                    r.converged_fraction);
    }
}

int cmd_decompose(const std::string &file, double cutoff) {
    const auto rows = read_numeric_csv(file);
    const auto a = to_matrix(rows, rows.size());
    const auto d = pauli::decompose(a, cutoff);
    std::printf("coefficient,string\n");
    for (const auto &t : d.terms) {
        std::printf("%.17g,%s\n", t.coefficient, t.string.text().c_str());
    }
    std::fprintf(stderr, "%zu terms\n", d.size());
    return 0;
}

int cmd_solve(const std::string &file, const Overrides &o, const std::string &cost,
              const std::string &engine) {
    const auto rows = read_numeric_csv(file);
    if (rows.size() < 2) {
        throw Error(ErrorCode::ConfigError, "system CSV needs matrix rows and a b row");
    }
    const std::size_t n = rows.size() - 1;
    const auto a = to_matrix(rows, n);
    if (rows.back().size() != n) {
        throw Error(ErrorCode::ConfigError, "b length does not match the matrix");
    }
    const auto padded = pauli::pad_system(a, rows.back());
    circuits::AnsatzSpec spec;
    spec.kind = o.ansatz ? circuits::parse_ansatz_kind(*o.ansatz) : circuits::AnsatzKind::HEA;
    spec.n_qubits = pauli::log2_exact(padded.matrix.rows());
    spec.layers = o.layers.value_or(3);
    if (spec.kind != circuits::AnsatzKind::HEA) {
        spec.reupload_vector = padded.rhs;
    }
    const auto problem = vqls::make_problem(padded.matrix, padded.rhs, spec);
    vqls::VqlsConfig cfg;
    cfg.seed = o.seed.value_or(0);
    if (o.max_iters) cfg.max_iters = *o.max_iters;
    if (o.restarts) cfg.restarts = *o.restarts;
    if (o.tol) cfg.tol = *o.tol;
    if (cost == "global") cfg.cost = vqls::CostKind::Global;
    else if (cost != "local") throw Error(ErrorCode::ConfigError, "cost is local or global");
    if (engine == "hadamard") cfg.eval.engine = vqls::Engine::HadamardTests;
    else if (engine != "statevector")
        throw Error(ErrorCode::ConfigError, "engine is statevector or hadamard");
    const auto sol = vqls::solve(problem, cfg);
    std::printf("x");
    for (std::size_t i = 0; i < n; ++i) {
        std::printf(",%.10g", sol.x[i]);
    }
    std::printf("\nconverged=%d iterations=%zu restarts=%zu final_cost=%.6g residual=%.6g "
                "pauli_strings=%zu\n",
                sol.converged ? 1 : 0, sol.iterations_used, sol.restarts_used, sol.final_cost,
                sol.relative_residual, problem.decomposition.size());
    return 0;
}

int cmd_gp_fit(const Overrides &o) {
    const auto c = resolve(o);
    for (const auto &k : c.kernels) {
        std::vector<double> errors;
        for (std::size_t rep = 0; rep < c.repetitions; ++rep) {
            const auto split = bench::generate_dataset(c, rep);
            const gp::KernelSpec spec = bench::fit_hyperparameters(c, split.train, k, rep);
            const auto post = gp::posterior(split.train, split.x_test, spec);
            errors.push_back(bench::mse(post.mean, split.truth));
            std::printf("%s rep=%zu sigma=%.6g length=%.6g lml=%.6g mse=%.6g\n",
                        std::string(gp::to_string(k.family)).c_str(), rep, spec.hyper.sigma,
                        spec.hyper.length, post.lml.value_or(0.0), errors.back());
        }
        const auto [m, s] = bench::mean_std(errors);
        std::printf("%s mse_mean=%.6g mse_std=%.6g\n", std::string(gp::to_string(k.family)).c_str(),
                    m, s);
    }
    return 0;
}

int cmd_bench(bench::Experiment experiment, const Overrides &o, bool emit) {
    if (!o.seed) {
        throw Error(ErrorCode::ConfigError, "--seed is required for report runs");
    }
    auto c = resolve(o);
    c.experiment = experiment;
    const auto result = bench::run_experiment(c);
    print_records(result.records);
    if (emit) {
        bench::emit_reports(result, c.output_dir);
        std::printf("reports written to %s\n", c.output_dir.c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Gaussian process regression with a variational quantum linear solver"};
    app.require_subcommand(1);

    std::string matrix_file;
    double cutoff = pauli::kDefaultCutoff;
    auto *decompose = app.add_subcommand("decompose", "Pauli decomposition of a CSV matrix");
    decompose->add_option("matrix", matrix_file, "CSV file, one row per line")->required();
    decompose->add_option("--cutoff", cutoff, "drop |c| <= cutoff");

    Overrides solve_o;
    std::string system_file;
    std::string cost = "local";
    std::string engine = "statevector";
    auto *solve = app.add_subcommand("solve", "one VQLS run on a CSV system (rows of A, then b)");
    solve->add_option("system", system_file, "CSV file")->required();
    solve->add_option("--seed", solve_o.seed, "seed");
    solve->add_option("--max-iters", solve_o.max_iters, "iteration cap");
    solve->add_option("--restarts", solve_o.restarts, "restarts");
    solve->add_option("--tol", solve_o.tol, "cost threshold");
    solve->add_option("--ansatz", solve_o.ansatz, "HEA, UHEA or MUHEA");
    solve->add_option("--layers", solve_o.layers, "ansatz layers");
    solve->add_option("--cost", cost, "local or global");
    solve->add_option("--engine", engine, "statevector or hadamard");

    Overrides gp_o;
    auto *gp_fit = app.add_subcommand("gp-fit", "classical GP on the benchmark data");
    add_common(gp_fit, gp_o);
    gp_fit->add_option("--kernel", gp_o.kernel, "RBF, Matern52 or MT");

    Overrides vg_o;
    auto *vqls_gp = app.add_subcommand("vqls-gp", "single VQLS-GP run against the classical GP");
    add_common(vqls_gp, vg_o);
    vqls_gp->add_option("--kernel", vg_o.kernel, "RBF, Matern52 or MT");
    vqls_gp->add_option("--ansatz", vg_o.ansatz, "HEA, UHEA or MUHEA");
    vqls_gp->add_option("--layers", vg_o.layers, "ansatz layers");

    Overrides bench_o;
    auto *bench_cmd = app.add_subcommand("bench", "benchmark experiments");
    bench_cmd->require_subcommand(1);
    auto *kernels = bench_cmd->add_subcommand("kernels", "GP and VQLS-GP for each kernel");
    auto *ansaetze = bench_cmd->add_subcommand("ansaetze", "GP and VQLS-GP for each ansatz");
    add_common(kernels, bench_o);
    add_common(ansaetze, bench_o);

    std::string report_dir;
    auto *report = app.add_subcommand("report", "re-render SVGs from a results directory");
    report->add_option("dir", report_dir, "directory with results.csv")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigExit;
    }

    try {
        if (*decompose) return cmd_decompose(matrix_file, cutoff);
        if (*solve) return cmd_solve(system_file, solve_o, cost, engine);
        if (*gp_fit) return cmd_gp_fit(gp_o);
        if (*vqls_gp) {
            vg_o.repetitions = vg_o.repetitions.value_or(1);
            auto c = resolve(vg_o);
            c.repetitions = *vg_o.repetitions;
            c.experiment = bench::Experiment::Single;
            print_records(bench::run_experiment(c).records);
            return 0;
        }
        if (*kernels) return cmd_bench(bench::Experiment::KernelComparison, bench_o, true);
        if (*ansaetze) return cmd_bench(bench::Experiment::AnsatzComparison, bench_o, true);
        if (*report) {
            bench::render_reports(report_dir);
            std::printf("rendered %s\n", report_dir.c_str());
            return 0;
        }
    } catch (const Error &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return is_numerical(e.code()) ? kNumericalExit : kConfigExit;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
