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
#include <optional>
#include <random>

#include "vqlsgp/bench/bench.hpp"
#include "vqlsgp/error.hpp"

namespace vqlsgp::bench {

namespace {

struct Model {
    std::string label;
    gp::KernelSpec kernel;
    std::optional<circuits::AnsatzKind> ansatz;
};

std::uint64_t derived_seed(const ExperimentConfig &config, std::size_t repetition) {
    std::seed_seq seq{config.seed, config.vqls.seed, static_cast<std::uint64_t>(repetition)};
    std::array<std::uint32_t, 2> w{};
    seq.generate(w.begin(), w.end());
    return (std::uint64_t{w[0]} << 32) | w[1];
}

Vector first_coordinates(const std::vector<Vector> &x) {
    Vector out;
    out.reserve(x.size());
    for (const auto &p : x) {
        out.push_back(p.front());
    }
    return out;
}

BenchResult run_models(const ExperimentConfig &config, const std::vector<Model> &models) {
    config.validate();
    struct Accum {
        RunRecord record;
        std::size_t converged = 0;
        std::vector<std::vector<double>> traces;
    };
    std::vector<Accum> acc(models.size());
    BenchResult result;
    for (std::size_t m = 0; m < models.size(); ++m) {
        acc[m].record.model = models[m].label;
        acc[m].record.kernel = std::string(gp::to_string(models[m].kernel.family));
        acc[m].record.ansatz =
            models[m].ansatz ? std::string(circuits::to_string(*models[m].ansatz)) : "";
    }

    for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
        const Split split = generate_dataset(config, rep);
        std::vector<std::pair<gp::KernelFamily, gp::KernelSpec>> fitted;
        auto fitted_for = [&](const gp::KernelSpec &start) {
            for (const auto &[family, spec] : fitted) {
                if (family == start.family) {
                    return spec;
                }
            }
            fitted.emplace_back(start.family, fit_hyperparameters(config, split.train, start, rep));
            return fitted.back().second;
        };
        for (std::size_t m = 0; m < models.size(); ++m) {
            const Model &model = models[m];
            const gp::KernelSpec spec = fitted_for(model.kernel);
            Accum &a = acc[m];
            gp::PosteriorResult post;
            if (!model.ansatz) {
                post = gp::posterior(split.train, split.x_test, spec);
                a.record.iterations_per_repetition.push_back(0.0);
                a.record.raw_mse_per_repetition.push_back(mse(post.mean, split.truth));
                if (vqls_gp::count_negative_variances(post) > 0) {
                    ++a.record.negative_variance_repetitions;
                }
            } else {
                vqls_gp::VqlsGpConfig vc;
                vc.option = config.option;
                vc.vqls = config.vqls;
                vc.vqls.seed = derived_seed(config, rep);
                vc.ansatz = *model.ansatz;
                vc.layers = config.layers;
                vc.cz_pattern = config.cz_pattern;
                vc.threads = config.threads;
                const auto report = vqls_gp::vqls_gp_regress(split.train, split.x_test, spec, vc);
                post = report.posterior;
                if (rep == 0) {
                    a.record.pauli_strings = report.pauli_string_count;
                }
                a.record.iterations_per_repetition.push_back(
                    static_cast<double>(report.total_iterations));
                a.record.raw_mse_per_repetition.push_back(
                    mse(report.raw_mean ? *report.raw_mean : post.mean, split.truth));
                if (report.negative_variance_count > 0) {
                    ++a.record.negative_variance_repetitions;
                }
                for (const auto &d : report.diagnostics) {
                    if (d.skipped) {
                        continue;
                    }
                    ++a.record.solve_loops;
                    a.converged += d.converged ? 1 : 0;
                    a.traces.push_back(d.cost_trace);
                }
            }
            a.record.mse_per_repetition.push_back(mse(post.mean, split.truth));
            if (rep == 0) {
                result.regressions.push_back({model.label, first_coordinates(split.x_test),
                                              post.mean, post.variance(), split.truth,
                                              first_coordinates(split.train.x), split.train.y});
            }
        }
    }

    for (std::size_t m = 0; m < models.size(); ++m) {
        Accum &a = acc[m];
        std::tie(a.record.mse_mean, a.record.mse_std) = mean_std(a.record.mse_per_repetition);
        std::tie(a.record.iterations_mean, a.record.iterations_std) =
            mean_std(a.record.iterations_per_repetition);
        a.record.converged_fraction =
            a.record.solve_loops == 0
                ? 1.0
                : static_cast<double>(a.converged) / static_cast<double>(a.record.solve_loops);
        if (models[m].ansatz) {
            result.losses.push_back(average_log_loss(models[m].label, a.traces));
        }
        result.records.push_back(std::move(a.record));
    }
    return result;
}

gp::KernelSpec kernel_of(const ExperimentConfig &config, gp::KernelFamily family) {
    for (const auto &k : config.kernels) {
        if (k.family == family) {
            return k;
        }
    }
    return {family, {1.0, 1.0, 0.64, 0.01}};
}

} // namespace

gp::KernelSpec fit_hyperparameters(const ExperimentConfig &config, const gp::Dataset &train,
                                   const gp::KernelSpec &start, std::size_t repetition) {
    if (!config.optimize_hyperparameters) {
        return start;
    }
    gp::OptimizeOptions opts;
    opts.restarts = config.hyper_restarts;
    opts.seed = derived_seed(config, repetition);
    gp::KernelSpec out = start;
    out.hyper = gp::optimize_hyperparameters(train, start, opts).hyper;
    return out;
}

BenchResult run_kernel_comparison(const ExperimentConfig &config) {
    std::vector<Model> models;
    for (const auto &k : config.kernels) {
        models.push_back({"GP " + std::string(gp::to_string(k.family)), k, std::nullopt});
    }
    for (const auto &k : config.kernels) {
        models.push_back(
            {"VQLS-GP " + std::string(gp::to_string(k.family)) + " HEA", k,
             circuits::AnsatzKind::HEA});
    }
    return run_models(config, models);
}

BenchResult run_ansatz_comparison(const ExperimentConfig &config) {
    const gp::KernelSpec mt = kernel_of(config, gp::KernelFamily::MT);
    std::vector<Model> models{{"GP MT", mt, std::nullopt}};
    for (const auto kind : config.ansaetze) {
        models.push_back({"VQLS-GP MT " + std::string(circuits::to_string(kind)), mt, kind});
    }
    return run_models(config, models);
}

BenchResult run_single(const ExperimentConfig &config) {
    const gp::KernelSpec &k = config.kernels.front();
    const auto kind = config.ansaetze.front();
    const std::string label = std::string(gp::to_string(k.family));
    return run_models(config, {{"GP " + label, k, std::nullopt},
                               {"VQLS-GP " + label + " " + std::string(circuits::to_string(kind)),
                                k, kind}});
}

BenchResult run_experiment(const ExperimentConfig &config) {
    switch (config.experiment) {
    case Experiment::KernelComparison: return run_kernel_comparison(config);
    case Experiment::AnsatzComparison: return run_ansatz_comparison(config);
    case Experiment::Single: return run_single(config);
    }
    return {};
}

} // namespace vqlsgp::bench
