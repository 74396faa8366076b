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

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "vqlsgp/bench/bench.hpp"
#include "vqlsgp/error.hpp"

namespace vqlsgp::bench {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string &what) {
    throw Error(ErrorCode::ConfigError, what);
}

void check_keys(const json &j, const std::set<std::string> &allowed, const std::string &where) {
    if (!j.is_object()) {
        config_error(where + " must be an object");
    }
    for (const auto &item : j.items()) {
        if (allowed.count(item.key()) == 0) {
            config_error("unknown key '" + item.key() + "' in " + where);
        }
    }
}

template <class T> void read(const json &j, const char *key, T &out) {
    if (j.contains(key)) {
        out = j.at(key).get<T>();
    }
}

Interval read_interval(const json &j) {
    if (!j.is_array() || j.size() != 2) {
        config_error("intervals are [lo, hi] pairs");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Experiment parse_experiment(const std::string &s) {
    if (s == "kernels") return Experiment::KernelComparison;
    if (s == "ansaetze") return Experiment::AnsatzComparison;
    if (s == "single") return Experiment::Single;
    config_error("unknown experiment '" + s + "'");
}

std::string experiment_name(Experiment e) {
    switch (e) {
    case Experiment::KernelComparison: return "kernels";
    case Experiment::AnsatzComparison: return "ansaetze";
    case Experiment::Single: return "single";
    }
    return "?";
}

void read_vqls(const json &j, vqls::VqlsConfig &v) {
    check_keys(j,
               {"cost", "tol", "max_iters", "restarts", "learning_rate", "engine", "shots",
                "gradient", "seed", "finite_difference_step"},
               "vqls");
    if (j.contains("cost")) {
        const auto s = j.at("cost").get<std::string>();
        if (s == "local") v.cost = vqls::CostKind::Local;
        else if (s == "global") v.cost = vqls::CostKind::Global;
        else config_error("unknown cost '" + s + "'");
    }
    read(j, "tol", v.tol);
    read(j, "max_iters", v.max_iters);
    read(j, "restarts", v.restarts);
    read(j, "learning_rate", v.learning_rate);
    read(j, "seed", v.seed);
    read(j, "finite_difference_step", v.finite_difference_step);
    if (j.contains("engine")) {
        const auto s = j.at("engine").get<std::string>();
        if (s == "statevector") v.eval.engine = vqls::Engine::Statevector;
        else if (s == "hadamard") v.eval.engine = vqls::Engine::HadamardTests;
        else config_error("unknown engine '" + s + "'");
    }
    if (j.contains("shots")) {
        const auto shots = j.at("shots").get<std::size_t>();
        if (shots == 0) {
            v.eval.mode = circuits::Analytic{};
        } else {
            v.eval.mode = circuits::Shots{shots, v.seed};
        }
    }
    if (j.contains("gradient")) {
        const auto s = j.at("gradient").get<std::string>();
        if (s == "parameter-shift") v.gradient = vqls::GradientMethod::ParameterShift;
        else if (s == "finite-difference") v.gradient = vqls::GradientMethod::FiniteDifference;
        else config_error("unknown gradient method '" + s + "'");
    }
}

gp::KernelSpec read_kernel(const json &j) {
    check_keys(j, {"family", "sigma", "length", "taper", "noise"}, "kernel");
    gp::KernelSpec k{gp::KernelFamily::RBF, {1.0, 1.0, 0.64, 0.01}};
    if (!j.contains("family")) {
        config_error("kernel entries need a family");
    }
    k.family = gp::parse_kernel_family(j.at("family").get<std::string>());
    read(j, "sigma", k.hyper.sigma);
    read(j, "length", k.hyper.length);
    read(j, "taper", k.hyper.taper);
    read(j, "noise", k.hyper.noise);
    return k;
}

} // namespace

ExperimentConfig config_from_json(const std::string &text) {
    ExperimentConfig c;
    try {
        const json j = json::parse(text);
        check_keys(j,
                   {"experiment", "repetitions", "seed", "n_train", "m_test", "train_interval",
                    "test_interval", "noise_std", "kernels", "ansaetze", "layers", "cz_pattern",
                    "vqls", "option", "optimize_hyperparameters", "hyper_restarts",
                    "noisy_mse", "threads", "output_dir"},
                   "config");
        if (j.contains("experiment")) {
            c.experiment = parse_experiment(j.at("experiment").get<std::string>());
        }
        read(j, "repetitions", c.repetitions);
        read(j, "seed", c.seed);
        read(j, "n_train", c.n_train);
        read(j, "m_test", c.m_test);
        if (j.contains("train_interval")) c.train = read_interval(j.at("train_interval"));
        if (j.contains("test_interval")) c.test = read_interval(j.at("test_interval"));
        read(j, "noise_std", c.noise_std);
        if (j.contains("kernels")) {
            c.kernels.clear();
            for (const auto &k : j.at("kernels")) {
                c.kernels.push_back(read_kernel(k));
            }
        }
        if (j.contains("ansaetze")) {
            c.ansaetze.clear();
            for (const auto &a : j.at("ansaetze")) {
                c.ansaetze.push_back(circuits::parse_ansatz_kind(a.get<std::string>()));
            }
        }
        read(j, "layers", c.layers);
        if (j.contains("cz_pattern")) {
            const auto s = j.at("cz_pattern").get<std::string>();
            if (s == "linear") c.cz_pattern = circuits::CzPattern::Linear;
            else if (s == "alternating") c.cz_pattern = circuits::CzPattern::Alternating;
            else config_error("unknown cz_pattern '" + s + "'");
        }
        if (j.contains("vqls")) read_vqls(j.at("vqls"), c.vqls);
        if (j.contains("option")) {
            const auto s = j.at("option").get<std::string>();
            if (s == "inverse-columns") c.option = vqls_gp::Option::InverseColumns;
            else if (s == "direct-products") c.option = vqls_gp::Option::DirectProducts;
            else config_error("unknown option '" + s + "'");
        }
        read(j, "optimize_hyperparameters", c.optimize_hyperparameters);
        read(j, "hyper_restarts", c.hyper_restarts);
        read(j, "noisy_mse", c.noisy_mse);
        read(j, "threads", c.threads);
        read(j, "output_dir", c.output_dir);
    } catch (const json::exception &e) {
        config_error(std::string("malformed config: ") + e.what());
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path &file) {
    std::ifstream in(file);
    if (!in) {
        config_error("cannot read config " + file.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_json(ss.str());
}

std::string config_to_json(const ExperimentConfig &c) {
    json j;
    j["experiment"] = experiment_name(c.experiment);
    j["repetitions"] = c.repetitions;
    j["seed"] = c.seed;
    j["n_train"] = c.n_train;
    j["m_test"] = c.m_test;
    j["train_interval"] = {c.train.lo, c.train.hi};
    j["test_interval"] = {c.test.lo, c.test.hi};
    j["noise_std"] = c.noise_std;
    j["kernels"] = json::array();
    for (const auto &k : c.kernels) {
        j["kernels"].push_back({{"family", std::string(gp::to_string(k.family))},
                                {"sigma", k.hyper.sigma},
                                {"length", k.hyper.length},
                                {"taper", k.hyper.taper},
                                {"noise", k.hyper.noise}});
    }
    j["ansaetze"] = json::array();
    for (auto a : c.ansaetze) {
        j["ansaetze"].push_back(std::string(circuits::to_string(a)));
    }
    j["layers"] = c.layers;
    j["cz_pattern"] = c.cz_pattern == circuits::CzPattern::Linear ? "linear" : "alternating";
    const auto *shots = std::get_if<circuits::Shots>(&c.vqls.eval.mode);
    j["vqls"] = {
        {"cost", c.vqls.cost == vqls::CostKind::Local ? "local" : "global"},
        {"tol", c.vqls.tol},
        {"max_iters", c.vqls.max_iters},
        {"restarts", c.vqls.restarts},
        {"learning_rate", c.vqls.learning_rate},
        {"engine", c.vqls.eval.engine == vqls::Engine::Statevector ? "statevector" : "hadamard"},
        {"shots", shots ? shots->count : 0},
        {"gradient", c.vqls.gradient == vqls::GradientMethod::ParameterShift
                         ? "parameter-shift"
                         : "finite-difference"},
        {"seed", c.vqls.seed},
        {"finite_difference_step", c.vqls.finite_difference_step},
    };
    j["option"] =
        c.option == vqls_gp::Option::InverseColumns ? "inverse-columns" : "direct-products";
    j["optimize_hyperparameters"] = c.optimize_hyperparameters;
    j["hyper_restarts"] = c.hyper_restarts;
    j["noisy_mse"] = c.noisy_mse;
    j["threads"] = c.threads;
    j["output_dir"] = c.output_dir;
    return j.dump(2);
}

} // namespace vqlsgp::bench
