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

#include <cmath>
#include <random>

#include "vqlsgp/bench/bench.hpp"
#include "vqlsgp/error.hpp"

namespace vqlsgp::bench {

double snelson(double x) noexcept { return std::sin(2.0 * x) + std::cos(5.0 * x); }

Vector linspace(Interval range, std::size_t n) {
    if (n == 0) {
        return {};
    }
    if (n == 1) {
        return {range.lo};
    }
    Vector v(n);
    const double step = (range.hi - range.lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = range.lo + step * static_cast<double>(i);
    }
    v.back() = range.hi;
    return v;
}

void ExperimentConfig::validate() const {
    auto fail = [](const std::string &what) { throw Error(ErrorCode::ConfigError, what); };
    if (repetitions < 1) fail("repetitions must be at least 1");
    if (n_train < 1 || m_test < 1) fail("n_train and m_test must be at least 1");
    if (!(train.lo < train.hi) || !(test.lo < test.hi)) fail("intervals must be ordered");
    if (!(noise_std >= 0.0)) fail("noise_std must be non-negative");
    if (kernels.empty()) fail("at least one kernel is required");
    if (ansaetze.empty()) fail("at least one ansatz is required");
    if (threads < 1) fail("threads must be at least 1");
    for (const auto &k : kernels) {
        try {
            k.validate();
        } catch (const Error &e) {
            fail(e.what());
        }
    }
    vqls.validate();
}

Split generate_dataset(const ExperimentConfig &config, std::size_t repetition) {
    std::seed_seq seq{config.seed, static_cast<std::uint64_t>(repetition)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> noise(0.0, 1.0);
    const Vector x = linspace(config.train, config.n_train);
    Vector y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        y[i] = snelson(x[i]) + config.noise_std * noise(rng);
    }
    const Vector xs = linspace(config.test, config.m_test);
    Vector truth(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        truth[i] = snelson(xs[i]);
        if (config.noisy_mse) {
            truth[i] += config.noise_std * noise(rng);
        }
    }
    return {gp::Dataset::from_1d(x, y), gp::points_1d(xs), std::move(truth)};
}

double mse(std::span<const double> predictions, std::span<const double> truths) {
    if (predictions.size() != truths.size()) {
        throw Error(ErrorCode::DimensionMismatch, "mse length mismatch");
    }
    if (predictions.empty()) {
        return 0.0;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const double d = predictions[i] - truths[i];
        s += d * d;
    }
    return s / static_cast<double>(predictions.size());
}

std::pair<double, double> mean_std(std::span<const double> v) {
    if (v.empty()) {
        return {0.0, 0.0};
    }
    double m = 0.0;
    for (double x : v) {
        m += x;
    }
    m /= static_cast<double>(v.size());
    if (v.size() == 1) {
        return {m, 0.0};
    }
    double s = 0.0;
    for (double x : v) {
        s += (x - m) * (x - m);
    }
    return {m, std::sqrt(s / static_cast<double>(v.size() - 1))};
}

LossCurve average_log_loss(std::string model, const std::vector<std::vector<double>> &traces) {
    LossCurve curve{std::move(model), {}, {}};
    std::size_t len = 0;
    for (const auto &t : traces) {
        len = std::max(len, t.size());
    }
    curve.mean_log10.resize(len);
    curve.std_log10.resize(len);
    std::vector<double> column;
    for (std::size_t k = 0; k < len; ++k) {
        column.clear();
        for (const auto &t : traces) {
            if (t.empty()) {
                continue;
            }
            const double c = k < t.size() ? t[k] : t.back();
            column.push_back(std::log10(std::max(c, 1e-300)));
        }
        const auto [m, s] = mean_std(column);
        curve.mean_log10[k] = m;
        curve.std_log10[k] = s;
    }
    return curve;
}

} // namespace vqlsgp::bench
