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
#include <limits>
#include <numbers>
#include <random>

#include "vqlsgp/error.hpp"
#include "vqlsgp/gp/gp.hpp"
#include "vqlsgp/numerics/cholesky.hpp"
#include "vqlsgp/numerics/optimize.hpp"

namespace vqlsgp::gp {

Vector PosteriorResult::variance() const {
    Vector v(covariance.rows());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = covariance(i, i);
    }
    return v;
}

namespace {

double gaussian_constant(std::size_t n) {
    return 0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
}

void symmetrise(DenseMatrix &m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = i + 1; j < m.cols(); ++j) {
            const double avg = 0.5 * (m(i, j) + m(j, i));
            m(i, j) = avg;
            m(j, i) = avg;
        }
    }
}

} // namespace

PosteriorResult posterior(const Dataset &train, const std::vector<Vector> &x_star,
                          const KernelSpec &spec, const PosteriorSolver &solver) {
    const DenseMatrix k_hat = noisy_covariance(train, spec);
    const DenseMatrix k_star = covariance_matrix(train.x, x_star, spec);
    const DenseMatrix k_ss = covariance_matrix(x_star, x_star, spec);
    PosteriorResult out;
    if (std::holds_alternative<CholeskySolver>(solver)) {
        const auto factor = numerics::cholesky(k_hat);
        const Vector alpha = numerics::cholesky_solve(factor, train.y);
        const DenseMatrix v = numerics::triangular_solve(factor, k_star, false);
        out.mean = k_star.transpose() * alpha;
        out.covariance = k_ss - transpose_times(v, v);
        out.lml = -0.5 * numerics::dot(train.y, alpha) - 0.5 * numerics::log_determinant(factor) -
                  gaussian_constant(train.size());
    } else {
        const DenseMatrix &inv = std::get<ProvidedInverse>(solver).inverse;
        if (inv.rows() != k_hat.rows() || inv.cols() != k_hat.cols()) {
            throw Error(ErrorCode::DimensionMismatch, "provided inverse has the wrong shape");
        }
        const Vector alpha = inv * train.y;
        out.mean = k_star.transpose() * alpha;
        out.covariance = k_ss - transpose_times(k_star, inv * k_star);
    }
    symmetrise(out.covariance);
    return out;
}

double log_marginal_likelihood(const Dataset &train, const KernelSpec &spec) {
    const auto factor = numerics::cholesky(noisy_covariance(train, spec));
    const Vector alpha = numerics::cholesky_solve(factor, train.y);
    return -0.5 * numerics::dot(train.y, alpha) - 0.5 * numerics::log_determinant(factor) -
           gaussian_constant(train.size());
}

Vector lml_gradient(const Dataset &train, const KernelSpec &spec, bool include_noise) {
    const auto factor = numerics::cholesky(noisy_covariance(train, spec));
    const Vector alpha = numerics::cholesky_solve(factor, train.y);
    const DenseMatrix inv = numerics::cholesky_inverse(factor);
    const auto [ds, dl] = covariance_derivatives(train, spec);
    const std::size_t n = train.size();
    // ½αᵀ(∂K̂)α − ½tr(K̂⁻¹∂K̂)
    auto component = [&](const DenseMatrix &d) {
        double fit = 0.0;
        double tr = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                fit += alpha[i] * d(i, j) * alpha[j];
                tr += inv(i, j) * d(j, i);
            }
        }
        return 0.5 * fit - 0.5 * tr;
    };
    Vector g{component(ds), component(dl)};
    if (include_noise) {
        g.push_back(component(DenseMatrix::identity(n)));
    }
    return g;
}

OptimizeResult optimize_hyperparameters(const Dataset &train, const KernelSpec &spec,
                                        const OptimizeOptions &options) {
    spec.validate();
    const bool noise = options.optimize_noise;
    auto unpack = [&](std::span<const double> z) {
        KernelSpec s = spec;
        s.hyper.sigma = std::exp(z[0]);
        s.hyper.length = std::exp(z[1]);
        if (noise) {
            s.hyper.noise = std::exp(z[2]);
        }
        return s;
    };
    const numerics::ScalarFunction f = [&](std::span<const double> z) {
        try {
            return -log_marginal_likelihood(train, unpack(z));
        } catch (const Error &) {
            return std::numeric_limits<double>::infinity();
        }
    };
    const numerics::GradientFunction grad = [&](std::span<const double> z) {
        const KernelSpec s = unpack(z);
        const Vector g = lml_gradient(train, s, noise);
        Vector out{-g[0] * s.hyper.sigma, -g[1] * s.hyper.length};
        if (noise) {
            out.push_back(-g[2] * s.hyper.noise);
        }
        return out;
    };

    std::vector<Vector> starts;
    starts.push_back(noise ? Vector{0.0, 0.0, std::log(std::max(spec.hyper.noise, 1e-6))}
                           : Vector{0.0, 0.0});
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> log_uniform(std::log(0.1), std::log(10.0));
    for (std::size_t r = 0; r < options.restarts; ++r) {
        Vector z = starts.front();
        z[0] = log_uniform(rng);
        z[1] = log_uniform(rng);
        starts.push_back(std::move(z));
    }

    std::optional<OptimizeResult> best;
    for (const Vector &z0 : starts) {
        if (!std::isfinite(f(z0))) {
            continue;
        }
        const auto res = numerics::quasi_newton_minimize(f, grad, z0);
        const double lml = -res.value;
        if (!best || lml > best->lml) {
            best = OptimizeResult{unpack(res.x).hyper, lml, res.gradient_norm};
        }
    }
    if (!best) {
        throw Error(ErrorCode::NotPositiveDefinite, "no restart produced a positive-definite K");
    }
    return *best;
}

} // namespace vqlsgp::gp
