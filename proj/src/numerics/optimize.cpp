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

#include "vqlsgp/numerics/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "vqlsgp/error.hpp"

namespace vqlsgp::numerics {

AdamState AdamState::make(std::size_t dim, AdamConfig config) {
    return AdamState{config, 0, Vector(dim, 0.0), Vector(dim, 0.0)};
}

AdamStepResult adam_step(AdamState state, std::span<const double> params,
                         std::span<const double> grad) {
    if (params.size() != grad.size() || state.first_moment.size() != grad.size() ||
        state.second_moment.size() != grad.size()) {
        throw Error(ErrorCode::DimensionMismatch, "adam state/params/grad lengths");
    }
    for (double g : grad) {
        if (!std::isfinite(g)) {
            throw Error(ErrorCode::NonFiniteGradient, "adam received a non-finite gradient");
        }
    }
    const AdamConfig &c = state.config;
    state.step += 1;
    const double t = static_cast<double>(state.step);
    const double bias1 = 1.0 - std::pow(c.beta1, t);
    const double bias2 = 1.0 - std::pow(c.beta2, t);

    Vector next(params.begin(), params.end());
    for (std::size_t i = 0; i < grad.size(); ++i) {
        double &m = state.first_moment[i];
        double &v = state.second_moment[i];
        m = c.beta1 * m + (1.0 - c.beta1) * grad[i];
        v = c.beta2 * v + (1.0 - c.beta2) * grad[i] * grad[i];
        const double m_hat = m / bias1;
        const double v_hat = v / bias2;
        next[i] -= c.learning_rate * m_hat / (std::sqrt(v_hat) + c.epsilon);
    }
    return {std::move(next), std::move(state)};
}

namespace {

double inf_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

struct Pair {
    Vector s;
    Vector y;
    double rho;
};

Vector two_loop(const std::deque<Pair> &history, const Vector &grad) {
    Vector q = grad;
    std::vector<double> alpha(history.size());
    for (std::size_t k = history.size(); k-- > 0;) {
        const Pair &p = history[k];
        alpha[k] = p.rho * dot(p.s, q);
        q = axpy(-alpha[k], p.y, q);
    }
    if (!history.empty()) {
        const Pair &last = history.back();
        const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
        for (double &v : q) {
            v *= gamma;
        }
    }
    for (std::size_t k = 0; k < history.size(); ++k) {
        const Pair &p = history[k];
        const double beta = p.rho * dot(p.y, q);
        q = axpy(alpha[k] - beta, p.s, q);
    }
    for (double &v : q) {
        v = -v;
    }
    return q;
}

} // namespace

QuasiNewtonResult quasi_newton_minimize(const ScalarFunction &f,
                                        const GradientFunction &grad_f,
                                        std::span<const double> x0,
                                        const QuasiNewtonConfig &config) {
    QuasiNewtonResult result;
    result.x.assign(x0.begin(), x0.end());
    result.value = f(result.x);
    if (!std::isfinite(result.value)) {
        throw Error(ErrorCode::NonFiniteObjective, "objective is not finite at the start point");
    }
    Vector g = grad_f(result.x);
    result.gradient_norm = norm2(g);
    std::deque<Pair> history;

    for (std::size_t iter = 0; iter < config.max_iterations; ++iter) {
        if (result.gradient_norm < config.gradient_tolerance) {
            result.converged = true;
            return result;
        }
        Vector d = two_loop(history, g);
        double slope = dot(g, d);
        if (!(slope < 0.0)) {
            history.clear();
            d = g;
            for (double &v : d) {
                v = -v;
            }
            slope = dot(g, d);
        }
        double alpha = history.empty() ? std::min(1.0, 1.0 / inf_norm(g)) : 1.0;

        // Backtracking: a trial that satisfies Armijo is taken as is; otherwise
        // the minimiser of the interpolating quadratic is probed and, clamped
        // to [0.1α, 0.5α], becomes the next trial step.
        bool accepted = false;
        Vector x_new;
        double f_new = 0.0;
        for (std::size_t bt = 0; bt < config.max_backtracks && !accepted; ++bt) {
            Vector trial = axpy(alpha, d, result.x);
            const double f_trial = f(trial);
            double next_alpha = 0.5 * alpha;
            if (std::isfinite(f_trial)) {
                if (f_trial <= result.value + config.armijo * alpha * slope) {
                    accepted = true;
                    x_new = std::move(trial);
                    f_new = f_trial;
                    break;
                }
                const double curvature = f_trial - result.value - slope * alpha;
                if (curvature > 0.0) {
                    const double aq = -slope * alpha * alpha / (2.0 * curvature);
                    Vector probe = axpy(aq, d, result.x);
                    const double f_probe = f(probe);
                    if (std::isfinite(f_probe) &&
                        f_probe <= result.value + config.armijo * aq * slope) {
                        accepted = true;
                        x_new = std::move(probe);
                        f_new = f_probe;
                        break;
                    }
                    next_alpha = std::clamp(aq, 0.1 * alpha, 0.5 * alpha);
                }
            }
            alpha = next_alpha;
        }
        if (!accepted) {
            // No sufficient decrease along a descent direction: numerically
            // stationary at this resolution.
            result.iterations = iter;
            return result;
        }

        Vector g_new = grad_f(x_new);
        Vector s(x_new.size());
        Vector y(x_new.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            s[i] = x_new[i] - result.x[i];
            y[i] = g_new[i] - g[i];
        }
        const double sy = dot(s, y);
        if (sy > 1e-12 * norm2(s) * norm2(y)) {
            history.push_back({std::move(s), std::move(y), 1.0 / sy});
            if (history.size() > config.memory) {
                history.pop_front();
            }
        }
        result.x = std::move(x_new);
        result.value = f_new;
        g = std::move(g_new);
        result.gradient_norm = norm2(g);
        result.iterations = iter + 1;
    }
    result.converged = result.gradient_norm < config.gradient_tolerance;
    return result;
}

Vector finite_difference_gradient(const ScalarFunction &f, std::span<const double> x,
                                  double h) {
    if (!(h > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "finite-difference step must be positive");
    }
    Vector grad(x.size());
    Vector probe(x.begin(), x.end());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = probe[i];
        probe[i] = xi + h;
        const double fp = f(probe);
        probe[i] = xi - h;
        const double fm = f(probe);
        probe[i] = xi;
        grad[i] = (fp - fm) / (2.0 * h);
    }
    return grad;
}

} // namespace vqlsgp::numerics
