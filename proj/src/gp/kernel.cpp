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

#include "vqlsgp/error.hpp"
#include "vqlsgp/gp/gp.hpp"

namespace vqlsgp::gp {

void KernelSpec::validate() const {
    if (!(hyper.sigma > 0.0) || !(hyper.length > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "sigma and length must be positive");
    }
    if (family == KernelFamily::MT && !(hyper.taper > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "MT needs a positive taper range");
    }
    if (!(hyper.noise >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "noise variance must be non-negative");
    }
}

std::string_view to_string(KernelFamily family) noexcept {
    switch (family) {
    case KernelFamily::RBF: return "RBF";
    case KernelFamily::Matern52: return "Matern52";
    case KernelFamily::MT: return "MT";
    }
    return "?";
}

KernelFamily parse_kernel_family(std::string_view text) {
    if (text == "RBF") return KernelFamily::RBF;
    if (text == "Matern52") return KernelFamily::Matern52;
    if (text == "MT") return KernelFamily::MT;
    throw Error(ErrorCode::ConfigError, "unknown kernel '" + std::string(text) + "'");
}

std::vector<Vector> points_1d(std::span<const double> x) {
    std::vector<Vector> out;
    out.reserve(x.size());
    for (double v : x) {
        out.push_back({v});
    }
    return out;
}

Dataset Dataset::from_1d(std::span<const double> x, std::span<const double> y) {
    Dataset d{points_1d(x), Vector(y.begin(), y.end())};
    d.validate();
    return d;
}

void Dataset::validate() const {
    if (x.size() != y.size()) {
        throw Error(ErrorCode::DimensionMismatch, "inputs and targets differ in length");
    }
    for (const Vector &p : x) {
        if (p.empty() || p.size() != x.front().size()) {
            throw Error(ErrorCode::DimensionMismatch, "inconsistent input dimension");
        }
    }
}

double rbf(double h, double sigma, double length) {
    return sigma * sigma * std::exp(-h * h / (2.0 * length * length));
}

double matern52(double h, double sigma, double length) {
    const double r = std::sqrt(5.0) * h / length;
    return sigma * sigma * (1.0 + r + r * r / 3.0) * std::exp(-r);
}

double wendland2(double h, double theta) {
    const double t = h / theta;
    if (t >= 1.0) {
        return 0.0;
    }
    return std::pow(1.0 - t, 6) * (1.0 + 6.0 * t + 35.0 * t * t / 3.0);
}

double kernel_eval(const KernelSpec &spec, double h) {
    const Hyperparameters &p = spec.hyper;
    switch (spec.family) {
    case KernelFamily::RBF: return rbf(h, p.sigma, p.length);
    case KernelFamily::Matern52: return matern52(h, p.sigma, p.length);
    case KernelFamily::MT: return matern52(h, p.sigma, p.length) * wendland2(h, p.taper);
    }
    return 0.0;
}

KernelGradient kernel_derivatives(const KernelSpec &spec, double h) {
    const Hyperparameters &p = spec.hyper;
    const double s2 = p.sigma * p.sigma;
    KernelGradient g;
    g.d_sigma = 2.0 * kernel_eval(spec, h) / p.sigma;
    switch (spec.family) {
    case KernelFamily::RBF:
        g.d_length = s2 * std::exp(-h * h / (2.0 * p.length * p.length)) * h * h /
                     (p.length * p.length * p.length);
        break;
    case KernelFamily::Matern52:
    case KernelFamily::MT: {
        const double r = std::sqrt(5.0) * h / p.length;
        g.d_length = s2 * std::exp(-r) * r * r * (1.0 + r) / (3.0 * p.length);
        if (spec.family == KernelFamily::MT) {
            g.d_length *= wendland2(h, p.taper);
        }
        break;
    }
    }
    return g;
}

namespace {

double distance(const Vector &a, const Vector &b) {
    if (a.size() != b.size()) {
        throw Error(ErrorCode::DimensionMismatch, "input dimensions differ");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += (a[i] - b[i]) * (a[i] - b[i]);
    }
    return std::sqrt(s);
}

} // namespace

DenseMatrix covariance_matrix(const std::vector<Vector> &xa, const std::vector<Vector> &xb,
                              const KernelSpec &spec) {
    spec.validate();
    DenseMatrix k(xa.size(), xb.size());
    for (std::size_t i = 0; i < xa.size(); ++i) {
        for (std::size_t j = 0; j < xb.size(); ++j) {
            k(i, j) = kernel_eval(spec, distance(xa[i], xb[j]));
        }
    }
    return k;
}

DenseMatrix noisy_covariance(const Dataset &train, const KernelSpec &spec) {
    train.validate();
    DenseMatrix k = covariance_matrix(train.x, train.x, spec);
    for (std::size_t i = 0; i < k.rows(); ++i) {
        k(i, i) += spec.hyper.noise;
    }
    return k;
}

// Derivative matrices ∂K̂/∂σ and ∂K̂/∂l over the training inputs.
std::pair<DenseMatrix, DenseMatrix> covariance_derivatives(const Dataset &train,
                                                          const KernelSpec &spec) {
    const std::size_t n = train.size();
    DenseMatrix ds(n, n);
    DenseMatrix dl(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const KernelGradient g = kernel_derivatives(spec, distance(train.x[i], train.x[j]));
            ds(i, j) = g.d_sigma;
            dl(i, j) = g.d_length;
        }
    }
    return {std::move(ds), std::move(dl)};
}

} // namespace vqlsgp::gp
