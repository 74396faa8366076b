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

#include "vqlsgp/numerics/cholesky.hpp"

#include <cmath>
#include <sstream>

#include "vqlsgp/error.hpp"

namespace vqlsgp::numerics {

struct CholeskyAccess {
    static CholeskyFactor make(DenseMatrix lower) {
        return CholeskyFactor(std::move(lower));
    }
};

CholeskyFactor cholesky(const DenseMatrix &a, CholeskyOptions options) {
    if (!a.is_square()) {
        throw Error(ErrorCode::DimensionMismatch, "cholesky of non-square matrix");
    }
    const std::size_t n = a.rows();
    for (double v : a.data()) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::NotPositiveDefinite, "non-finite entry");
        }
    }
    const double jitter = options.jitter && n > 0 ? 1e-10 * a.trace() / n : 0.0;

    DenseMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j) + jitter;
        for (std::size_t k = 0; k < j; ++k) {
            d -= l(j, k) * l(j, k);
        }
        if (!(d > 0.0)) {
            std::ostringstream os;
            os << "pivot " << j << " is " << d;
            throw Error(ErrorCode::NotPositiveDefinite, os.str());
        }
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) {
                s -= l(i, k) * l(j, k);
            }
            l(i, j) = s / ljj;
        }
    }
    return CholeskyAccess::make(std::move(l));
}

Vector triangular_solve(const CholeskyFactor &factor, std::span<const double> rhs,
                        bool transposed) {
    const std::size_t n = factor.dim();
    if (rhs.size() != n) {
        throw Error(ErrorCode::DimensionMismatch, "triangular solve rhs");
    }
    const DenseMatrix &l = factor.lower();
    Vector x(rhs.begin(), rhs.end());
    if (!transposed) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = x[i];
            for (std::size_t k = 0; k < i; ++k) {
                s -= l(i, k) * x[k];
            }
            x[i] = s / l(i, i);
        }
    } else {
        for (std::size_t i = n; i-- > 0;) {
            double s = x[i];
            for (std::size_t k = i + 1; k < n; ++k) {
                s -= l(k, i) * x[k];
            }
            x[i] = s / l(i, i);
        }
    }
    return x;
}

DenseMatrix triangular_solve(const CholeskyFactor &factor, const DenseMatrix &rhs,
                             bool transposed) {
    if (rhs.rows() != factor.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "triangular solve rhs");
    }
    DenseMatrix out(rhs.rows(), rhs.cols());
    for (std::size_t j = 0; j < rhs.cols(); ++j) {
        out.set_column(j, triangular_solve(factor, rhs.column(j), transposed));
    }
    return out;
}

Vector cholesky_solve(const CholeskyFactor &factor, std::span<const double> rhs) {
    return triangular_solve(factor, triangular_solve(factor, rhs, false), true);
}

double log_determinant(const CholeskyFactor &factor) {
    double s = 0.0;
    for (std::size_t i = 0; i < factor.dim(); ++i) {
        s += std::log(factor.lower()(i, i));
    }
    return 2.0 * s;
}

DenseMatrix cholesky_inverse(const CholeskyFactor &factor) {
    const std::size_t n = factor.dim();
    DenseMatrix inv(n, n);
    Vector e(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = 1.0;
        inv.set_column(j, cholesky_solve(factor, e));
        e[j] = 0.0;
    }
    return inv;
}

} // namespace vqlsgp::numerics
