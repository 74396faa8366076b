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

#include "vqlsgp/numerics/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "vqlsgp/error.hpp"

namespace vqlsgp::numerics {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols,
                         std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw Error(ErrorCode::DimensionMismatch,
                    "entry count does not match rows*cols");
    }
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    data_.reserve(rows_ * cols_);
    for (const auto &r : rows) {
        if (r.size() != cols_) {
            throw Error(ErrorCode::DimensionMismatch, "ragged initializer");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> diag) {
    DenseMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) {
        m(i, i) = diag[i];
    }
    return m;
}

Vector DenseMatrix::column(std::size_t j) const {
    Vector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        c[i] = (*this)(i, j);
    }
    return c;
}

void DenseMatrix::set_column(std::size_t j, std::span<const double> values) {
    if (values.size() != rows_) {
        throw Error(ErrorCode::DimensionMismatch, "column length");
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        (*this)(i, j) = values[i];
    }
}

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            t(j, i) = (*this)(i, j);
        }
    }
    return t;
}

double DenseMatrix::max_abs() const noexcept {
    double m = 0.0;
    for (double v : data_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

double DenseMatrix::frobenius_norm() const noexcept {
    double s = 0.0;
    for (double v : data_) {
        s += v * v;
    }
    return std::sqrt(s);
}

double DenseMatrix::trace() const {
    if (!is_square()) {
        throw Error(ErrorCode::DimensionMismatch, "trace of non-square matrix");
    }
    double t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

bool DenseMatrix::is_symmetric(double rel_tol) const noexcept {
    if (!is_square()) {
        return false;
    }
    const double tol = rel_tol * max_abs();
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = i + 1; j < cols_; ++j) {
            if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) {
                return false;
            }
        }
    }
    return true;
}

DenseMatrix operator*(const DenseMatrix &a, const DenseMatrix &b) {
    if (a.cols() != b.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "matrix product");
    }
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

DenseMatrix transpose_times(const DenseMatrix &a, const DenseMatrix &b) {
    if (a.rows() != b.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "transpose product");
    }
    DenseMatrix c(a.cols(), b.cols());
    for (std::size_t k = 0; k < a.rows(); ++k) {
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const double aki = a(k, i);
            if (aki == 0.0) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                c(i, j) += aki * b(k, j);
            }
        }
    }
    return c;
}

namespace {
DenseMatrix elementwise(const DenseMatrix &a, const DenseMatrix &b, double sign) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "elementwise shape");
    }
    DenseMatrix c = a;
    auto cd = c.data();
    auto bd = b.data();
    for (std::size_t i = 0; i < cd.size(); ++i) {
        cd[i] += sign * bd[i];
    }
    return c;
}
} // namespace

DenseMatrix operator+(const DenseMatrix &a, const DenseMatrix &b) {
    return elementwise(a, b, 1.0);
}

DenseMatrix operator-(const DenseMatrix &a, const DenseMatrix &b) {
    return elementwise(a, b, -1.0);
}

DenseMatrix operator*(double s, const DenseMatrix &a) {
    DenseMatrix c = a;
    for (double &v : c.data()) {
        v *= s;
    }
    return c;
}

Vector operator*(const DenseMatrix &a, std::span<const double> x) {
    if (a.cols() != x.size()) {
        throw Error(ErrorCode::DimensionMismatch, "matrix-vector product");
    }
    Vector y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const auto r = a.row(i);
        double s = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            s += r[j] * x[j];
        }
        y[i] = s;
    }
    return y;
}

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw Error(ErrorCode::DimensionMismatch, "dot product");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

Vector axpy(double alpha, std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw Error(ErrorCode::DimensionMismatch, "axpy");
    }
    Vector r(y.begin(), y.end());
    for (std::size_t i = 0; i < x.size(); ++i) {
        r[i] += alpha * x[i];
    }
    return r;
}

namespace {
struct LuFactor {
    DenseMatrix lu;
    std::vector<std::size_t> perm;
    LuResult summary;
};

LuFactor lu_factor(const DenseMatrix &a) {
    if (!a.is_square()) {
        throw Error(ErrorCode::DimensionMismatch, "LU of non-square matrix");
    }
    const std::size_t n = a.rows();
    LuFactor f{a, std::vector<std::size_t>(n), {}};
    for (std::size_t i = 0; i < n; ++i) {
        f.perm[i] = i;
    }
    DenseMatrix &m = f.lu;
    f.summary.min_pivot = n == 0 ? 0.0 : std::abs(m(0, 0));
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(m(i, k)) > std::abs(m(piv, k))) {
                piv = i;
            }
        }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(k, j), m(piv, j));
            }
            std::swap(f.perm[k], f.perm[piv]);
            f.summary.sign = -f.summary.sign;
        }
        const double p = m(k, k);
        const double ap = std::abs(p);
        f.summary.min_pivot = k == 0 ? ap : std::min(f.summary.min_pivot, ap);
        f.summary.max_pivot = std::max(f.summary.max_pivot, ap);
        if (p == 0.0) {
            f.summary.log_abs_det = -std::numeric_limits<double>::infinity();
            f.summary.sign = 0;
            continue;
        }
        if (p < 0.0) {
            f.summary.sign = -f.summary.sign;
        }
        f.summary.log_abs_det += std::log(ap);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double l = m(i, k) / p;
            m(i, k) = l;
            if (l == 0.0) {
                continue;
            }
            for (std::size_t j = k + 1; j < n; ++j) {
                m(i, j) -= l * m(k, j);
            }
        }
    }
    return f;
}
} // namespace

LuResult lu_determinant(const DenseMatrix &a) { return lu_factor(a).summary; }

Vector lu_solve(const DenseMatrix &a, std::span<const double> b) {
    if (a.rows() != b.size()) {
        throw Error(ErrorCode::DimensionMismatch, "LU solve rhs");
    }
    const LuFactor f = lu_factor(a);
    if (f.summary.sign == 0 ||
        f.summary.min_pivot <= 1e-14 * std::max(1.0, f.summary.max_pivot)) {
        throw Error(ErrorCode::SingularMatrix, "LU pivot vanished");
    }
    const std::size_t n = a.rows();
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[f.perm[i]];
        for (std::size_t j = 0; j < i; ++j) {
            s -= f.lu(i, j) * x[j];
        }
        x[i] = s;
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = x[ii];
        for (std::size_t j = ii + 1; j < n; ++j) {
            s -= f.lu(ii, j) * x[j];
        }
        x[ii] = s / f.lu(ii, ii);
    }
    return x;
}

} // namespace vqlsgp::numerics
