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

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace vqlsgp::numerics {

using Vector = std::vector<double>;

/// Row-major dense real matrix.
class DenseMatrix {
  public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
    DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix diagonal(std::span<const double> diag);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }

    double &operator()(std::size_t i, std::size_t j) noexcept {
        return data_[i * cols_ + j];
    }
    double operator()(std::size_t i, std::size_t j) const noexcept {
        return data_[i * cols_ + j];
    }

    [[nodiscard]] std::span<const double> row(std::size_t i) const noexcept {
        return {data_.data() + i * cols_, cols_};
    }
    [[nodiscard]] std::span<const double> data() const noexcept { return data_; }
    [[nodiscard]] std::span<double> data() noexcept { return data_; }

    [[nodiscard]] Vector column(std::size_t j) const;
    void set_column(std::size_t j, std::span<const double> values);

    [[nodiscard]] DenseMatrix transpose() const;
    [[nodiscard]] double max_abs() const noexcept;
    [[nodiscard]] double frobenius_norm() const noexcept;
    [[nodiscard]] double trace() const;

    /// Symmetric within `rel_tol · max|A|`.
    [[nodiscard]] bool is_symmetric(double rel_tol = 1e-12) const noexcept;

    friend bool operator==(const DenseMatrix &, const DenseMatrix &) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

[[nodiscard]] DenseMatrix operator*(const DenseMatrix &a, const DenseMatrix &b);
[[nodiscard]] DenseMatrix operator+(const DenseMatrix &a, const DenseMatrix &b);
[[nodiscard]] DenseMatrix operator-(const DenseMatrix &a, const DenseMatrix &b);
[[nodiscard]] DenseMatrix operator*(double s, const DenseMatrix &a);
[[nodiscard]] Vector operator*(const DenseMatrix &a, std::span<const double> x);

/// aᵀ·b without forming the transpose.
[[nodiscard]] DenseMatrix transpose_times(const DenseMatrix &a, const DenseMatrix &b);

[[nodiscard]] double dot(std::span<const double> a, std::span<const double> b);
[[nodiscard]] double norm2(std::span<const double> a);
[[nodiscard]] Vector axpy(double alpha, std::span<const double> x, std::span<const double> y);

/// LU with partial pivoting; used for determinant sign/magnitude and
/// singularity detection on general square matrices.
struct LuResult {
    double log_abs_det = 0.0;
    int sign = 1;
    double min_pivot = 0.0;
    double max_pivot = 0.0;
};

[[nodiscard]] LuResult lu_determinant(const DenseMatrix &a);

/// Solves a general square system by LU with partial pivoting.
[[nodiscard]] Vector lu_solve(const DenseMatrix &a, std::span<const double> b);

} // namespace vqlsgp::numerics
