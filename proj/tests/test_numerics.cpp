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

#include <catch_amalgamated.hpp>

#include "oracle.hpp"
#include "vqlsgp/error.hpp"
#include "vqlsgp/numerics/cholesky.hpp"
#include "vqlsgp/numerics/matrix.hpp"
#include "vqlsgp/numerics/optimize.hpp"

using namespace vqlsgp;
using namespace vqlsgp::numerics;
using Catch::Approx;

TEST_CASE("numerics::cholesky of the 1x1 matrix [4]", "[numerics]") {
    const auto f = cholesky(DenseMatrix{{4.0}});
    CHECK(f.lower()(0, 0) == 2.0);
}

TEST_CASE("numerics::cholesky of a 2x2 SPD matrix", "[numerics]") {
    const auto f = cholesky(DenseMatrix{{4.0, 2.0}, {2.0, 3.0}});
    CHECK(f.lower()(0, 0) == Approx(2.0));
    CHECK(f.lower()(1, 0) == Approx(1.0));
    CHECK(f.lower()(1, 1) == Approx(std::sqrt(2.0)));
    CHECK(f.lower()(0, 1) == 0.0);
}

TEST_CASE("numerics::cholesky rejects indefinite and non-square input", "[numerics]") {
    CHECK_THROWS_AS(cholesky(DenseMatrix{{1.0, 2.0}, {2.0, 1.0}}), Error);
    try {
        (void)cholesky(DenseMatrix{{1.0, 2.0}, {2.0, 1.0}});
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::NotPositiveDefinite);
    }
    try {
        (void)cholesky(DenseMatrix(2, 3));
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
}

TEST_CASE("numerics::cholesky reconstructs random SPD matrices", "[numerics][property]") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t dim = 1 + trial % 12;
        const DenseMatrix a = oracle::random_spd(dim, rng);
        const auto f = cholesky(a);
        const DenseMatrix llt = f.lower() * f.lower().transpose();
        CHECK((llt - a).max_abs() <= 1e-12 * std::max(1.0, a.max_abs()));
        for (std::size_t i = 0; i < dim; ++i) {
            CHECK(f.lower()(i, i) > 0.0);
            for (std::size_t j = i + 1; j < dim; ++j) {
                CHECK(f.lower()(i, j) == 0.0);
            }
        }
    }
}

TEST_CASE("numerics::cholesky_solve, inverse and log-determinant against Eigen",
          "[numerics][property]") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t dim = 2 + trial % 10;
        const DenseMatrix a = oracle::random_spd(dim, rng);
        const Vector b = oracle::random_vector(dim, rng);
        const auto f = cholesky(a);
        const Eigen::MatrixXd ea = oracle::to_eigen(a);
        const Eigen::VectorXd eb = Eigen::Map<const Eigen::VectorXd>(b.data(), b.size());
        const Eigen::VectorXd ex = ea.lu().solve(eb);
        const Vector x = cholesky_solve(f, b);
        for (std::size_t i = 0; i < dim; ++i) {
            CHECK(x[i] == Approx(ex(i)).margin(1e-12));
        }
        CHECK(log_determinant(f) == Approx(std::log(ea.determinant())).epsilon(1e-12));
        const Eigen::MatrixXd inv = ea.inverse();
        const DenseMatrix ci = cholesky_inverse(f);
        CHECK((ci - oracle::from_eigen(inv)).max_abs() < 1e-12);
    }
}

TEST_CASE("numerics::triangular_solve forward and transposed", "[numerics]") {
    const auto f = cholesky(DenseMatrix{{4.0, 2.0}, {2.0, 3.0}});
    const Vector y = triangular_solve(f, Vector{2.0, 1.0 + std::sqrt(2.0)}, false);
    CHECK(y[0] == Approx(1.0));
    CHECK(y[1] == Approx(1.0));
    const Vector z = triangular_solve(f, Vector{3.0, std::sqrt(2.0)}, true);
    CHECK(z[1] == Approx(1.0));
    CHECK(z[0] == Approx(1.0));
}

TEST_CASE("numerics::cholesky jitter rescues a singular PSD matrix", "[numerics]") {
    const DenseMatrix a{{1.0, 1.0}, {1.0, 1.0}};
    CHECK_THROWS_AS(cholesky(a), Error);
    CholeskyOptions o;
    o.jitter = true;
    CHECK_NOTHROW(cholesky(a, o));
}

TEST_CASE("numerics::lu_determinant and lu_solve against Eigen", "[numerics][property]") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t dim = 1 + trial % 8;
        DenseMatrix a(dim, dim);
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                a(i, j) = u(rng);
            }
            a(i, i) += 2.0;
        }
        const Eigen::MatrixXd ea = oracle::to_eigen(a);
        const double det = ea.determinant();
        const LuResult lu = lu_determinant(a);
        CHECK(lu.sign * std::exp(lu.log_abs_det) == Approx(det).epsilon(1e-10));
        const Vector b = oracle::random_vector(dim, rng);
        const Vector x = lu_solve(a, b);
        const Vector r = a * x;
        for (std::size_t i = 0; i < dim; ++i) {
            CHECK(r[i] == Approx(b[i]).margin(1e-12));
        }
    }
}

TEST_CASE("numerics::lu_solve rejects singular matrices", "[numerics]") {
    try {
        (void)lu_solve(DenseMatrix{{1.0, 2.0}, {2.0, 4.0}}, Vector{1.0, 1.0});
        FAIL("expected SingularMatrix");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::SingularMatrix);
    }
}

TEST_CASE("numerics::adam_step first update moves by about the learning rate", "[numerics]") {
    // After one step m̂ = g and v̂ = g², so Δ = −η·g/(|g| + ε).
    const AdamState s = AdamState::make(3);
    const Vector p{0.0, 1.0, -1.0};
    const Vector g{0.5, -2.0, 1e-3};
    const auto r = adam_step(s, p, g);
    for (std::size_t i = 0; i < 3; ++i) {
        const double expected = p[i] - 0.01 * g[i] / (std::abs(g[i]) + 1e-8);
        CHECK(r.params[i] == Approx(expected).epsilon(1e-12));
    }
    CHECK(r.state.step == 1);
    CHECK(s.step == 0);
}

TEST_CASE("numerics::adam_step matches a hand-rolled three-step trace", "[numerics]") {
    const AdamConfig c;
    AdamState s = AdamState::make(1, c);
    Vector p{1.0};
    double m = 0.0;
    double v = 0.0;
    double ref = 1.0;
    for (int t = 1; t <= 3; ++t) {
        const double g = 2.0 * ref; // gradient of x²
        m = 0.9 * m + 0.1 * g;
        v = 0.999 * v + 0.001 * g * g;
        const double mh = m / (1.0 - std::pow(0.9, t));
        const double vh = v / (1.0 - std::pow(0.999, t));
        ref -= 0.01 * mh / (std::sqrt(vh) + 1e-8);
        auto r = adam_step(s, p, Vector{2.0 * p[0]});
        p = r.params;
        s = r.state;
        CHECK(p[0] == Approx(ref).epsilon(1e-14));
    }
}

TEST_CASE("numerics::adam_step rejects non-finite gradients", "[numerics]") {
    const AdamState s = AdamState::make(1);
    try {
        (void)adam_step(s, Vector{0.0}, Vector{std::nan("")});
        FAIL("expected NonFiniteGradient");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::NonFiniteGradient);
    }
}

TEST_CASE("numerics::quasi_newton_minimize on the Rosenbrock function", "[numerics]") {
    const ScalarFunction f = [](std::span<const double> x) {
        return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
    };
    const GradientFunction g = [](std::span<const double> x) {
        return Vector{-400.0 * x[0] * (x[1] - x[0] * x[0]) - 2.0 * (1.0 - x[0]),
                      200.0 * (x[1] - x[0] * x[0])};
    };
    QuasiNewtonConfig c;
    c.max_iterations = 500;
    const auto r = quasi_newton_minimize(f, g, Vector{-1.2, 1.0}, c);
    CHECK(r.converged);
    CHECK(r.x[0] == Approx(1.0).margin(1e-5));
    CHECK(r.x[1] == Approx(1.0).margin(1e-5));
}

TEST_CASE("numerics::quasi_newton_minimize on a convex quadratic", "[numerics]") {
    const ScalarFunction f = [](std::span<const double> x) {
        return 0.5 * (3.0 * x[0] * x[0] + x[1] * x[1]) - x[0] - 2.0 * x[1];
    };
    const GradientFunction g = [](std::span<const double> x) {
        return Vector{3.0 * x[0] - 1.0, x[1] - 2.0};
    };
    const auto r = quasi_newton_minimize(f, g, Vector{5.0, -5.0});
    CHECK(r.x[0] == Approx(1.0 / 3.0).margin(1e-7));
    CHECK(r.x[1] == Approx(2.0).margin(1e-7));
}

TEST_CASE("numerics::quasi_newton_minimize treats infinite values as failed steps",
          "[numerics]") {
    // Barrier at x ≤ 0; the minimiser of x − log x is 1.
    const ScalarFunction f = [](std::span<const double> x) {
        return x[0] <= 0.0 ? std::numeric_limits<double>::infinity() : x[0] - std::log(x[0]);
    };
    const GradientFunction g = [](std::span<const double> x) { return Vector{1.0 - 1.0 / x[0]}; };
    const auto r = quasi_newton_minimize(f, g, Vector{0.05});
    CHECK(r.x[0] == Approx(1.0).margin(1e-6));
    CHECK_THROWS_AS(quasi_newton_minimize(f, g, Vector{-1.0}), Error);
}

TEST_CASE("numerics::finite_difference_gradient of x² and sin", "[numerics]") {
    const ScalarFunction f = [](std::span<const double> x) { return x[0] * x[0] + std::sin(x[1]); };
    const Vector g = finite_difference_gradient(f, Vector{3.0, 0.5}, 1e-5);
    CHECK(g[0] == Approx(6.0).margin(1e-8));
    CHECK(g[1] == Approx(std::cos(0.5)).margin(1e-8));
    CHECK_THROWS_AS(finite_difference_gradient(f, Vector{1.0, 1.0}, 0.0), Error);
}

TEST_CASE("numerics::DenseMatrix basic algebra", "[numerics]") {
    const DenseMatrix a{{1.0, 2.0}, {3.0, 4.0}};
    CHECK(a.trace() == 5.0);
    CHECK(a.transpose()(0, 1) == 3.0);
    CHECK((a * DenseMatrix::identity(2)) == a);
    CHECK(transpose_times(a, a) == a.transpose() * a);
    const Vector x = a * Vector{1.0, 1.0};
    CHECK(x == Vector{3.0, 7.0});
    CHECK_FALSE(a.is_symmetric());
    CHECK((a + a.transpose()).is_symmetric());
    CHECK(dot(Vector{1, 2}, Vector{3, 4}) == 11.0);
    CHECK(norm2(Vector{3, 4}) == 5.0);
}

TEST_CASE("numerics::cholesky of the identity and of [[4,2],[2,5]]", "[numerics]") {
    CHECK(cholesky(DenseMatrix::identity(4)).lower() == DenseMatrix::identity(4));
    const auto f = cholesky(DenseMatrix{{4.0, 2.0}, {2.0, 5.0}});
    CHECK(f.lower() == DenseMatrix{{2.0, 0.0}, {1.0, 2.0}});
    CHECK(triangular_solve(f, Vector{2.0, 3.0}, false) == Vector{1.0, 1.0});
    CHECK(triangular_solve(cholesky(DenseMatrix::identity(3)), Vector{4.0, -1.0, 2.0}, false) ==
          Vector{4.0, -1.0, 2.0});
}

TEST_CASE("numerics::log_determinant of identity and diag(2, 8)", "[numerics]") {
    CHECK(log_determinant(cholesky(DenseMatrix::identity(5))) == 0.0);
    CHECK(log_determinant(cholesky(DenseMatrix{{2.0, 0.0}, {0.0, 8.0}})) ==
          Approx(std::log(16.0)).epsilon(1e-15));
}

TEST_CASE("numerics::cholesky relative reconstruction error up to 32x32",
          "[numerics][property]") {
    std::mt19937_64 rng(23);
    for (std::size_t dim : {1, 2, 5, 8, 16, 24, 32}) {
        const DenseMatrix a = oracle::random_spd(dim, rng);
        const auto f = cholesky(a);
        const DenseMatrix r = f.lower() * f.lower().transpose() - a;
        CHECK(r.frobenius_norm() / a.frobenius_norm() <= 1e-12);
        const Vector b = oracle::random_vector(dim, rng);
        const Vector y = triangular_solve(f, b, false);
        const Vector back = f.lower() * y;
        for (std::size_t i = 0; i < dim; ++i) {
            CHECK(back[i] == Approx(b[i]).epsilon(1e-10).margin(1e-12));
        }
    }
}

TEST_CASE("numerics::adam_step with a zero gradient leaves params and moments alone",
          "[numerics]") {
    const AdamState s = AdamState::make(2);
    const auto r = adam_step(s, Vector{0.3, -0.7}, Vector{0.0, 0.0});
    CHECK(r.params == Vector{0.3, -0.7});
    CHECK(r.state.first_moment == Vector{0.0, 0.0});
    CHECK(r.state.second_moment == Vector{0.0, 0.0});
    const auto again = adam_step(s, Vector{0.3, -0.7}, Vector{0.0, 0.0});
    CHECK(again.params == r.params);
}

TEST_CASE("numerics::adam_step minimises the bowl |x|^2 in 500 steps", "[numerics]") {
    AdamState s = AdamState::make(2);
    Vector x{1.0, 1.0};
    for (int k = 0; k < 500; ++k) {
        auto r = adam_step(std::move(s), x, Vector{2.0 * x[0], 2.0 * x[1]});
        x = std::move(r.params);
        s = std::move(r.state);
    }
    CHECK(norm2(x) < 0.05);
}

TEST_CASE("numerics::quasi_newton_minimize on (x-3)^2 and Rosenbrock values", "[numerics]") {
    const ScalarFunction f = [](std::span<const double> x) { return (x[0] - 3) * (x[0] - 3); };
    const GradientFunction g = [](std::span<const double> x) { return Vector{2 * (x[0] - 3)}; };
    CHECK(quasi_newton_minimize(f, g, Vector{0.0}).x[0] == Approx(3.0).margin(1e-6));

    const ScalarFunction rb = [](std::span<const double> x) {
        return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
    };
    const GradientFunction rg = [](std::span<const double> x) {
        return Vector{-400.0 * x[0] * (x[1] - x[0] * x[0]) - 2.0 * (1.0 - x[0]),
                      200.0 * (x[1] - x[0] * x[0])};
    };
    QuasiNewtonConfig c;
    c.max_iterations = 500;
    const auto r = quasi_newton_minimize(rb, rg, Vector{-1.2, 1.0}, c);
    CHECK(r.value < 1e-8);
    CHECK(std::abs(r.x[0] - 1.0) < 1e-4);
    CHECK(std::abs(r.x[1] - 1.0) < 1e-4);
}

TEST_CASE("numerics::quasi_newton_minimize on strictly convex quadratics",
          "[numerics][property]") {
    std::mt19937_64 rng(29);
    for (std::size_t dim : {2, 4, 8}) {
        const DenseMatrix a = oracle::random_spd(dim, rng);
        const Vector b = oracle::random_vector(dim, rng);
        const ScalarFunction f = [&](std::span<const double> x) {
            const Vector ax = a * Vector(x.begin(), x.end());
            return 0.5 * dot(x, ax) - dot(b, x);
        };
        const GradientFunction g = [&](std::span<const double> x) {
            Vector r = a * Vector(x.begin(), x.end());
            for (std::size_t i = 0; i < r.size(); ++i) {
                r[i] -= b[i];
            }
            return r;
        };
        QuasiNewtonConfig c;
        c.max_iterations = 3 * dim;
        const auto r = quasi_newton_minimize(f, g, Vector(dim, 0.0), c);
        CHECK(r.gradient_norm < 1e-8);
        CHECK(r.iterations <= 3 * dim);
    }
}

TEST_CASE("numerics::finite_difference_gradient of x^2 at 1 and of a constant",
          "[numerics]") {
    const ScalarFunction sq = [](std::span<const double> x) { return x[0] * x[0]; };
    CHECK(finite_difference_gradient(sq, Vector{1.0}, 1e-5)[0] == Approx(2.0).margin(1e-8));
    const ScalarFunction c = [](std::span<const double>) { return 4.2; };
    CHECK(finite_difference_gradient(c, Vector{1.0, 2.0, 3.0}, 1e-5) == Vector{0.0, 0.0, 0.0});
}
