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
#include "vqlsgp/gp/gp.hpp"
#include "vqlsgp/numerics/cholesky.hpp"

using namespace vqlsgp;
using namespace vqlsgp::gp;
using Catch::Approx;

namespace {

Dataset toy(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::normal_distribution<double> g(0.0, 0.1);
    Vector x(n);
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = u(rng);
        y[i] = std::sin(2.0 * x[i]) + g(rng);
    }
    return Dataset::from_1d(x, y);
}

KernelSpec spec_of(KernelFamily f, double sigma, double length, double taper = 0.64) {
    return KernelSpec{f, Hyperparameters{sigma, length, taper, 0.01}};
}

} // namespace

TEST_CASE("gp::kernels at frozen reference points", "[gp]") {
    // Reference values evaluated independently in double precision.
    CHECK(matern52(1.0, 1.0, 1.0) == Approx(0.5239941088318203).epsilon(1e-14));
    CHECK(rbf(0.5, 1.2, 0.4) == Approx(0.6592800409511245).epsilon(1e-14));
    CHECK(wendland2(0.3, 0.64) == Approx(0.14333107901711628).epsilon(1e-14));
    CHECK(kernel_eval(spec_of(KernelFamily::MT, 1.0, 1.0, 0.64), 0.3) ==
          Approx(matern52(0.3, 1.0, 1.0) * 0.14333107901711628).epsilon(1e-14));
}

TEST_CASE("gp::kernels equal sigma^2 at zero distance", "[gp]") {
    CHECK(rbf(0.0, 1.5, 0.3) == Approx(2.25));
    CHECK(matern52(0.0, 1.5, 0.3) == Approx(2.25));
    CHECK(wendland2(0.0, 0.64) == 1.0);
    CHECK(kernel_eval(spec_of(KernelFamily::MT, 1.5, 0.3), 0.0) == Approx(2.25));
}

TEST_CASE("gp::kernels decrease monotonically in distance", "[gp][property]") {
    for (auto f : {KernelFamily::RBF, KernelFamily::Matern52, KernelFamily::MT}) {
        const KernelSpec s = spec_of(f, 1.3, 0.7);
        double prev = kernel_eval(s, 0.0);
        for (double h = 0.01; h < 3.0; h += 0.01) {
            const double k = kernel_eval(s, h);
            CHECK(k <= prev + 1e-15);
            CHECK(k >= 0.0);
            prev = k;
        }
    }
}

TEST_CASE("gp::the Wendland taper has compact support", "[gp]") {
    CHECK(wendland2(0.64, 0.64) == 0.0);
    CHECK(wendland2(1.0, 0.64) == 0.0);
    CHECK(kernel_eval(spec_of(KernelFamily::MT, 1.0, 5.0), 0.7) == 0.0);
    CHECK(wendland2(0.6399, 0.64) > 0.0);
}

TEST_CASE("gp::kernel_derivatives match central differences", "[gp][property]") {
    for (auto f : {KernelFamily::RBF, KernelFamily::Matern52, KernelFamily::MT}) {
        for (double h : {0.0, 0.05, 0.3, 0.6, 1.5}) {
            const double sigma = 1.1;
            const double length = 0.8;
            const KernelGradient g = kernel_derivatives(spec_of(f, sigma, length), h);
            const double e = 1e-6;
            const double ds = (kernel_eval(spec_of(f, sigma + e, length), h) -
                               kernel_eval(spec_of(f, sigma - e, length), h)) /
                              (2 * e);
            const double dl = (kernel_eval(spec_of(f, sigma, length + e), h) -
                               kernel_eval(spec_of(f, sigma, length - e), h)) /
                              (2 * e);
            CHECK(g.d_sigma == Approx(ds).margin(1e-8));
            CHECK(g.d_length == Approx(dl).margin(1e-8));
        }
    }
}

TEST_CASE("gp::covariance matrices are symmetric with sigma^2 + noise diagonal",
          "[gp][property]") {
    const Dataset d = toy(12, 1);
    for (auto f : {KernelFamily::RBF, KernelFamily::Matern52, KernelFamily::MT}) {
        const KernelSpec s = spec_of(f, 0.9, 0.5);
        const DenseMatrix k = noisy_covariance(d, s);
        CHECK(k.is_symmetric());
        for (std::size_t i = 0; i < d.size(); ++i) {
            CHECK(k(i, i) == Approx(0.81 + 0.01));
        }
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(oracle::to_eigen(k));
        CHECK(es.eigenvalues().minCoeff() > 0.0);
        const DenseMatrix cross = covariance_matrix(d.x, d.x, s);
        CHECK(cross(0, 0) == Approx(0.81));
    }
}

TEST_CASE("gp::posterior matches an Eigen reference", "[gp][property]") {
    const Dataset d = toy(10, 2);
    const std::vector<Vector> xs = points_1d(Vector{-3.0, -0.5, 0.0, 0.7, 2.5});
    for (auto f : {KernelFamily::RBF, KernelFamily::Matern52, KernelFamily::MT}) {
        const KernelSpec s = spec_of(f, 1.2, 0.6);
        const Eigen::MatrixXd k = oracle::to_eigen(noisy_covariance(d, s));
        const Eigen::MatrixXd ks = oracle::to_eigen(covariance_matrix(d.x, xs, s));
        const Eigen::MatrixXd kss = oracle::to_eigen(covariance_matrix(xs, xs, s));
        const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(d.y.data(), d.y.size());
        const Eigen::MatrixXd kinv = k.inverse();
        const Eigen::VectorXd mean = ks.transpose() * kinv * y;
        const Eigen::MatrixXd cov = kss - ks.transpose() * kinv * ks;
        const double lml = -0.5 * y.dot(kinv * y) - 0.5 * std::log(k.determinant()) -
                           0.5 * static_cast<double>(d.size()) * std::log(2 * M_PI);

        const PosteriorResult p = posterior(d, xs, s);
        REQUIRE(p.lml.has_value());
        CHECK(*p.lml == Approx(lml).epsilon(1e-10));
        CHECK(log_marginal_likelihood(d, s) == Approx(lml).epsilon(1e-10));
        for (std::size_t i = 0; i < xs.size(); ++i) {
            CHECK(p.mean[i] == Approx(mean(i)).margin(1e-10));
            CHECK(p.variance()[i] == Approx(cov(i, i)).margin(1e-10));
            CHECK(p.variance()[i] >= -1e-12);
        }
        CHECK(p.covariance.is_symmetric());

        const PosteriorResult q = posterior(d, xs, s, ProvidedInverse{oracle::from_eigen(kinv)});
        CHECK_FALSE(q.lml.has_value());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            CHECK(q.mean[i] == Approx(p.mean[i]).margin(1e-10));
        }
    }
}

TEST_CASE("gp::posterior interpolates noiseless data at the training inputs", "[gp]") {
    const Dataset d = Dataset::from_1d(Vector{-1.0, 0.0, 1.0}, Vector{0.5, -0.2, 0.9});
    KernelSpec s = spec_of(KernelFamily::RBF, 1.0, 0.5);
    s.hyper.noise = 1e-10;
    const PosteriorResult p = posterior(d, d.x, s);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(p.mean[i] == Approx(d.y[i]).margin(1e-6));
        CHECK(p.variance()[i] == Approx(0.0).margin(1e-6));
    }
}

TEST_CASE("gp::LML of a single point in closed form", "[gp]") {
    const Dataset d = Dataset::from_1d(Vector{0.3}, Vector{0.8});
    for (auto f : {KernelFamily::RBF, KernelFamily::Matern52, KernelFamily::MT}) {
        const double sigma = 1.7;
        const double s = sigma * sigma + 0.01;
        const double expected = -0.5 * 0.64 / s - 0.5 * std::log(s) - 0.5 * std::log(2 * M_PI);
        CHECK(log_marginal_likelihood(d, spec_of(f, sigma, 0.4)) ==
              Approx(expected).epsilon(1e-12));
        const Vector g = lml_gradient(d, spec_of(f, sigma, 0.4), true);
        const double d_s = 0.5 * 0.64 / (s * s) - 0.5 / s;
        CHECK(g[0] == Approx(d_s * 2.0 * sigma).epsilon(1e-12));
        CHECK(g[1] == Approx(0.0).margin(1e-15));
        CHECK(g[2] == Approx(d_s).epsilon(1e-12));
    }
}

TEST_CASE("gp::lml_gradient matches central differences", "[gp][property]") {
    const Dataset d = toy(14, 3);
    for (auto f : {KernelFamily::RBF, KernelFamily::Matern52, KernelFamily::MT}) {
        for (double length : {0.3, 0.9, 2.0}) {
            const KernelSpec s = spec_of(f, 0.8, length);
            const Vector g = lml_gradient(d, s, true);
            const double e = 1e-6;
            auto shifted = [&](int which, double delta) {
                KernelSpec t = s;
                if (which == 0) t.hyper.sigma += delta;
                if (which == 1) t.hyper.length += delta;
                if (which == 2) t.hyper.noise += delta;
                return log_marginal_likelihood(d, t);
            };
            for (int k = 0; k < 3; ++k) {
                const double fd = (shifted(k, e) - shifted(k, -e)) / (2 * e);
                CHECK(g[static_cast<std::size_t>(k)] ==
                      Approx(fd).epsilon(1e-6).margin(1e-7));
            }
        }
    }
}

TEST_CASE("gp::optimize_hyperparameters increases the LML", "[gp]") {
    const Dataset d = toy(20, 4);
    for (auto f : {KernelFamily::RBF, KernelFamily::Matern52, KernelFamily::MT}) {
        const KernelSpec s = spec_of(f, 1.0, 1.0);
        const OptimizeResult r = optimize_hyperparameters(d, s, OptimizeOptions{2, 7, false});
        CHECK(r.lml >= log_marginal_likelihood(d, s) - 1e-12);
        KernelSpec fitted = s;
        fitted.hyper = r.hyper;
        CHECK(log_marginal_likelihood(d, fitted) == Approx(r.lml).epsilon(1e-12));
        CHECK(r.hyper.noise == 0.01);
        CHECK(r.hyper.taper == 0.64);
        const OptimizeResult again = optimize_hyperparameters(d, s, OptimizeOptions{2, 7, false});
        CHECK(again.hyper.sigma == r.hyper.sigma);
    }
}

TEST_CASE("gp::optimize_hyperparameters finds a stationary RBF fit", "[gp]") {
    const Dataset d = toy(25, 5);
    const OptimizeResult r =
        optimize_hyperparameters(d, spec_of(KernelFamily::RBF, 1.0, 1.0), OptimizeOptions{3, 1, false});
    KernelSpec fitted = spec_of(KernelFamily::RBF, r.hyper.sigma, r.hyper.length);
    const Vector g = lml_gradient(d, fitted);
    CHECK(std::abs(g[0] * r.hyper.sigma) < 1e-4);
    CHECK(std::abs(g[1] * r.hyper.length) < 1e-4);
}

TEST_CASE("gp::validation and name parsing", "[gp]") {
    CHECK_THROWS_AS(spec_of(KernelFamily::RBF, -1.0, 1.0).validate(), Error);
    CHECK_THROWS_AS(spec_of(KernelFamily::RBF, 1.0, 0.0).validate(), Error);
    for (auto f : {KernelFamily::RBF, KernelFamily::Matern52, KernelFamily::MT}) {
        CHECK(parse_kernel_family(to_string(f)) == f);
    }
    try {
        (void)parse_kernel_family("Linear");
        FAIL("expected ConfigError");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::ConfigError);
    }
    CHECK_THROWS_AS(Dataset::from_1d(Vector{1.0, 2.0}, Vector{1.0}), Error);
}

namespace {

std::vector<Vector> snelson_grid() {
    Vector x(16);
    for (std::size_t i = 0; i < 16; ++i) {
        x[i] = -1.0 + 3.2 * static_cast<double>(i) / 15.0;
    }
    return points_1d(x);
}

} // namespace

TEST_CASE("gp::MT covariance on the 16-point grid is Toeplitz and banded", "[gp]") {
    const std::vector<Vector> grid = snelson_grid();
    const KernelSpec mt = spec_of(KernelFamily::MT, 0.9015, 2.5394);
    const DenseMatrix k = covariance_matrix(grid, grid, mt);
    for (std::size_t i = 0; i < 16; ++i) {
        for (std::size_t j = 0; j < 16; ++j) {
            const std::size_t band = i > j ? i - j : j - i;
            CHECK(k(i, j) == Approx(k(band, 0)).margin(1e-14));
            if (band == 3) {
                // h = 3·3.2/15 lands within rounding of θ_taper, where the
                // taper is of order (ε/θ)⁶.
                CHECK(std::abs(k(i, j)) < 1e-60);
            } else if (band > 3) {
                CHECK(k(i, j) == 0.0);
            } else {
                CHECK(k(i, j) > 0.0);
            }
        }
    }
    // The factor of K̂ has a positive diagonal and reproduces K̂.
    const Dataset d{grid, Vector(16, 0.0)};
    const DenseMatrix kh = noisy_covariance(d, mt);
    const auto f = numerics::cholesky(kh);
    for (std::size_t i = 0; i < 16; ++i) {
        CHECK(f.lower()(i, i) > 0.0);
    }
    CHECK((f.lower() * f.lower().transpose() - kh).max_abs() < 1e-13);
}

TEST_CASE("gp::a single point against itself gives [sigma^2]", "[gp]") {
    const auto x = points_1d(Vector{0.4});
    CHECK(covariance_matrix(x, x, spec_of(KernelFamily::Matern52, 1.3, 0.2))(0, 0) ==
          Approx(1.69));
}

TEST_CASE("gp::MT kernel equals Matern52 times the taper inside its support",
          "[gp][property]") {
    for (double h = 0.0; h < 1.0; h += 0.01) {
        const double mt = kernel_eval(spec_of(KernelFamily::MT, 1.2, 0.7), h);
        if (h >= 0.64) {
            CHECK(mt == 0.0);
        } else {
            CHECK(mt == Approx(matern52(h, 1.2, 0.7) * wendland2(h, 0.64)).epsilon(1e-14));
        }
    }
}

TEST_CASE("gp::test points beyond the taper get the prior", "[gp]") {
    const Dataset d = toy(8, 6);
    const std::vector<Vector> far = points_1d(Vector{40.0, 41.0});
    const PosteriorResult p = posterior(d, far, spec_of(KernelFamily::MT, 0.9, 1.0));
    CHECK(p.mean == Vector{0.0, 0.0});
    CHECK(p.covariance(0, 0) == Approx(0.81));
    CHECK(p.covariance(0, 1) == 0.0);
}

TEST_CASE("gp::LML with y = 0 is the normaliser only", "[gp]") {
    const std::vector<Vector> grid = snelson_grid();
    const Dataset d{grid, Vector(16, 0.0)};
    const KernelSpec s = spec_of(KernelFamily::MT, 0.9015, 2.5394);
    const Eigen::MatrixXd k = oracle::to_eigen(noisy_covariance(d, s));
    const double expected = -0.5 * std::log(k.determinant()) - 8.0 * std::log(2 * M_PI);
    CHECK(log_marginal_likelihood(d, s) == Approx(expected).epsilon(1e-10));
}

TEST_CASE("gp::LML of Snelson-style data against a dense recomputation", "[gp]") {
    const std::vector<Vector> grid = snelson_grid();
    Vector y(16);
    for (std::size_t i = 0; i < 16; ++i) {
        y[i] = std::sin(2 * grid[i][0]) + std::cos(5 * grid[i][0]);
    }
    const Dataset d{grid, y};
    const KernelSpec s = spec_of(KernelFamily::MT, 0.9015, 2.5394);
    const Eigen::MatrixXd k = oracle::to_eigen(noisy_covariance(d, s));
    const Eigen::VectorXd ey = Eigen::Map<const Eigen::VectorXd>(y.data(), 16);
    const double expected = -0.5 * ey.dot(k.ldlt().solve(ey)) -
                            0.5 * std::log(k.determinant()) - 8.0 * std::log(2 * M_PI);
    CHECK(std::abs(log_marginal_likelihood(d, s) - expected) < 1e-9);
    const PosteriorResult chol = posterior(d, grid, s);
    const PosteriorResult inv =
        posterior(d, grid, s, ProvidedInverse{oracle::from_eigen(k.inverse())});
    for (std::size_t i = 0; i < 16; ++i) {
        CHECK(std::abs(chol.mean[i] - inv.mean[i]) < 1e-8);
        CHECK(std::abs(chol.covariance(i, i) - inv.covariance(i, i)) < 1e-8);
    }
}

TEST_CASE("gp::lml_gradient over random draws", "[gp][property]") {
    std::mt19937_64 rng(50);
    std::uniform_real_distribution<double> u(0.3, 2.0);
    for (auto f : {KernelFamily::RBF, KernelFamily::Matern52, KernelFamily::MT}) {
        for (int draw = 0; draw < 50; ++draw) {
            const Dataset d = toy(6 + draw % 5, 100 + static_cast<std::uint64_t>(draw));
            const KernelSpec s = spec_of(f, u(rng), u(rng));
            const Vector g = lml_gradient(d, s);
            const double e = 1e-6;
            for (int k = 0; k < 2; ++k) {
                KernelSpec up = s;
                KernelSpec dn = s;
                (k == 0 ? up.hyper.sigma : up.hyper.length) += e;
                (k == 0 ? dn.hyper.sigma : dn.hyper.length) -= e;
                const double fd =
                    (log_marginal_likelihood(d, up) - log_marginal_likelihood(d, dn)) / (2 * e);
                CHECK(std::abs(g[static_cast<std::size_t>(k)] - fd) <=
                      1e-6 * std::max(1.0, std::abs(fd)));
            }
        }
    }
}

TEST_CASE("gp::optimize_hyperparameters on one point reaches the scalar optimum", "[gp]") {
    // LML(s) = −y²/2s − log(s)/2 with s = σ² + σ_ε² peaks at s = y².
    const Dataset d = Dataset::from_1d(Vector{0.0}, Vector{1.5});
    const OptimizeResult r =
        optimize_hyperparameters(d, spec_of(KernelFamily::RBF, 1.0, 1.0), OptimizeOptions{0, 1});
    CHECK(r.hyper.sigma * r.hyper.sigma + 0.01 == Approx(2.25).epsilon(1e-6));
}

TEST_CASE("gp::optimize_hyperparameters recovers an RBF length scale", "[gp]") {
    // Draw from a GP with σ = 1, l = 0.5 through its Cholesky factor.
    std::mt19937_64 rng(60);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::normal_distribution<double> g;
    Vector x(64);
    for (double &v : x) {
        v = u(rng);
    }
    const std::vector<Vector> pts = points_1d(x);
    const KernelSpec truth = spec_of(KernelFamily::RBF, 1.0, 0.5);
    const Dataset probe{pts, Vector(64, 0.0)};
    const auto f = numerics::cholesky(noisy_covariance(probe, truth));
    Vector z(64);
    for (double &v : z) {
        v = g(rng);
    }
    const Dataset d{pts, f.lower() * z};
    const OptimizeResult r = optimize_hyperparameters(d, spec_of(KernelFamily::RBF, 1.0, 1.0));
    CHECK(r.hyper.length == Approx(0.5).epsilon(0.3));
    KernelSpec fitted = truth;
    fitted.hyper = r.hyper;
    CHECK(numerics::norm2(lml_gradient(d, fitted)) < 1e-5);
}

TEST_CASE("gp::optimize_hyperparameters is deterministic per seed", "[gp]") {
    const Dataset d = toy(16, 8);
    const KernelSpec s = spec_of(KernelFamily::MT, 1.0, 1.0);
    const OptimizeResult a = optimize_hyperparameters(d, s, OptimizeOptions{2, 3});
    const OptimizeResult b = optimize_hyperparameters(d, s, OptimizeOptions{2, 3});
    CHECK(a.hyper.sigma == b.hyper.sigma);
    CHECK(a.hyper.length == b.hyper.length);
    CHECK(a.lml == b.lml);
}
