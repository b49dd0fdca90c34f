#include <doctest.h>

#include <cmath>

#include "levylab/nnls.hpp"
#include "levylab/rng.hpp"

using namespace levylab;

TEST_CASE("identity system") {
  const auto result = solve_nnls(Eigen::MatrixXd::Identity(3, 3), Eigen::VectorXd::Ones(3));
  CHECK(result.converged);
  CHECK((result.weights - Eigen::VectorXd::Ones(3)).norm() <= 1e-15);
  CHECK(result.relative_residual <= 1e-15);
}

TEST_CASE("consistent single column") {
  Eigen::MatrixXd A(2, 1);
  A << 1, 2;
  Eigen::VectorXd b(2);
  b << 1, 2;
  const auto result = solve_nnls(A, b);
  CHECK(result.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(result.relative_residual <= 1e-15);
}

TEST_CASE("the sign constraint binds") {
  // Unconstrained solution is (2, -1); the best nonnegative fit uses column 0 only.
  Eigen::MatrixXd A(2, 2);
  A << 1, 1, 0, 1;
  Eigen::VectorXd b(2);
  b << 1, -1;
  const auto result = solve_nnls(A, b);
  CHECK(result.converged);
  CHECK(result.weights[1] == 0.0);
  CHECK(result.weights[0] == doctest::Approx(1.0));
  CHECK(result.relative_residual == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("all-negative correlations give the zero solution") {
  Eigen::MatrixXd A(2, 1);
  A << 1, 1;
  Eigen::VectorXd b(2);
  b << -1, -1;
  const auto result = solve_nnls(A, b);
  CHECK(result.weights[0] == 0.0);
  CHECK(result.relative_residual == doctest::Approx(1.0));
}

TEST_CASE("random systems with a planted nonnegative solution") {
  Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd A(50, 20);
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      for (Eigen::Index j = 0; j < A.cols(); ++j) A(i, j) = rng.uniform();
    }
    Eigen::VectorXd planted(20);
    for (Eigen::Index j = 0; j < planted.size(); ++j) planted[j] = rng.uniform() < 0.4 ? 0.0 : rng.uniform();
    const Eigen::VectorXd b = A * planted;
    const auto result = solve_nnls(A, b);
    CHECK(result.converged);
    CHECK(result.relative_residual <= 1e-8);
    CHECK((result.weights.array() >= 0.0).all());
    CHECK((result.weights - planted).norm() <= 1e-6 * planted.norm());
  }
}

TEST_CASE("optimality conditions on an inconsistent system") {
  Rng rng(7);
  Eigen::MatrixXd A(40, 15);
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) A(i, j) = rng.normal();
  }
  Eigen::VectorXd b(40);
  for (Eigen::Index i = 0; i < b.size(); ++i) b[i] = rng.normal();
  const auto result = solve_nnls(A, b);
  REQUIRE(result.converged);
  const Eigen::VectorXd gradient = A.transpose() * (b - A * result.weights);
  const double scale = (A.transpose() * b).cwiseAbs().maxCoeff();
  for (Eigen::Index j = 0; j < gradient.size(); ++j) {
    CHECK(result.weights[j] >= 0.0);
    // KKT: gradient <= 0 everywhere, = 0 on the support
    CHECK(gradient[j] <= 1e-9 * scale);
    if (result.weights[j] > 0.0) CHECK(std::abs(gradient[j]) <= 1e-9 * scale);
  }
}

TEST_CASE("scale equivariance") {
  Rng rng(3);
  Eigen::MatrixXd A(30, 10);
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) A(i, j) = rng.uniform();
  }
  Eigen::VectorXd b(30);
  for (Eigen::Index i = 0; i < b.size(); ++i) b[i] = 1.0 + rng.uniform();
  const auto base = solve_nnls(A, b);
  const auto scaled = solve_nnls(A, Eigen::VectorXd(8.0 * b));
  CHECK(std::abs(base.relative_residual - scaled.relative_residual) <= 1e-12);
  CHECK((scaled.weights - 8.0 * base.weights).norm() <= 1e-10 * scaled.weights.norm());
}

TEST_CASE("iteration cap is reported") {
  Rng rng(5);
  Eigen::MatrixXd A(30, 20);
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) A(i, j) = rng.uniform();
  }
  const Eigen::VectorXd b = A * Eigen::VectorXd::Ones(20);
  const auto capped = solve_nnls(A, b, {.dual_tol = 1e-10, .max_iterations = 2});
  CHECK_FALSE(capped.converged);
  CHECK(capped.iterations == 2);
}

TEST_CASE("deterministic") {
  Rng rng(9);
  Eigen::MatrixXd A(25, 12);
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) A(i, j) = rng.normal();
  }
  Eigen::VectorXd b = Eigen::VectorXd::Ones(25);
  const auto first = solve_nnls(A, b);
  const auto second = solve_nnls(A, b);
  CHECK(first.weights == second.weights);
  CHECK(first.relative_residual == second.relative_residual);
}
