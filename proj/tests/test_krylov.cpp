// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>
#include <random>
#include <doctest.h>
#include "ommi/dense_oracle.hpp"
#include "ommi/fom.hpp"
#include "ommi/gmres.hpp"
#include "test_util.hpp"

using namespace ommi;

TEST_CASE("identity operator converges in one iteration")
{
  const Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(10, 1.0, 2.0);
  const auto res = gmres_solve<double>([](const Eigen::VectorXd &v) { return v; }, b, {});
  CHECK(res.report.converged);
  CHECK(res.report.iterations == 1);
  CHECK(res.report.sweep_count == 1);
  CHECK((res.x - b).norm() < 1e-14);
}

TEST_CASE("diagonal 2x2 system")
{
  Eigen::Matrix2d a;
  a << 2, 0, 0, 3;
  const Eigen::VectorXd b = Eigen::Vector2d(2, 3);
  const auto res = gmres_solve<double>(
      [&](const Eigen::VectorXd &v) { return Eigen::VectorXd(a * v); }, b, {});
  CHECK(res.report.converged);
  CHECK(res.report.iterations <= 2);
  CHECK(std::abs(res.x(0) - 1.0) < 1e-12);
  CHECK(std::abs(res.x(1) - 1.0) < 1e-12);
}

TEST_CASE("zero right-hand side returns zero without operator calls")
{
  const auto res = gmres_solve<double>([](const Eigen::VectorXd &v) { return v; },
                                       Eigen::VectorXd::Zero(4), {});
  CHECK(res.report.converged);
  CHECK(res.report.sweep_count == 0);
  CHECK(res.x.isZero(0.0));
}

TEST_CASE("one-group 4x4 checkerboard slice matches a dense direct solve")
{
  const Problem p = test::tiny_problem(4, 4, {0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 2, 0, 0, 1, 0, 0},
                                       2, 4, 1, 9.0, 0.0, 0.5);
  const TransportOperator op(p);
  const auto dense = oracle::assemble_dense(p);
  const Eigen::VectorXd b = op.rhs();
  const auto res = gmres_solve<double>([&](const Eigen::VectorXd &v) { return op.apply(v); },
                                       b, {1e-12, 30, 500});
  REQUIRE(res.report.converged);
  const Eigen::VectorXd direct =
      oracle::dense_solve(oracle::assemble_full_operator(dense), oracle::dense_rhs(dense));
  CHECK(test::rel_diff(res.x, direct) < 1e-8);
}

TEST_CASE("least-squares residual is non-increasing within a restart cycle")
{
  std::mt19937_64 rng(3);
  const int n = 60;
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < n; i++)
    a.row(i) += 0.4 / std::sqrt(double(n)) * test::random_vector(n, rng).transpose();
  const Eigen::VectorXd b = test::random_vector(n, rng);
  const int restart = 15;
  const auto res = gmres_solve<double>(
      [&](const Eigen::VectorXd &v) { return Eigen::VectorXd(a * v); }, b, {1e-10, restart, 400});
  REQUIRE(res.report.converged);
  const auto &h = res.report.residual_history;
  for (std::size_t i = 1; i < h.size(); i++)
  {
    if (i % restart != 0)
      CHECK(h[i] <= h[i - 1] * (1 + 1e-12));
  }
  CHECK((a * res.x - b).norm() / b.norm() <= 1e-10 * 1.01);
}

TEST_CASE("transport GMRES converges at interior theta2 and is restart independent")
{
  const ProblemConfig c = test::small_config();
  for (double t2 : {0.6, 0.8, 0.95})
  {
    const TransportOperator op(make_problem(c, {10.0, t2}));
    const Eigen::VectorXd b = op.rhs();
    auto solve = [&](int restart)
    {
      return gmres_solve<double>([&](const Eigen::VectorXd &v) { return op.apply(v); }, b,
                                 {c.gmres_tol, restart, c.gmres_maxiter});
    };
    const auto r20 = solve(20), r50 = solve(50);
    REQUIRE(r20.report.converged);
    REQUIRE(r50.report.converged);
    CHECK(test::rel_diff(r20.x, r50.x) <= 10 * c.gmres_tol);
    // Report invariants.
    CHECK(r20.report.relative_residual <= c.gmres_tol);
    CHECK(r20.report.sweep_count ==
          static_cast<std::size_t>(r20.report.iterations + r20.report.restarts));
  }
}

TEST_CASE("non-convergence is flagged, not thrown")
{
  const TransportOperator op(make_problem(test::small_config(), {10.0, 0.9}));
  const auto res = gmres_solve<double>([&](const Eigen::VectorXd &v) { return op.apply(v); },
                                       op.rhs(), {1e-14, 2, 3});
  CHECK_FALSE(res.report.converged);
  CHECK(res.report.iterations == 3);
  CHECK(res.report.relative_residual > 1e-14);
}

TEST_CASE("NaN operator output is a hard error")
{
  const auto bad = [](const Eigen::VectorXd &v)
  {
    Eigen::VectorXd w = v;
    w(0) = std::numeric_limits<double>::quiet_NaN();
    return w;
  };
  CHECK_THROWS_AS(gmres_solve<double>(bad, Eigen::VectorXd::Ones(3), {}), NumericalError);
}

TEST_CASE("single-precision instantiation")
{
  Eigen::Matrix3f a;
  a << 4, 1, 0, 1, 3, 1, 0, 1, 2;
  const Eigen::VectorXf b = Eigen::Vector3f(1, 2, 3);
  const auto res = gmres_solve<float>(
      [&](const Eigen::VectorXf &v) { return Eigen::VectorXf(a * v); }, b, {1e-5f, 10, 10});
  CHECK(res.report.converged);
  CHECK((a * res.x - b).norm() < 1e-4f);
}
