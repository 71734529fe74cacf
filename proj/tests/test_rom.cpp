// SPDX-License-Identifier: Apache-2.0

#include <random>
#include <doctest.h>
#include "ommi/dense_oracle.hpp"
#include "ommi/rom.hpp"
#include "ommi/sweep.hpp"
#include "test_util.hpp"

using namespace ommi;

namespace
{

Eigen::MatrixXd random_orthonormal(Eigen::Index n, Eigen::Index r, std::mt19937_64 &rng)
{
  Eigen::MatrixXd m(n, r);
  for (Eigen::Index j = 0; j < r; j++)
    m.col(j) = test::random_vector(n, rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  return qr.householderQ() * Eigen::MatrixXd::Identity(n, r);
}

ReducedSystem<double> assemble(const TransportOperator &op, const Eigen::MatrixXd &u,
                               Projection proj)
{
  return assemble_reduced<double>(
      u, [&op](const Eigen::VectorXd &v) { return op.apply(v); }, [&op] { return op.rhs(); },
      proj);
}

Problem tiny() { return test::tiny_problem(3, 3, {0, 1, 0, 1, 2, 0, 0, 0, 1}, 2, 4, 2, 9.5, 0.65); }

}  // namespace

TEST_CASE("non-scattering operator: Petrov-Galerkin system is the identity")
{
  Problem p = test::tiny_problem(2, 2, {2, 1, 1, 1}, 1, 4, 2);
  p.xs.materials[kSource].sigma_s.setZero();
  const TransportOperator op(p);
  std::mt19937_64 rng(2);
  const Eigen::MatrixXd u = random_orthonormal(op.size(), 3, rng);
  const auto sys = assemble(op, u, Projection::PetrovGalerkin);
  CHECK((sys.matrix - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((sys.rhs - u.transpose() * op.rhs()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("rank one: A_r is the squared norm of A u")
{
  const Problem p = tiny();
  const TransportOperator op(p);
  std::mt19937_64 rng(3);
  const Eigen::MatrixXd u = random_orthonormal(op.size(), 1, rng);
  const auto sys = assemble(op, u, Projection::PetrovGalerkin);
  const Eigen::MatrixXd a = oracle::assemble_full_operator(p);
  const double expected = (a * u.col(0)).squaredNorm();
  CHECK(std::abs(sys.matrix(0, 0) - expected) <= 1e-12 * expected);
}

TEST_CASE("assembly costs exactly r + 1 sweeps")
{
  const TransportOperator op(tiny());
  std::mt19937_64 rng(4);
  for (Eigen::Index r : {1, 3, 5})
  {
    op.reset_sweep_count();
    const auto sys = assemble(op, random_orthonormal(op.size(), r, rng), Projection::PetrovGalerkin);
    CHECK(op.sweep_count() == static_cast<std::size_t>(r + 1));
    CHECK(sys.sweep_count == static_cast<std::size_t>(r + 1));
  }
}

TEST_CASE("minimally invasive assembly equals dense projection")
{
  const Problem p = tiny();
  const TransportOperator op(p);
  const auto dense = oracle::assemble_dense(p);
  const Eigen::MatrixXd a = oracle::assemble_full_operator(dense);
  const Eigen::VectorXd b = oracle::dense_rhs(dense);
  std::mt19937_64 rng(5);
  const Eigen::MatrixXd u = random_orthonormal(op.size(), 4, rng);
  const Eigen::MatrixXd au = a * u;

  const auto pg = assemble(op, u, Projection::PetrovGalerkin);
  CHECK((pg.matrix - au.transpose() * au).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((pg.rhs - au.transpose() * b).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((pg.matrix - pg.matrix.transpose()).cwiseAbs().maxCoeff() == 0.0);

  const auto g = assemble(op, u, Projection::Galerkin);
  CHECK((g.matrix - u.transpose() * au).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((g.rhs - u.transpose() * b).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("rom_solve")
{
  ReducedSystem<double> sys;
  sys.matrix = Eigen::MatrixXd::Identity(2, 2);
  sys.rhs = Eigen::Vector2d(1, 2);
  const Eigen::MatrixXd u = Eigen::MatrixXd::Identity(4, 2);
  const auto sol = rom_solve(sys, u);
  CHECK(sol.coefficients == Eigen::VectorXd(Eigen::Vector2d(1, 2)));
  CHECK(sol.field == Eigen::VectorXd(Eigen::Vector4d(1, 2, 0, 0)));

  sys.rhs.setZero();
  const auto zero = rom_solve(sys, u);
  CHECK(zero.coefficients.isZero(0.0));
  CHECK(zero.field.isZero(0.0));

  sys.matrix(1, 1) = -1.0;
  CHECK_THROWS_AS(rom_solve(sys, u), NumericalError);
  sys.projection = Projection::Galerkin;
  sys.matrix.setZero();
  CHECK_THROWS_AS(rom_solve(sys, u), NumericalError);
}

TEST_CASE("Petrov-Galerkin coefficients solve the least-squares problem")
{
  const Problem p = tiny();
  const TransportOperator op(p);
  const auto dense = oracle::assemble_dense(p);
  // AU from unit-vector probing of the dense operator; QR least squares on it.
  const Eigen::MatrixXd a = oracle::assemble_full_operator(dense);
  const Eigen::VectorXd b = oracle::dense_rhs(dense);
  std::mt19937_64 rng(6);
  for (Eigen::Index r : {2, 5})
  {
    const Eigen::MatrixXd u = random_orthonormal(op.size(), r, rng);
    const Eigen::VectorXd c_ls = (a * u).colPivHouseholderQr().solve(b);
    const auto sol = rom_solve(assemble(op, u, Projection::PetrovGalerkin), u);
    CHECK(test::rel_diff(sol.coefficients, c_ls) < 1e-8);
  }
}

TEST_CASE("rank-deficient A U is reported")
{
  const TransportOperator op(tiny());
  Eigen::MatrixXd u(op.size(), 2);
  u.col(0) = Eigen::VectorXd::Ones(op.size()).normalized();
  u.col(1) = u.col(0);
  CHECK_THROWS_AS(assemble(op, u, Projection::PetrovGalerkin), NumericalError);
}

TEST_CASE("projection names")
{
  CHECK(projection_from_string(to_string(Projection::Galerkin)) == Projection::Galerkin);
  CHECK(projection_from_string(to_string(Projection::PetrovGalerkin)) ==
        Projection::PetrovGalerkin);
  CHECK_THROWS(projection_from_string("ritz"));
}
