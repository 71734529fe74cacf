// SPDX-License-Identifier: Apache-2.0

#include <random>
#include <doctest.h>
#include "ommi/rbf.hpp"
#include "ommi/spd_manifold.hpp"
#include "test_util.hpp"

using namespace ommi;

namespace
{

Eigen::MatrixXd random_spd(int n, std::mt19937_64 &rng)
{
  Eigen::MatrixXd b(n, n);
  for (int j = 0; j < n; j++)
    b.col(j) = test::random_vector(n, rng);
  return b * b.transpose() + 0.1 * Eigen::MatrixXd::Identity(n, n);
}

}  // namespace

TEST_CASE("exp inverts log on SPD matrices")
{
  std::mt19937_64 rng(8);
  for (int n : {1, 3, 5, 8})
  {
    const Eigen::MatrixXd a = random_spd(n, rng);
    CHECK(test::rel_diff(sym_exp(spd_log(a)), a) < 1e-12);
  }
}

TEST_CASE("log-Euclidean midpoint of I and 4I is 2I")
{
  const Eigen::MatrixXd i = Eigen::MatrixXd::Identity(3, 3);
  const Eigen::MatrixXd mid = sym_exp(0.5 * spd_log(i) + 0.5 * spd_log(4.0 * i));
  CHECK((mid - 2.0 * i).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("spd_log rejects indefinite matrices")
{
  Eigen::Matrix2d a;
  a << 1, 2, 2, 1;
  CHECK_THROWS_AS(spd_log(a), NumericalError);
  CHECK_FALSE(is_spd(a, 1e-12));
  CHECK(is_spd(Eigen::Matrix2d::Identity(), 1e-12));
}

TEST_CASE("Gaussian RBF reproduces data at the centers")
{
  std::mt19937_64 rng(4);
  Eigen::MatrixXd centers(6, 2);
  for (int i = 0; i < 6; i++)
    centers.row(i) = (0.5 * (test::random_vector(2, rng).array() + 1.0)).matrix().transpose();
  const GaussianRbf<double> rbf(centers, GaussianRbf<double>::default_shape(centers), 1e-12);
  const Eigen::VectorXd f = test::random_vector(6, rng);
  for (int i = 0; i < 6; i++)
  {
    const Eigen::VectorXd w = rbf.weights(Eigen::VectorXd(centers.row(i).transpose()));
    CHECK(std::abs(w.dot(f) - f(i)) < 1e-10);
  }
}

TEST_CASE("weights sum to one, so constant data is reproduced everywhere")
{
  std::mt19937_64 rng(6);
  Eigen::MatrixXd centers(7, 2);
  for (int i = 0; i < 7; i++)
    centers.row(i) = (0.5 * (test::random_vector(2, rng).array() + 1.0)).matrix().transpose();
  const GaussianRbf<double> rbf(centers, 2.0, 1e-12);
  for (int trial = 0; trial < 20; trial++)
  {
    const Eigen::VectorXd x = 0.5 * (test::random_vector(2, rng).array() + 1.0);
    CHECK(std::abs(rbf.weights(x).sum() - 1.0) < 1e-12);
  }
}

TEST_CASE("two centers: the midpoint gets equal weights")
{
  Eigen::MatrixXd centers(2, 2);
  centers << 0, 0, 1, 0;
  const GaussianRbf<double> rbf(centers, 1.0, 0.0);
  const Eigen::VectorXd w = rbf.weights(Eigen::Vector2d(0.5, 0));
  CHECK(std::abs(w(0) - 0.5) < 1e-14);
  CHECK(std::abs(w(1) - 0.5) < 1e-14);
  const Eigen::VectorXd w0 = rbf.weights(Eigen::Vector2d(0, 0));
  CHECK(std::abs(w0(0) - 1.0) < 1e-14);
  CHECK(std::abs(w0(1)) < 1e-14);
}

TEST_CASE("default shape is the reciprocal mean pairwise distance")
{
  Eigen::MatrixXd c(3, 2);
  c << 0, 0, 1, 0, 0, 1;
  const double mean = (1.0 + 1.0 + std::sqrt(2.0)) / 3.0;
  CHECK(GaussianRbf<double>::default_shape(c) == doctest::Approx(1.0 / mean));
  CHECK(GaussianRbf<double>::default_shape(Eigen::MatrixXd::Zero(1, 2)) == 1.0);
}

TEST_CASE("ridge is applied only to a numerically singular kernel")
{
  Eigen::MatrixXd good(3, 2);
  good << 0, 0, 1, 0, 0, 1;
  CHECK(GaussianRbf<double>(good, 1.0, 1e-12).applied_ridge() == 0.0);

  Eigen::MatrixXd close(3, 2);
  close << 0, 0, 1e-9, 0, 1, 1;
  const GaussianRbf<double> rbf(close, 1.0, 1e-12);
  CHECK(rbf.applied_ridge() > 0.0);
  CHECK(std::abs(rbf.weights(Eigen::Vector2d(0.5, 0.5)).sum() - 1.0) < 1e-8);
  CHECK_THROWS(GaussianRbf<double>(close, 1.0, 0.0));
}
