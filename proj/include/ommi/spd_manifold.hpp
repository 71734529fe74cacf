// SPDX-License-Identifier: Apache-2.0

#ifndef OMMI_SPD_MANIFOLD_HPP
#define OMMI_SPD_MANIFOLD_HPP

#include <cmath>
#include <Eigen/Dense>
#include "ommi/errors.hpp"

namespace ommi
{

// Logarithm and exponential maps for symmetric matrices, computed through a symmetric
// eigendecomposition. Inputs are symmetrized before decomposition.

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
spd_log(const Eigen::MatrixBase<Derived> &a)
{
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Matrix sym = Scalar(0.5) * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  if (eig.info() != Eigen::Success)
  {
    throw NumericalError("spd_log: eigendecomposition failed");
  }
  if (!(eig.eigenvalues().minCoeff() > Scalar(0)))
  {
    throw NumericalError("spd_log: matrix is not positive definite");
  }
  return eig.eigenvectors() * eig.eigenvalues().array().log().matrix().asDiagonal() *
         eig.eigenvectors().transpose();
}

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
sym_exp(const Eigen::MatrixBase<Derived> &a)
{
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Matrix sym = Scalar(0.5) * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  if (eig.info() != Eigen::Success)
  {
    throw NumericalError("sym_exp: eigendecomposition failed");
  }
  Matrix out = eig.eigenvectors() * eig.eigenvalues().array().exp().matrix().asDiagonal() *
               eig.eigenvectors().transpose();
  return Scalar(0.5) * (out + out.transpose());
}

template <typename Derived>
bool is_spd(const Eigen::MatrixBase<Derived> &a, typename Derived::Scalar sym_tol)
{
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (a.rows() != a.cols() || (a - a.transpose()).cwiseAbs().maxCoeff() > sym_tol)
  {
    return false;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(Matrix(a), Eigen::EigenvaluesOnly);
  return eig.info() == Eigen::Success && eig.eigenvalues().minCoeff() > Scalar(0);
}

}  // namespace ommi

#endif  // OMMI_SPD_MANIFOLD_HPP
