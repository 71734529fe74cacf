// SPDX-License-Identifier: Apache-2.0

#ifndef OMMI_ROM_HPP
#define OMMI_ROM_HPP

#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <Eigen/Dense>
#include "ommi/config.hpp"
#include "ommi/errors.hpp"

namespace ommi
{

// Test space of the projection: W = U (Galerkin) or W = A U (Petrov-Galerkin).
enum class Projection : int
{
  Galerkin = 0,
  PetrovGalerkin = 1,
};

std::string to_string(Projection p);
Projection projection_from_string(const std::string &name);

// W^T A U c = W^T b at one parameter point.
template <typename Scalar>
struct ReducedSystem
{
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> matrix;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> rhs;
  Parameter param{};
  Projection projection = Projection::PetrovGalerkin;
  std::size_t sweep_count = 0;  // operator applications spent assembling it

  Eigen::Index rank() const { return rhs.size(); }
};

//
// Minimally invasive assembly: A U is formed one column at a time through the operator
// action (r applications) and b through one right-hand-side evaluation, so the full
// operator is never assembled. `apply(v)` returns A v and `rhs()` returns b.
//
template <typename Scalar, typename Apply, typename Rhs>
ReducedSystem<Scalar> assemble_reduced(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> &modes, Apply &&apply,
    Rhs &&rhs, Projection projection, const Parameter &param = {})
{
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  const Eigen::Index r = modes.cols();
  ReducedSystem<Scalar> sys;
  sys.param = param;
  sys.projection = projection;

  Matrix au(modes.rows(), r);
  for (Eigen::Index j = 0; j < r; j++)
  {
    au.col(j) = apply(Vector(modes.col(j)));
    ++sys.sweep_count;
  }
  const Vector b = rhs();
  ++sys.sweep_count;

  if (projection == Projection::PetrovGalerkin)
  {
    sys.matrix = au.transpose() * au;
    sys.matrix = Scalar(0.5) * (sys.matrix + sys.matrix.transpose()).eval();
    sys.rhs = au.transpose() * b;

    Eigen::SelfAdjointEigenSolver<Matrix> eig(sys.matrix, Eigen::EigenvaluesOnly);
    const Scalar lo = eig.eigenvalues().minCoeff(), hi = eig.eigenvalues().maxCoeff();
    if (!(lo > Scalar(r) * std::numeric_limits<Scalar>::epsilon() * hi))
    {
      std::ostringstream msg;
      msg << "assemble_reduced: A U is rank deficient (condition estimate "
          << (lo > Scalar(0) ? hi / lo : std::numeric_limits<Scalar>::infinity()) << ")";
      throw NumericalError(msg.str());
    }
  }
  else
  {
    sys.matrix = modes.transpose() * au;
    sys.rhs = modes.transpose() * b;
  }
  return sys;
}

template <typename Scalar>
struct RomSolution
{
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> coefficients;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> field;  // U c
};

// Dense r × r solve followed by reconstruction x ≈ U c.
template <typename Scalar>
RomSolution<Scalar> rom_solve(const ReducedSystem<Scalar> &sys,
                              const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> &modes)
{
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (sys.matrix.rows() != sys.matrix.cols() || sys.matrix.rows() != sys.rhs.size() ||
      modes.cols() != sys.rhs.size())
  {
    throw std::invalid_argument("rom_solve: reduced system and basis sizes disagree");
  }
  RomSolution<Scalar> sol;
  if (sys.projection == Projection::PetrovGalerkin)
  {
    Eigen::LLT<Matrix> llt(sys.matrix);
    if (llt.info() != Eigen::Success)
    {
      throw NumericalError("rom_solve: reduced matrix is not positive definite");
    }
    sol.coefficients = llt.solve(sys.rhs);
  }
  else
  {
    Eigen::FullPivLU<Matrix> lu(sys.matrix);
    if (!lu.isInvertible())
    {
      throw NumericalError("rom_solve: reduced matrix is singular");
    }
    sol.coefficients = lu.solve(sys.rhs);
  }
  sol.field = modes * sol.coefficients;
  return sol;
}

}  // namespace ommi

#endif  // OMMI_ROM_HPP
