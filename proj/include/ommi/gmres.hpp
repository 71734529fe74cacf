// SPDX-License-Identifier: Apache-2.0

#ifndef OMMI_GMRES_HPP
#define OMMI_GMRES_HPP

#include <cmath>
#include <cstddef>
#include <vector>
#include <Eigen/Dense>
#include "ommi/errors.hpp"

namespace ommi
{

template <typename Scalar>
struct GmresOptions
{
  Scalar tol = Scalar(1e-8);
  int restart = 30;
  int maxiter = 1000;
};

struct GmresReport
{
  int iterations = 0;
  int restarts = 0;
  double relative_residual = 0.0;
  bool converged = false;
  std::size_t sweep_count = 0;  // operator applications

  // Least-squares residual estimate after each Arnoldi step, relative to ‖b‖.
  std::vector<double> residual_history;
};

template <typename Scalar>
struct GmresResult
{
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;
  GmresReport report;
};

//
// Restarted GMRES from a zero initial guess. Orthogonalization is modified Gram-Schmidt
// with a second pass whenever the new Krylov vector retains a component above 1e-10
// (relative) along the existing basis. `op` maps a vector to A times that vector.
//
// Non-convergence is reported through the report flag; a non-finite operator output
// throws NumericalError.
//
template <typename Scalar, typename Operator>
GmresResult<Scalar> gmres_solve(Operator &&op,
                                const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> &b,
                                const GmresOptions<Scalar> &opts)
{
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  constexpr Scalar kReorthTol = Scalar(1e-10);

  if (!(opts.tol > Scalar(0)) || opts.restart < 1 || opts.maxiter < 1)
  {
    throw std::invalid_argument("gmres: tol, restart and maxiter must be positive");
  }

  GmresResult<Scalar> result;
  GmresReport &rep = result.report;
  const Eigen::Index n = b.size();
  result.x = Vector::Zero(n);
  const Scalar b_norm = b.norm();
  if (!std::isfinite(static_cast<double>(b_norm)))
  {
    throw NumericalError("gmres: right-hand side is not finite");
  }
  if (b_norm == Scalar(0))
  {
    rep.converged = true;
    return result;
  }

  auto apply = [&](const auto &v)
  {
    Vector w = op(v);
    ++rep.sweep_count;
    if (!w.allFinite())
    {
      throw NumericalError("gmres: operator produced a non-finite value");
    }
    return w;
  };

  const int m = opts.restart;
  Matrix V(n, m + 1), H = Matrix::Zero(m + 1, m);
  Vector cs(m), sn(m), g(m + 1);
  Vector r = b;
  Scalar beta = b_norm;
  Scalar rel = Scalar(1);

  while (true)
  {
    H.setZero();
    g.setZero();
    g(0) = beta;
    V.col(0) = r / beta;
    int k = 0;
    for (int j = 0; j < m && rep.iterations < opts.maxiter; j++)
    {
      Vector w = apply(V.col(j));
      for (int i = 0; i <= j; i++)
      {
        const Scalar h = V.col(i).dot(w);
        H(i, j) = h;
        w -= h * V.col(i);
      }
      Scalar w_norm = w.norm();
      if (w_norm > Scalar(0))
      {
        const Scalar loss = (V.leftCols(j + 1).transpose() * w).cwiseAbs().maxCoeff();
        if (loss > kReorthTol * w_norm)
        {
          for (int i = 0; i <= j; i++)
          {
            const Scalar h = V.col(i).dot(w);
            H(i, j) += h;
            w -= h * V.col(i);
          }
          w_norm = w.norm();
        }
      }
      H(j + 1, j) = w_norm;
      if (w_norm > Scalar(0))
      {
        V.col(j + 1) = w / w_norm;
      }

      for (int i = 0; i < j; i++)
      {
        const Scalar t = cs(i) * H(i, j) + sn(i) * H(i + 1, j);
        H(i + 1, j) = -sn(i) * H(i, j) + cs(i) * H(i + 1, j);
        H(i, j) = t;
      }
      const Scalar denom = std::hypot(H(j, j), H(j + 1, j));
      if (denom == Scalar(0))
      {
        throw NumericalError("gmres: operator is singular on the Krylov space");
      }
      cs(j) = H(j, j) / denom;
      sn(j) = H(j + 1, j) / denom;
      H(j, j) = denom;
      H(j + 1, j) = Scalar(0);
      g(j + 1) = -sn(j) * g(j);
      g(j) = cs(j) * g(j);

      ++rep.iterations;
      k = j + 1;
      rel = std::abs(g(j + 1)) / b_norm;
      rep.residual_history.push_back(static_cast<double>(rel));
      if (rel <= opts.tol || w_norm == Scalar(0))
      {
        break;
      }
    }

    if (k > 0)
    {
      const Vector y =
          H.topLeftCorner(k, k).template triangularView<Eigen::Upper>().solve(g.head(k));
      result.x += V.leftCols(k) * y;
    }
    if (rel <= opts.tol)
    {
      rep.converged = true;
      break;
    }
    if (rep.iterations >= opts.maxiter)
    {
      break;
    }

    r = b - apply(result.x);
    beta = r.norm();
    rel = beta / b_norm;
    ++rep.restarts;
    if (rel <= opts.tol)
    {
      rep.converged = true;
      break;
    }
  }
  rep.relative_residual = static_cast<double>(rel);
  return result;
}

}  // namespace ommi

#endif  // OMMI_GMRES_HPP
