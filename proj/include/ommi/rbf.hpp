// SPDX-License-Identifier: Apache-2.0

#ifndef OMMI_RBF_HPP
#define OMMI_RBF_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <Eigen/Dense>

namespace ommi
{

//
// Gaussian radial basis interpolation k(d) = exp(−(εd)²) over a fixed set of centers (one
// per row), augmented with a constant term so that constants are reproduced exactly.
// Rather than coefficients for one data set, weights(x) returns cardinal weights solving
//
//   [K + δI  1] [w]   [k(x)]
//   [1ᵀ      0] [λ] = [ 1  ]
//
// so any data f_i (scalars, vectors, matrices) is interpolated as Σ_i w_i(x) f_i and the
// weights always sum to one. For repeated evaluation of fixed data, coefficients() solves
// the same system against the data once and evaluate() applies [k(x); 1]ᵀ to them; at the
// centers this form is exact up to the solve residual, which stays small even when the
// kernel is ill-conditioned. δ = 0 unless the system is numerically singular, in which case
// δ = ridge · trace(K) / N.
//
template <typename Scalar>
class GaussianRbf
{
public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  GaussianRbf() = default;

  GaussianRbf(Matrix centers, Scalar shape, Scalar ridge)
    : centers_(std::move(centers)), shape_(shape), ridge_(ridge)
  {
    if (centers_.rows() < 1)
    {
      throw std::invalid_argument("GaussianRbf: no centers");
    }
    if (!(shape_ > Scalar(0)) || !(ridge_ >= Scalar(0)))
    {
      throw std::invalid_argument("GaussianRbf: shape must be positive, ridge non-negative");
    }
    const Eigen::Index n = centers_.rows();
    Matrix k = Matrix::Zero(n + 1, n + 1);
    for (Eigen::Index i = 0; i < n; i++)
    {
      for (Eigen::Index j = 0; j < n; j++)
      {
        k(i, j) = kernel((centers_.row(i) - centers_.row(j)).norm());
      }
      k(i, n) = Scalar(1);
      k(n, i) = Scalar(1);
    }
    factor_.compute(k);
    if (!(factor_.rcond() > std::numeric_limits<Scalar>::epsilon()) && ridge_ > Scalar(0))
    {
      applied_ridge_ = ridge_ * k.topLeftCorner(n, n).trace() / Scalar(n);
      k.diagonal().head(n).array() += applied_ridge_;
      factor_.compute(k);
    }
    if (!(factor_.rcond() > std::numeric_limits<Scalar>::epsilon()))
    {
      throw std::runtime_error("GaussianRbf: kernel system is numerically singular");
    }
    system_ = std::move(k);
  }

  // ε = 1 / (mean pairwise distance between centers); 1 when there is a single center.
  static Scalar default_shape(const Matrix &centers)
  {
    const Eigen::Index n = centers.rows();
    Scalar sum = Scalar(0);
    Eigen::Index count = 0;
    for (Eigen::Index i = 0; i < n; i++)
    {
      for (Eigen::Index j = i + 1; j < n; j++)
      {
        sum += (centers.row(i) - centers.row(j)).norm();
        ++count;
      }
    }
    if (count == 0 || sum == Scalar(0))
    {
      return Scalar(1);
    }
    return Scalar(count) / sum;
  }

  Scalar kernel(Scalar distance) const
  {
    const Scalar t = shape_ * distance;
    return std::exp(-t * t);
  }

  template <typename Derived>
  Vector weights(const Eigen::MatrixBase<Derived> &x) const
  {
    const Eigen::Index n = centers_.rows();
    Vector k(n + 1);
    for (Eigen::Index i = 0; i < n; i++)
    {
      k(i) = kernel((centers_.row(i) - x.transpose()).norm());
    }
    k(n) = Scalar(1);
    return factor_.solve(k).head(n);
  }

  // Rows of `data` are the values at the centers, one column per interpolated quantity.
  // Returns the (N + 1) × m coefficient block of the augmented system.
  Matrix coefficients(const Matrix &data) const
  {
    const Eigen::Index n = centers_.rows();
    if (data.rows() != n)
    {
      throw std::invalid_argument("GaussianRbf: data rows must match the centers");
    }
    Matrix rhs = Matrix::Zero(n + 1, data.cols());
    rhs.topRows(n) = data;
    Matrix c = factor_.solve(rhs);
    c += factor_.solve(rhs - system_ * c);  // one step of refinement
    return c;
  }

  template <typename Derived>
  Vector evaluate(const Eigen::MatrixBase<Derived> &x, const Matrix &coefficients) const
  {
    const Eigen::Index n = centers_.rows();
    Vector k(n + 1);
    for (Eigen::Index i = 0; i < n; i++)
    {
      k(i) = kernel((centers_.row(i) - x.transpose()).norm());
    }
    k(n) = Scalar(1);
    return coefficients.transpose() * k;
  }

  const Matrix &centers() const { return centers_; }
  Scalar shape() const { return shape_; }
  Scalar ridge() const { return ridge_; }
  // Diagonal shift actually added to K; 0 for a well-conditioned kernel.
  Scalar applied_ridge() const { return applied_ridge_; }

private:
  Matrix centers_;
  Scalar shape_ = Scalar(1);
  Scalar ridge_ = Scalar(0);
  Scalar applied_ridge_ = Scalar(0);
  Matrix system_;
  Eigen::PartialPivLU<Matrix> factor_;
};

}  // namespace ommi

#endif  // OMMI_RBF_HPP
