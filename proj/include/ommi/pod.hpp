// SPDX-License-Identifier: Apache-2.0

#ifndef OMMI_POD_HPP
#define OMMI_POD_HPP

#include <stdexcept>
#include <string>
#include <variant>
#include <Eigen/Dense>
#include <Eigen/SVD>

namespace ommi
{

// Keep exactly `rank` modes.
struct RankCriterion
{
  Eigen::Index rank;
};

// Keep the fewest modes whose retained information reaches `threshold`.
struct InformationCriterion
{
  double threshold;
};

using Truncation = std::variant<RankCriterion, InformationCriterion>;

template <typename Scalar>
struct ReducedBasis
{
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> modes;  // n × r, orthonormal
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> singular_values;     // full spectrum
  Eigen::Index rank = 0;
  Scalar information = Scalar(0);

  Eigen::Index size() const { return modes.rows(); }
};

// Fraction of squared singular-value energy carried by the leading r values. The total
// and the partial sum accumulate in the same order, so r = spectrum length yields 1.
template <typename Derived>
typename Derived::Scalar info_retained(const Eigen::MatrixBase<Derived> &singular_values,
                                       Eigen::Index r)
{
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = singular_values.size();
  if (r < 0 || r > n)
  {
    throw std::invalid_argument("info_retained: rank " + std::to_string(r) +
                                " outside the spectrum of length " + std::to_string(n));
  }
  if (r == 0)
  {
    return Scalar(0);
  }
  Scalar partial = Scalar(0), total = Scalar(0);
  for (Eigen::Index i = 0; i < n; i++)
  {
    const Scalar e = singular_values(i) * singular_values(i);
    total += e;
    if (i < r)
    {
      partial += e;
    }
  }
  if (total == Scalar(0))
  {
    return Scalar(0);
  }
  return r == n ? Scalar(1) : partial / total;
}

// Left singular vectors of the snapshot matrix (columns = snapshots), truncated per
// `criterion`. Each mode's largest-magnitude entry is made positive so the basis is a
// deterministic function of the snapshots.
template <typename Derived>
ReducedBasis<typename Derived::Scalar> pod_basis(const Eigen::MatrixBase<Derived> &snapshots,
                                                 const Truncation &criterion)
{
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  const Eigen::Index n_snap = snapshots.cols();
  if (n_snap == 0 || !(snapshots.cwiseAbs().maxCoeff() > Scalar(0)))
  {
    throw std::invalid_argument("pod_basis: snapshot matrix has no nonzero column");
  }
  if (!snapshots.allFinite())
  {
    throw std::invalid_argument("pod_basis: snapshot matrix is not finite");
  }

  Eigen::BDCSVD<Matrix> svd(snapshots.derived(), Eigen::ComputeThinU);

  ReducedBasis<Scalar> basis;
  basis.singular_values = svd.singularValues();
  const Eigen::Index n_sv = basis.singular_values.size();

  if (const auto *by_rank = std::get_if<RankCriterion>(&criterion))
  {
    if (by_rank->rank < 1)
    {
      throw std::invalid_argument("pod_basis: rank must be at least 1");
    }
    if (by_rank->rank > n_snap || by_rank->rank > n_sv)
    {
      throw std::invalid_argument("pod_basis: requested rank " +
                                  std::to_string(by_rank->rank) + " exceeds the " +
                                  std::to_string(n_snap) + " available snapshots");
    }
    basis.rank = by_rank->rank;
  }
  else
  {
    const double threshold = std::get<InformationCriterion>(criterion).threshold;
    if (!(threshold > 0.0 && threshold <= 1.0))
    {
      throw std::invalid_argument("pod_basis: information threshold must lie in (0, 1]");
    }
    basis.rank = n_sv;
    for (Eigen::Index r = 1; r <= n_sv; r++)
    {
      if (info_retained(basis.singular_values, r) >= Scalar(threshold))
      {
        basis.rank = r;
        break;
      }
    }
  }

  basis.modes = svd.matrixU().leftCols(basis.rank);
  for (Eigen::Index j = 0; j < basis.rank; j++)
  {
    Eigen::Index i_max;
    basis.modes.col(j).cwiseAbs().maxCoeff(&i_max);
    if (basis.modes(i_max, j) < Scalar(0))
    {
      basis.modes.col(j) *= Scalar(-1);
    }
  }
  basis.information = info_retained(basis.singular_values, basis.rank);
  return basis;
}

}  // namespace ommi

#endif  // OMMI_POD_HPP
