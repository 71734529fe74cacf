// SPDX-License-Identifier: Apache-2.0

#include "ommi/dg.hpp"

#include <cmath>

namespace ommi
{

CellMatrices cell_matrices(double width, double height)
{
  // 1-D linear elements: mass h/6 [2 1; 1 2] and ∫ b_i' b_j = ±1/2.
  const auto mass_1d = [](double h)
  {
    Eigen::Matrix2d m;
    m << 2.0, 1.0, 1.0, 2.0;
    return Eigen::Matrix2d(m * (h / 6.0));
  };
  Eigen::Matrix2d grad_1d;
  grad_1d << -0.5, -0.5, 0.5, 0.5;
  const Eigen::Matrix2d mx = mass_1d(width), my = mass_1d(height);

  CellMatrices cm;
  for (auto &f : cm.face)
  {
    f.setZero();
  }
  for (int i = 0; i < kLocalDofs; i++)
  {
    const int xi = local_ix(i), yi = local_iy(i);
    for (int j = 0; j < kLocalDofs; j++)
    {
      const int xj = local_ix(j), yj = local_iy(j);
      cm.mass(i, j) = mx(xi, xj) * my(yi, yj);
      cm.grad_x(i, j) = grad_1d(xi, xj) * my(yi, yj);
      cm.grad_y(i, j) = mx(xi, xj) * grad_1d(yi, yj);
      if (xi == xj)
      {
        cm.face[xi == 0 ? kLeft : kRight](i, j) = my(yi, yj);
      }
      if (yi == yj)
      {
        cm.face[yi == 0 ? kBottom : kTop](i, j) = mx(xi, xj);
      }
    }
  }
  return cm;
}

Eigen::Matrix4d local_transport_matrix(const CellMatrices &cm, double mu, double eta,
                                       double sigma_t)
{
  Eigen::Matrix4d a = -mu * cm.grad_x - eta * cm.grad_y + sigma_t * cm.mass;
  a += std::abs(mu) * cm.face[mu > 0.0 ? kRight : kLeft];
  a += std::abs(eta) * cm.face[eta > 0.0 ? kTop : kBottom];
  return a;
}

Eigen::Matrix4d inflow_coupling_x(const CellMatrices &cm, double mu)
{
  // Neighbour node j sits opposite this cell's node j ^ 1 on the shared face.
  const Eigen::Matrix4d &f = cm.face[mu > 0.0 ? kLeft : kRight];
  Eigen::Matrix4d c;
  for (int j = 0; j < kLocalDofs; j++)
  {
    c.col(j) = std::abs(mu) * f.col(j ^ 1);
  }
  return c;
}

Eigen::Matrix4d inflow_coupling_y(const CellMatrices &cm, double eta)
{
  const Eigen::Matrix4d &f = cm.face[eta > 0.0 ? kBottom : kTop];
  Eigen::Matrix4d c;
  for (int j = 0; j < kLocalDofs; j++)
  {
    c.col(j) = std::abs(eta) * f.col(j ^ 2);
  }
  return c;
}

}  // namespace ommi
