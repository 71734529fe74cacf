// SPDX-License-Identifier: Apache-2.0

#ifndef OMMI_DG_HPP
#define OMMI_DG_HPP

#include <array>
#include <Eigen/Dense>

namespace ommi
{

// Bilinear nodal basis on a rectangle: local node k = ix + 2 * iy sits at corner
// (ix * width, iy * height).
inline constexpr int kLocalDofs = 4;

inline constexpr int local_ix(int k) { return k & 1; }
inline constexpr int local_iy(int k) { return k >> 1; }

enum Face : int
{
  kLeft = 0,
  kRight = 1,
  kBottom = 2,
  kTop = 3,
};

// Closed-form element integrals for one cell. grad_x(i, j) = ∫ ∂x b_i b_j and
// face[f](i, j) = ∫_f b_i b_j.
struct CellMatrices
{
  Eigen::Matrix4d mass;
  Eigen::Matrix4d grad_x;
  Eigen::Matrix4d grad_y;
  std::array<Eigen::Matrix4d, 4> face;
};

CellMatrices cell_matrices(double width, double height);

// Upwind DG cell matrix for direction (mu, eta):
//   −μ G_x − η G_y + σ_t M + Σ_{outflow faces} |Ω·n| F_f.
Eigen::Matrix4d local_transport_matrix(const CellMatrices &cm, double mu, double eta,
                                       double sigma_t);

// Inflow coupling for direction (mu, eta) across the x (or y) inflow face: maps the
// upstream neighbour's local nodal values onto this cell's test functions, scaled by |Ω·n|.
Eigen::Matrix4d inflow_coupling_x(const CellMatrices &cm, double mu);
Eigen::Matrix4d inflow_coupling_y(const CellMatrices &cm, double eta);

}  // namespace ommi

#endif  // OMMI_DG_HPP
