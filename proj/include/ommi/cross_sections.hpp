// SPDX-License-Identifier: Apache-2.0

#ifndef OMMI_CROSS_SECTIONS_HPP
#define OMMI_CROSS_SECTIONS_HPP

#include <vector>
#include <Eigen/Dense>

namespace ommi
{

// Material indices of the checkerboard problem.
enum CheckerboardMaterial : int
{
  kScatterer = 0,
  kAbsorber = 1,
  kSource = 2,
};

// Multigroup isotropic data for one material. sigma_s(from, to) is the transfer from
// group `from` into group `to`; q_ext is the angle-integrated external source density.
struct MaterialData
{
  Eigen::VectorXd sigma_t;
  Eigen::MatrixXd sigma_s;
  Eigen::VectorXd q_ext;

  // σ_t − Σ_to σ_s(g, to): removal by absorption in group g.
  double sigma_a(int g) const { return sigma_t(g) - sigma_s.row(g).sum(); }
};

struct CrossSections
{
  int n_groups = 0;
  std::vector<MaterialData> materials;

  int num_materials() const { return static_cast<int>(materials.size()); }
  const MaterialData &operator[](int m) const { return materials[m]; }
};

// Checkerboard data: scatterer (σ_t = 1, σ_a = 0), absorber (σ_t = theta1, σ_s = 0), and a
// scatterer-like source material emitting `source_strength` into `source_group`. With
// n_groups == 1 the scatterer is a pure unit scatterer and theta2 is unused.
CrossSections make_cross_sections(double theta1, double theta2, int n_groups = 2,
                                  double source_strength = 1.0, int source_group = 0);

}  // namespace ommi

#endif  // OMMI_CROSS_SECTIONS_HPP
