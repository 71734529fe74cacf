// SPDX-License-Identifier: Apache-2.0

#include "ommi/cross_sections.hpp"

#include "ommi/errors.hpp"

namespace ommi
{

CrossSections make_cross_sections(double theta1, double theta2, int n_groups,
                                  double source_strength, int source_group)
{
  if (!(theta1 > 0.0))
  {
    throw ConfigError("theta1", "absorber cross section must be positive");
  }
  if (!(theta2 >= 0.0 && theta2 <= 1.0))
  {
    throw ConfigError("theta2", "down-scattering ratio must lie in [0, 1]");
  }
  if (n_groups != 1 && n_groups != 2)
  {
    throw ConfigError("n_groups", "the checkerboard cross sections are defined for 1 or 2 "
                                  "groups");
  }
  if (source_group < 0 || source_group >= n_groups)
  {
    throw ConfigError("source_group", "out of range");
  }

  MaterialData scatterer;
  scatterer.sigma_t = Eigen::VectorXd::Ones(n_groups);
  scatterer.sigma_s = Eigen::MatrixXd::Zero(n_groups, n_groups);
  if (n_groups == 2)
  {
    scatterer.sigma_s(0, 0) = 1.0 - theta2;
    scatterer.sigma_s(0, 1) = theta2;
    scatterer.sigma_s(1, 1) = 1.0;
  }
  else
  {
    scatterer.sigma_s(0, 0) = 1.0;
  }
  scatterer.q_ext = Eigen::VectorXd::Zero(n_groups);

  MaterialData absorber;
  absorber.sigma_t = Eigen::VectorXd::Constant(n_groups, theta1);
  absorber.sigma_s = Eigen::MatrixXd::Zero(n_groups, n_groups);
  absorber.q_ext = Eigen::VectorXd::Zero(n_groups);

  MaterialData source = scatterer;
  source.q_ext(source_group) = source_strength;

  CrossSections xs;
  xs.n_groups = n_groups;
  xs.materials = {scatterer, absorber, source};
  return xs;
}

}  // namespace ommi
