// SPDX-License-Identifier: Apache-2.0

#ifndef OMMI_FOM_HPP
#define OMMI_FOM_HPP

#include <vector>
#include <Eigen/Dense>
#include "ommi/config.hpp"
#include "ommi/gmres.hpp"
#include "ommi/sweep.hpp"

namespace ommi
{

GmresOptions<double> gmres_options(const ProblemConfig &config);

struct FomSolution
{
  MomentField phi;
  GmresReport report;
  std::size_t sweeps = 0;  // right-hand side plus GMRES operator applications
};

// Solves (I − D L⁻¹ M S) φ = D L⁻¹ Q_e for an already constructed operator.
FomSolution solve_fom(const TransportOperator &op, const ProblemConfig &config);
FomSolution solve_fom(const ProblemConfig &config, const Parameter &theta);

struct SnapshotMatrix
{
  Eigen::MatrixXd columns;
  std::vector<Parameter> params;
};

// One converged full-order solve per parameter. Throws ConvergenceError naming the first
// parameter that fails to converge.
SnapshotMatrix collect_snapshots(const ProblemConfig &config,
                                 const std::vector<Parameter> &params, int threads = 1,
                                 std::size_t *total_sweeps = nullptr);

}  // namespace ommi

#endif  // OMMI_FOM_HPP
