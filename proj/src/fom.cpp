// SPDX-License-Identifier: Apache-2.0

#include "ommi/fom.hpp"

#include <sstream>
#include "ommi/errors.hpp"
#include "ommi/parallel.hpp"

namespace ommi
{

GmresOptions<double> gmres_options(const ProblemConfig &config)
{
  return {config.gmres_tol, config.gmres_restart, config.gmres_maxiter};
}

FomSolution solve_fom(const TransportOperator &op, const ProblemConfig &config)
{
  const MomentField b = op.rhs();
  auto result = gmres_solve<double>([&op](const auto &v) { return op.apply(v); }, b,
                                    gmres_options(config));
  FomSolution sol;
  sol.phi = std::move(result.x);
  sol.report = std::move(result.report);
  sol.sweeps = sol.report.sweep_count + 1;
  return sol;
}

FomSolution solve_fom(const ProblemConfig &config, const Parameter &theta)
{
  const TransportOperator op(make_problem(config, theta));
  return solve_fom(op, config);
}

SnapshotMatrix collect_snapshots(const ProblemConfig &config,
                                 const std::vector<Parameter> &params, int threads,
                                 std::size_t *total_sweeps)
{
  if (params.empty())
  {
    throw std::invalid_argument("collect_snapshots: no parameters");
  }
  std::vector<FomSolution> solutions(params.size());
  parallel_for(params.size(), threads,
               [&](std::size_t i) { solutions[i] = solve_fom(config, params[i]); });

  SnapshotMatrix x;
  x.params = params;
  x.columns.resize(solutions.front().phi.size(), static_cast<Eigen::Index>(params.size()));
  std::size_t sweeps = 0;
  for (std::size_t i = 0; i < params.size(); i++)
  {
    const auto &s = solutions[i];
    if (!s.report.converged)
    {
      std::ostringstream msg;
      msg << "full-order solve did not converge at theta1=" << params[i].theta1
          << ", theta2=" << params[i].theta2 << " (relative residual "
          << s.report.relative_residual << " after " << s.report.iterations
          << " iterations)";
      throw ConvergenceError(msg.str());
    }
    x.columns.col(static_cast<Eigen::Index>(i)) = s.phi;
    sweeps += s.sweeps;
  }
  if (total_sweeps)
  {
    *total_sweeps = sweeps;
  }
  return x;
}

}  // namespace ommi
