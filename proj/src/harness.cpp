// SPDX-License-Identifier: Apache-2.0

#include "ommi/harness.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include "ommi/field_io.hpp"
#include "ommi/fom.hpp"
#include "ommi/parallel.hpp"
#include "ommi/sweep.hpp"

namespace ommi
{

double relative_l2_error(const Eigen::VectorXd &approx, const Eigen::VectorXd &reference)
{
  if (approx.size() != reference.size())
  {
    throw std::invalid_argument("relative_l2_error: length mismatch");
  }
  const double diff = (approx - reference).norm();
  const double ref = reference.norm();
  if (ref == 0.0)
  {
    return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return diff / ref;
}

Eigen::VectorXd pointwise_relative_error(const Eigen::VectorXd &approx,
                                         const Eigen::VectorXd &reference)
{
  const double floor = std::max(1e-12 * reference.cwiseAbs().maxCoeff(),
                                std::numeric_limits<double>::min());
  return (approx - reference).cwiseAbs().cwiseQuotient(
      reference.cwiseAbs().cwiseMax(floor));
}

std::string environment_fingerprint()
{
  std::ostringstream s;
#if defined(__clang__)
  s << "clang " << __clang_major__ << "." << __clang_minor__;
#elif defined(__GNUC__)
  s << "gcc " << __GNUC__ << "." << __GNUC_MINOR__;
#else
  s << "unknown-compiler";
#endif
  s << "; eigen " << EIGEN_WORLD_VERSION << "." << EIGEN_MAJOR_VERSION << "."
    << EIGEN_MINOR_VERSION;
#ifdef NDEBUG
  s << "; release";
#else
  s << "; debug";
#endif
  s << "; threads " << thread_count();
  return s.str();
}

EvalReport evaluate(const ProblemConfig &config, const RomLibrary &library,
                    const std::vector<Parameter> &test, const EvalOptions &options,
                    std::ostream *log)
{
  if (test.empty())
  {
    throw std::invalid_argument("evaluate: empty test set");
  }
  if (!options.field_dir.empty())
  {
    std::filesystem::create_directories(options.field_dir);
  }
  EvalReport report;
  report.environment = environment_fingerprint();
  const Eigen::MatrixXd &modes = library.basis().modes;

  for (std::size_t i = 0; i < test.size(); i++)
  {
    const Parameter &p = test[i];
    const TransportOperator op(make_problem(config, p));

    FomSolution fom;
    const double fom_time = median_seconds(options.repetitions,
                                           [&] { fom = solve_fom(op, config); });
    if (!fom.report.converged)
    {
      std::ostringstream msg;
      msg << "evaluate: full-order solve did not converge at theta1=" << p.theta1
          << ", theta2=" << p.theta2;
      throw ConvergenceError(msg.str());
    }

    const std::size_t sweeps_before = op.sweep_count();
    RomSolution<double> rom;
    const double rom_time = median_seconds(options.repetitions,
                                           [&]
                                           {
                                             const auto sys = interpolate_system(library, p);
                                             rom = rom_solve(sys, modes);
                                           });

    EvalPoint pt;
    pt.index = static_cast<int>(i);
    pt.theta = p;
    pt.rel_l2_error = relative_l2_error(rom.field, fom.phi);
    pt.fom_time_s = fom_time;
    pt.rom_time_s = rom_time;
    pt.speedup = rom_time > 0.0 ? fom_time / rom_time : std::numeric_limits<double>::infinity();
    pt.fom_sweeps = fom.sweeps;
    pt.rom_sweeps = op.sweep_count() - sweeps_before;
    report.points.push_back(pt);

    if (!options.field_dir.empty())
    {
      const FieldHeader h = field_header(op.problem().mesh, op.num_groups());
      char stem[32];
      std::snprintf(stem, sizeof(stem), "%03zu", i);
      const std::filesystem::path dir(options.field_dir);
      const Eigen::VectorXd err = pointwise_relative_error(rom.field, fom.phi);
      write_field((dir / ("fom_" + std::string(stem) + ".field")).string(), h, fom.phi);
      write_field((dir / ("rom_" + std::string(stem) + ".field")).string(), h, rom.field);
      write_field((dir / ("err_" + std::string(stem) + ".field")).string(), h, err);
      if (options.csv_fields)
      {
        std::ofstream f(dir / ("fom_" + std::string(stem) + ".csv"));
        write_field_csv(f, h, fom.phi);
        std::ofstream r(dir / ("rom_" + std::string(stem) + ".csv"));
        write_field_csv(r, h, rom.field);
        std::ofstream e(dir / ("err_" + std::string(stem) + ".csv"));
        write_field_csv(e, h, err);
      }
    }
    if (log)
    {
      *log << "point " << i << ": theta1=" << p.theta1 << " theta2=" << p.theta2
           << " error=" << pt.rel_l2_error << " speedup=" << pt.speedup << "\n";
    }
  }

  const double n = static_cast<double>(report.points.size());
  for (const auto &pt : report.points)
  {
    report.mean_error += pt.rel_l2_error / n;
    report.max_error = std::max(report.max_error, pt.rel_l2_error);
    report.mean_speedup += pt.speedup / n;
    report.mean_fom_time_s += pt.fom_time_s / n;
    report.mean_rom_time_s += pt.rom_time_s / n;
  }
  return report;
}

void write_eval_csv(std::ostream &out, const EvalReport &report)
{
  out << kEvalCsvHeader << "\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  double fom_sweeps = 0.0, rom_sweeps = 0.0;
  for (const auto &p : report.points)
  {
    out << p.index << ',' << p.theta.theta1 << ',' << p.theta.theta2 << ',' << p.rel_l2_error
        << ',' << p.fom_time_s << ',' << p.rom_time_s << ',' << p.speedup << ','
        << p.fom_sweeps << ',' << p.rom_sweeps << '\n';
    fom_sweeps += static_cast<double>(p.fom_sweeps);
    rom_sweeps += static_cast<double>(p.rom_sweeps);
  }
  const double n = std::max<double>(1.0, static_cast<double>(report.points.size()));
  double t1 = 0.0, t2 = 0.0;
  for (const auto &p : report.points)
  {
    t1 += p.theta.theta1 / n;
    t2 += p.theta.theta2 / n;
  }
  out << "mean," << t1 << ',' << t2 << ',' << report.mean_error << ','
      << report.mean_fom_time_s << ',' << report.mean_rom_time_s << ','
      << report.mean_speedup << ',' << fom_sweeps / n << ',' << rom_sweeps / n << '\n';
}

std::vector<EvalPoint> read_eval_csv(std::istream &in)
{
  std::string line;
  if (!std::getline(in, line) || line != kEvalCsvHeader)
  {
    throw std::runtime_error("eval csv: unexpected header");
  }
  std::vector<EvalPoint> points;
  while (std::getline(in, line))
  {
    if (line.empty() || line.rfind("mean,", 0) == 0)
    {
      continue;
    }
    std::istringstream ls(line);
    EvalPoint p;
    char c1, c2, c3, c4, c5, c6, c7, c8;
    ls >> p.index >> c1 >> p.theta.theta1 >> c2 >> p.theta.theta2 >> c3 >> p.rel_l2_error >>
        c4 >> p.fom_time_s >> c5 >> p.rom_time_s >> c6 >> p.speedup >> c7 >> p.fom_sweeps >>
        c8 >> p.rom_sweeps;
    if (!ls)
    {
      throw std::runtime_error("eval csv: malformed row '" + line + "'");
    }
    points.push_back(p);
  }
  return points;
}

CompareReport compare(const ProblemConfig &config, const RomLibrary &library,
                      const Parameter &theta, int repetitions)
{
  const TransportOperator op(make_problem(config, theta));
  const Eigen::MatrixXd &modes = library.basis().modes;
  CompareReport rep;
  rep.theta = theta;

  FomSolution fom;
  rep.fom_time_s = median_seconds(repetitions, [&] { fom = solve_fom(op, config); });
  if (!fom.report.converged)
  {
    throw ConvergenceError("compare: full-order solve did not converge");
  }
  rep.fom_sweeps = fom.sweeps;
  rep.fom_self_error = relative_l2_error(fom.phi, fom.phi);

  RomSolution<double> mi;
  std::size_t before = op.sweep_count();
  rep.mi_time_s = median_seconds(repetitions,
                                 [&]
                                 {
                                   const auto sys = assemble_reduced<double>(
                                       modes,
                                       [&op](const Eigen::VectorXd &v) { return op.apply(v); },
                                       [&op] { return op.rhs(); }, library.projection(),
                                       theta);
                                   mi = rom_solve(sys, modes);
                                 });
  rep.mi_sweeps = (op.sweep_count() - before) / std::max(repetitions, 1);
  rep.mi_error = relative_l2_error(mi.field, fom.phi);

  RomSolution<double> ommi;
  before = op.sweep_count();
  rep.ommi_time_s = median_seconds(repetitions,
                                   [&]
                                   {
                                     const auto sys = interpolate_system(library, theta);
                                     ommi = rom_solve(sys, modes);
                                   });
  rep.ommi_sweeps = (op.sweep_count() - before) / std::max(repetitions, 1);
  rep.ommi_error = relative_l2_error(ommi.field, fom.phi);
  return rep;
}

}  // namespace ommi
