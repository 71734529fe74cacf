// SPDX-License-Identifier: Apache-2.0
//
// ommi: full-order solves, library training, evaluation and method comparison.
//
// Exit status: 0 success, 1 numerical failure, 2 usage or configuration error.
//

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <CLI11.hpp>
#include <json.hpp>
#include "ommi/errors.hpp"
#include "ommi/field_io.hpp"
#include "ommi/fom.hpp"
#include "ommi/harness.hpp"
#include "ommi/library.hpp"
#include "ommi/parallel.hpp"
#include "ommi/sampling.hpp"
#include "ommi/sweep.hpp"

using namespace ommi;

namespace
{

constexpr int kOk = 0;
constexpr int kNumerical = 1;
constexpr int kUsage = 2;

struct Common
{
  std::string config_path;
};

ProblemConfig read_config(const Common &c)
{
  if (c.config_path.empty())
  {
    return default_config();
  }
  return load_config(c.config_path, &std::cerr);
}

Parameter query_point(const ProblemConfig &config, std::optional<double> t1,
                      std::optional<double> t2)
{
  Parameter p{t1.value_or(config.theta.theta1), t2.value_or(config.theta.theta2)};
  if (!(p.theta1 > 0.0))
  {
    throw ConfigError("theta1", "must be positive");
  }
  if (!(p.theta2 >= 0.0 && p.theta2 <= 1.0))
  {
    throw ConfigError("theta2", "must lie in [0, 1]");
  }
  if (config.is_extrapolation(p))
  {
    std::cerr << "warning: (theta1=" << p.theta1 << ", theta2=" << p.theta2
              << ") lies outside the nominal parameter ranges; extrapolating\n";
  }
  return p;
}

struct FomArgs
{
  std::optional<double> theta1, theta2;
  std::string output = "fom.field";
  std::string csv;
};

int run_fom(const Common &common, const FomArgs &a)
{
  const ProblemConfig config = read_config(common);
  const Parameter p = query_point(config, a.theta1, a.theta2);
  const TransportOperator op(make_problem(config, p));
  const FomSolution sol = solve_fom(op, config);
  const GmresReport &r = sol.report;

  std::cout << "gmres: " << (r.converged ? "converged" : "NOT converged") << " after "
            << r.iterations << " iterations (" << r.restarts << " restarts), relative residual "
            << r.relative_residual << "\n";
  std::cout << "sweeps: " << sol.sweeps << "\n";
  if (!r.converged)
  {
    std::cerr << "error: GMRES did not reach tolerance " << config.gmres_tol << "\n";
    return kNumerical;
  }
  const BalanceTerms b = op.balance(sol.phi);
  std::cout << std::setprecision(10) << "balance: source " << b.source << " absorption "
            << b.absorption << " leakage " << b.leakage << " relative residual "
            << b.residual() << "\n";

  const FieldHeader h = field_header(op.problem().mesh, op.num_groups());
  write_field(a.output, h, sol.phi);
  nlohmann::json rep;
  rep["theta1"] = p.theta1;
  rep["theta2"] = p.theta2;
  rep["converged"] = r.converged;
  rep["iterations"] = r.iterations;
  rep["restarts"] = r.restarts;
  rep["relative_residual"] = r.relative_residual;
  rep["sweeps"] = sol.sweeps;
  rep["residual_history"] = r.residual_history;
  rep["balance_residual"] = b.residual();
  std::ofstream(a.output + ".json") << rep.dump(2) << "\n";
  if (!a.csv.empty())
  {
    std::ofstream out(a.csv);
    write_field_csv(out, h, sol.phi);
  }
  std::cout << "wrote " << a.output << " (" << h.count() << " values)\n";
  return kOk;
}

struct TrainArgs
{
  std::string sampler = "uniform";
  std::optional<std::uint64_t> seed;
  std::size_t n_snap = 25;
  std::optional<int> rank;
  std::optional<double> info;
  std::string projection = "petrov-galerkin";
  std::string output = "library.ommi";
};

int run_train(const Common &common, const TrainArgs &a)
{
  const ProblemConfig config = read_config(common);
  const std::uint64_t seed = a.seed.value_or(config.seed);
  LibraryOptions opt;
  if (a.info)
  {
    opt.truncation = InformationCriterion{*a.info};
  }
  else
  {
    opt.truncation = RankCriterion{a.rank.value_or(5)};
    if (a.rank.value_or(5) > static_cast<int>(a.n_snap))
    {
      std::cerr << "error: rank " << a.rank.value_or(5) << " exceeds the " << a.n_snap
                << " snapshots\n";
      return kUsage;
    }
  }
  opt.projection = projection_from_string(a.projection);
  opt.threads = thread_count();

  const SampleSet train =
      sample_parameters(sampler_from_string(a.sampler), a.n_snap, seed, config.theta1_range,
                        config.theta2_range);
  LibraryBuildLog log;
  const RomLibrary lib = build_library(config, train.points, opt, &log);
  save_library(lib, a.output);

  const auto &basis = lib.basis();
  std::cout << "training points: " << train.points.size() << " (" << to_string(train.sampler)
            << ", seed " << seed << ")\n";
  std::cout << "singular values:";
  for (Eigen::Index i = 0; i < basis.singular_values.size(); i++)
  {
    std::cout << ' ' << std::setprecision(6) << basis.singular_values(i);
  }
  std::cout << "\n";
  std::cout << "rank " << basis.rank << ", information retained "
            << std::setprecision(12) << basis.information << "\n";
  std::cout << "offline sweeps: " << log.fom_sweeps << " full-order + " << log.assembly_sweeps
            << " assembly = " << lib.offline_sweeps() << "\n";
  std::cout << "wrote " << a.output << "\n";
  return kOk;
}

struct EvalArgs
{
  std::string library = "library.ommi";
  std::string sampler = "uniform";
  std::optional<std::uint64_t> seed;
  std::size_t n_test = 10;
  std::string output = "eval.csv";
  std::string field_dir;
  bool csv_fields = false;
  int reps = 3;
};

int run_eval(const Common &common, const EvalArgs &a)
{
  const ProblemConfig config = read_config(common);
  if (a.n_test == 0)
  {
    std::cerr << "error: empty test set\n";
    return kUsage;
  }
  const RomLibrary lib = load_library(a.library, config.fingerprint());
  const SampleSet test =
      sample_parameters(sampler_from_string(a.sampler), a.n_test, a.seed.value_or(config.seed + 1),
                        config.theta1_range, config.theta2_range);
  EvalOptions opt;
  opt.repetitions = std::max(a.reps, 3);
  opt.field_dir = a.field_dir;
  opt.csv_fields = a.csv_fields;
  const EvalReport rep = evaluate(config, lib, test.points, opt, &std::cout);
  std::ofstream out(a.output);
  write_eval_csv(out, rep);
  if (!out)
  {
    throw std::runtime_error("cannot write '" + a.output + "'");
  }
  std::cout << "mean error " << rep.mean_error << ", max error " << rep.max_error
            << ", mean speedup " << rep.mean_speedup << "\n";
  std::cout << "environment: " << rep.environment << "\n";
  std::cout << "wrote " << a.output << "\n";
  return kOk;
}

struct CompareArgs
{
  std::string library = "library.ommi";
  std::optional<double> theta1, theta2;
  int reps = 3;
};

int run_compare(const Common &common, const CompareArgs &a)
{
  const ProblemConfig config = read_config(common);
  const Parameter p = query_point(config, a.theta1, a.theta2);
  const RomLibrary lib = load_library(a.library, config.fingerprint());
  const CompareReport c = compare(config, lib, p, std::max(a.reps, 3));
  std::cout << std::setprecision(6);
  std::cout << "query: theta1=" << p.theta1 << " theta2=" << p.theta2 << ", rank "
            << lib.rank() << "\n";
  std::cout << "method        time_s        sweeps  rel_l2_error\n";
  const auto row = [](const char *name, double t, std::size_t s, double e)
  {
    std::printf("%-12s  %-12.6g  %-6zu  %.6e\n", name, t, s, e);
  };
  row("fom", c.fom_time_s, c.fom_sweeps, c.fom_self_error);
  row("mi-pod", c.mi_time_s, c.mi_sweeps, c.mi_error);
  row("ommi-pod", c.ommi_time_s, c.ommi_sweeps, c.ommi_error);
  std::cout << "speedup vs fom: mi-pod " << c.fom_time_s / c.mi_time_s << ", ommi-pod "
            << c.fom_time_s / c.ommi_time_s << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"OMMI-POD reduced-order transport"};
  app.require_subcommand(1);
  Common common;
  app.add_option("-c,--config", common.config_path, "problem configuration (JSON)");

  FomArgs fom;
  auto *fom_cmd = app.add_subcommand("fom", "full-order solve at one parameter point");
  fom_cmd->add_option("--theta1", fom.theta1, "absorber total cross section");
  fom_cmd->add_option("--theta2", fom.theta2, "scatterer down-scattering ratio");
  fom_cmd->add_option("-o,--output", fom.output, "field file")->capture_default_str();
  fom_cmd->add_option("--csv", fom.csv, "also write the field as CSV");

  TrainArgs train;
  auto *train_cmd = app.add_subcommand("train", "build a reduced-system library");
  train_cmd->add_option("--sampler", train.sampler, "uniform | lhs | grid")
      ->capture_default_str();
  train_cmd->add_option("--seed", train.seed, "sampler seed (default: config seed)");
  train_cmd->add_option("-n,--n-snap", train.n_snap, "training points")->capture_default_str();
  auto *rank_opt = train_cmd->add_option("-r,--rank", train.rank, "basis rank (default 5)");
  train_cmd->add_option("--info", train.info, "retain this fraction of snapshot energy")
      ->excludes(rank_opt);
  train_cmd->add_option("--projection", train.projection, "petrov-galerkin | galerkin")
      ->capture_default_str();
  train_cmd->add_option("-o,--output", train.output, "library file")->capture_default_str();

  EvalArgs eval;
  auto *eval_cmd = app.add_subcommand("eval", "error and speedup over a test set");
  eval_cmd->add_option("-l,--library", eval.library, "library file")->capture_default_str();
  eval_cmd->add_option("--sampler", eval.sampler, "uniform | lhs | grid")->capture_default_str();
  eval_cmd->add_option("--seed", eval.seed, "sampler seed (default: config seed + 1)");
  eval_cmd->add_option("-n,--n-test", eval.n_test, "test points")->capture_default_str();
  eval_cmd->add_option("-o,--output", eval.output, "report CSV")->capture_default_str();
  eval_cmd->add_option("--field-dir", eval.field_dir, "per-point FOM/ROM/error field files");
  eval_cmd->add_flag("--csv-fields", eval.csv_fields, "also write field CSVs");
  eval_cmd->add_option("--reps", eval.reps, "timing repetitions (at least 3)")
      ->capture_default_str();

  CompareArgs cmp;
  auto *cmp_cmd = app.add_subcommand("compare", "FOM, MI-POD and OMMI-POD at one point");
  cmp_cmd->add_option("-l,--library", cmp.library, "library file")->capture_default_str();
  cmp_cmd->add_option("--theta1", cmp.theta1, "absorber total cross section");
  cmp_cmd->add_option("--theta2", cmp.theta2, "scatterer down-scattering ratio");
  cmp_cmd->add_option("--reps", cmp.reps, "timing repetitions (at least 3)")
      ->capture_default_str();

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try
  {
    if (*fom_cmd)
      return run_fom(common, fom);
    if (*train_cmd)
      return run_train(common, train);
    if (*eval_cmd)
      return run_eval(common, eval);
    return run_compare(common, cmp);
  }
  catch (const ConfigError &e)
  {
    std::cerr << "error: config key '" << e.key() << "': " << e.what() << "\n";
    return kUsage;
  }
  catch (const std::invalid_argument &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  catch (const std::exception &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
}
