// SPDX-License-Identifier: Apache-2.0

#include "ommi/config.hpp"

#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <json.hpp>
#include "ommi/errors.hpp"

namespace ommi
{

using json = nlohmann::json;

namespace
{

template <typename T>
T get_as(const json &j, const std::string &key)
{
  try
  {
    return j.at(key).get<T>();
  }
  catch (const json::exception &e)
  {
    throw ConfigError(key, std::string("wrong type: ") + e.what());
  }
}

Interval get_interval(const json &j, const std::string &key)
{
  const auto v = get_as<std::vector<double>>(j, key);
  if (v.size() != 2)
  {
    throw ConfigError(key, "expected [lo, hi]");
  }
  return {v[0], v[1]};
}

}  // namespace

std::vector<std::vector<int>> default_checkerboard_layout()
{
  constexpr int S = kScatterer, A = kAbsorber, Q = kSource;
  // Top row first.
  return {
      {S, S, S, S, S, S, S},  //
      {S, A, S, A, S, A, S},  //
      {S, S, A, S, A, S, S},  //
      {S, A, S, Q, S, A, S},  //
      {S, S, A, S, A, S, S},  //
      {S, A, S, S, S, A, S},  //
      {S, S, S, S, S, S, S},
  };
}

ProblemConfig default_config()
{
  ProblemConfig c;
  c.layout = default_checkerboard_layout();
  return c;
}

void ProblemConfig::validate() const
{
  if (!(theta.theta1 > 0.0))
  {
    throw ConfigError("theta1", "must be positive");
  }
  if (!(theta.theta2 >= 0.0 && theta.theta2 <= 1.0))
  {
    throw ConfigError("theta2", "must lie in [0, 1]");
  }
  if (!(theta1_range.lo > 0.0 && theta1_range.lo < theta1_range.hi))
  {
    throw ConfigError("theta1_range", "expected 0 < lo < hi");
  }
  if (!(theta2_range.lo >= 0.0 && theta2_range.lo < theta2_range.hi && theta2_range.hi <= 1.0))
  {
    throw ConfigError("theta2_range", "expected 0 <= lo < hi <= 1");
  }
  if (layout.empty() || layout.front().empty())
  {
    throw ConfigError("layout", "must be a non-empty grid of material indices");
  }
  for (const auto &row : layout)
  {
    if (row.size() != layout.front().size())
    {
      throw ConfigError("layout", "rows must all have the same length");
    }
    for (int m : row)
    {
      if (m < 0 || m > kSource)
      {
        throw ConfigError("layout", "material index " + std::to_string(m) +
                                        " is not in the material table");
      }
    }
  }
  if (!(block_size > 0.0))
  {
    throw ConfigError("block_size", "must be positive");
  }
  if (cells_per_block < 1)
  {
    throw ConfigError("cells_per_block", "must be at least 1");
  }
  if (n_polar < 1)
  {
    throw ConfigError("n_polar", "must be at least 1");
  }
  if (n_azimuthal < 4 || n_azimuthal % 4 != 0)
  {
    throw ConfigError("n_azimuthal", "must be a positive multiple of 4");
  }
  if (n_groups != 1 && n_groups != 2)
  {
    throw ConfigError("n_groups", "must be 1 or 2");
  }
  if (source_group < 0 || source_group >= n_groups)
  {
    throw ConfigError("source_group", "must index an existing group");
  }
  if (!(source_strength >= 0.0))
  {
    throw ConfigError("source_strength", "must be non-negative");
  }
  if (!(gmres_tol > 0.0))
  {
    throw ConfigError("gmres_tol", "must be positive");
  }
  if (gmres_restart < 1)
  {
    throw ConfigError("gmres_restart", "must be at least 1");
  }
  if (gmres_maxiter < 1)
  {
    throw ConfigError("gmres_maxiter", "must be at least 1");
  }
}

bool ProblemConfig::is_extrapolation(const Parameter &p) const
{
  return !theta1_range.contains(p.theta1) || !theta2_range.contains(p.theta2);
}

std::string ProblemConfig::fingerprint() const
{
  json j;
  j["layout"] = layout;
  j["block_size"] = block_size;
  j["cells_per_block"] = cells_per_block;
  j["n_polar"] = n_polar;
  j["n_azimuthal"] = n_azimuthal;
  j["n_groups"] = n_groups;
  j["source_strength"] = source_strength;
  j["source_group"] = source_group;
  j["gmres_tol"] = gmres_tol;
  j["gmres_restart"] = gmres_restart;
  j["gmres_maxiter"] = gmres_maxiter;
  return j.dump();
}

ProblemConfig parse_config(const std::string &text, std::ostream *warnings)
{
  json j;
  try
  {
    j = json::parse(text);
  }
  catch (const json::parse_error &e)
  {
    throw ConfigError("<file>", std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object())
  {
    throw ConfigError("<file>", "top level must be an object");
  }

  static const std::set<std::string> known = {
      "theta1",          "theta2",        "theta1_range",  "theta2_range", "layout",
      "block_size",      "cells_per_block", "n_polar",     "n_azimuthal",  "n_groups",
      "source_strength", "source_group",  "gmres_tol",     "gmres_restart", "gmres_maxiter",
      "seed"};
  for (const auto &[key, value] : j.items())
  {
    if (!known.contains(key) && warnings)
    {
      *warnings << "warning: unknown config key '" << key << "' ignored\n";
    }
  }

  ProblemConfig c = default_config();
  auto opt = [&](const std::string &key, auto &field)
  {
    if (j.contains(key))
    {
      field = get_as<std::decay_t<decltype(field)>>(j, key);
    }
  };
  opt("theta1", c.theta.theta1);
  opt("theta2", c.theta.theta2);
  if (j.contains("theta1_range"))
  {
    c.theta1_range = get_interval(j, "theta1_range");
  }
  if (j.contains("theta2_range"))
  {
    c.theta2_range = get_interval(j, "theta2_range");
  }
  opt("layout", c.layout);
  opt("block_size", c.block_size);
  opt("cells_per_block", c.cells_per_block);
  opt("n_polar", c.n_polar);
  opt("n_azimuthal", c.n_azimuthal);
  opt("n_groups", c.n_groups);
  opt("source_strength", c.source_strength);
  opt("source_group", c.source_group);
  opt("gmres_tol", c.gmres_tol);
  opt("gmres_restart", c.gmres_restart);
  opt("gmres_maxiter", c.gmres_maxiter);
  opt("seed", c.seed);
  c.validate();
  return c;
}

ProblemConfig load_config(const std::string &path, std::ostream *warnings)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigError("<file>", "cannot open '" + path + "'");
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), warnings);
}

std::string config_to_json(const ProblemConfig &c)
{
  json j;
  j["theta1"] = c.theta.theta1;
  j["theta2"] = c.theta.theta2;
  j["theta1_range"] = {c.theta1_range.lo, c.theta1_range.hi};
  j["theta2_range"] = {c.theta2_range.lo, c.theta2_range.hi};
  j["layout"] = c.layout;
  j["block_size"] = c.block_size;
  j["cells_per_block"] = c.cells_per_block;
  j["n_polar"] = c.n_polar;
  j["n_azimuthal"] = c.n_azimuthal;
  j["n_groups"] = c.n_groups;
  j["source_strength"] = c.source_strength;
  j["source_group"] = c.source_group;
  j["gmres_tol"] = c.gmres_tol;
  j["gmres_restart"] = c.gmres_restart;
  j["gmres_maxiter"] = c.gmres_maxiter;
  j["seed"] = c.seed;
  return j.dump(2);
}

Mesh build_mesh(const ProblemConfig &config)
{
  config.validate();
  const int rows = static_cast<int>(config.layout.size());
  const int cols = static_cast<int>(config.layout.front().size());
  const int cpb = config.cells_per_block;
  const int nx = cols * cpb, ny = rows * cpb;
  const double h = config.block_size / cpb;

  std::vector<int> material(static_cast<std::size_t>(nx) * ny);
  for (int iy = 0; iy < ny; iy++)
  {
    const auto &row = config.layout[rows - 1 - iy / cpb];
    for (int ix = 0; ix < nx; ix++)
    {
      material[static_cast<std::size_t>(iy) * nx + ix] = row[ix / cpb];
    }
  }
  return Mesh(nx, ny, h, h, std::move(material), kSource + 1);
}

Problem make_problem(const ProblemConfig &config, const Parameter &theta)
{
  return Problem{build_mesh(config), build_quadrature(config.n_polar, config.n_azimuthal),
                 make_cross_sections(theta.theta1, theta.theta2, config.n_groups,
                                     config.source_strength, config.source_group)};
}

}  // namespace ommi
