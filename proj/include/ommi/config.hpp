// SPDX-License-Identifier: Apache-2.0

#ifndef OMMI_CONFIG_HPP
#define OMMI_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>
#include "ommi/cross_sections.hpp"
#include "ommi/mesh.hpp"
#include "ommi/quadrature.hpp"

namespace ommi
{

// A point in the two-dimensional parameter space.
struct Parameter
{
  double theta1;  // absorber total cross section, 1/cm
  double theta2;  // scatterer down-scattering ratio

  bool operator==(const Parameter &) const = default;
};

struct Interval
{
  double lo, hi;

  bool contains(double v) const { return v >= lo && v <= hi; }
  double width() const { return hi - lo; }
};

struct ProblemConfig
{
  Parameter theta{10.0, 0.75};
  Interval theta1_range{7.5, 12.5};
  Interval theta2_range{0.5, 1.0};

  // Block layout listed top row first (largest y). Entries are material indices.
  std::vector<std::vector<int>> layout;
  double block_size = 1.0;  // cm
  int cells_per_block = 3;

  int n_polar = 2;
  int n_azimuthal = 16;
  int n_groups = 2;

  double source_strength = 1.0;
  int source_group = 0;

  double gmres_tol = 1e-8;
  int gmres_restart = 30;
  int gmres_maxiter = 1000;

  std::uint64_t seed = 20240917;

  // Throws ConfigError naming the first invalid key.
  void validate() const;

  // True when the parameter lies outside the nominal ranges.
  bool is_extrapolation(const Parameter &p) const;

  // Canonical text of every field that defines the discretized problem (theta and seed
  // excluded). Two configs with the same fingerprint produce the same operator family.
  std::string fingerprint() const;
};

// The 7 × 7 checkerboard layout with eleven absorbing blocks around a central source.
std::vector<std::vector<int>> default_checkerboard_layout();

ProblemConfig default_config();

// JSON config file. Unknown keys are reported to `warnings` (when non-null) and ignored.
ProblemConfig load_config(const std::string &path, std::ostream *warnings = nullptr);
ProblemConfig parse_config(const std::string &text, std::ostream *warnings = nullptr);
std::string config_to_json(const ProblemConfig &config);

Mesh build_mesh(const ProblemConfig &config);

// Everything needed to apply the transport operator at one parameter point.
struct Problem
{
  Mesh mesh;
  Quadrature quadrature;
  CrossSections xs;
};

Problem make_problem(const ProblemConfig &config, const Parameter &theta);

}  // namespace ommi

#endif  // OMMI_CONFIG_HPP
