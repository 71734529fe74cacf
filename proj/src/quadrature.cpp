// SPDX-License-Identifier: Apache-2.0

#include "ommi/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include "ommi/errors.hpp"

namespace ommi
{

Quadrature::Quadrature(std::vector<Direction> directions) : directions_(std::move(directions))
{
  if (directions_.empty())
  {
    throw ConfigError("quadrature", "empty direction set");
  }
  for (const auto &d : directions_)
  {
    if (d.mu == 0.0 || d.eta == 0.0)
    {
      throw ConfigError("quadrature", "grazing direction with a zero component");
    }
    if (!(d.weight > 0.0))
    {
      throw ConfigError("quadrature", "non-positive weight");
    }
  }
}

namespace
{

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x)
{
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; k++)
  {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

void gauss_legendre(int n, std::vector<double> &nodes, std::vector<double> &weights)
{
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; i++)
  {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; it++)
    {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
      {
        break;
      }
    }
    const double dp = legendre(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

Quadrature build_quadrature(int n_polar, int n_azimuthal)
{
  if (n_polar < 1)
  {
    throw ConfigError("n_polar", "must be at least 1");
  }
  if (n_azimuthal < 1)
  {
    throw ConfigError("n_azimuthal", "must be at least 1");
  }
  if (n_azimuthal % 4 != 0)
  {
    throw ConfigError("n_azimuthal", "must be a multiple of 4 (got " +
                                         std::to_string(n_azimuthal) +
                                         "); other counts produce axis-aligned directions");
  }

  // Positive half of a 2 n_polar point rule; its weights sum to 1 and doubling folds in
  // the mirrored lower hemisphere.
  std::vector<double> xi, wxi;
  gauss_legendre(2 * n_polar, xi, wxi);

  constexpr double pi = std::numbers::pi;
  const double dphi = 2.0 * pi / n_azimuthal;
  std::vector<Direction> dirs;
  dirs.reserve(static_cast<std::size_t>(n_polar) * n_azimuthal);
  for (int p = n_polar; p < 2 * n_polar; p++)
  {
    const double sin_theta = std::sqrt(1.0 - xi[p] * xi[p]);
    for (int j = 0; j < n_azimuthal; j++)
    {
      const double phi = (j + 0.5) * dphi;
      dirs.push_back({sin_theta * std::cos(phi), sin_theta * std::sin(phi),
                      2.0 * wxi[p] * dphi});
    }
  }
  return Quadrature(std::move(dirs));
}

}  // namespace ommi
