// SPDX-License-Identifier: Apache-2.0

#ifndef OMMI_QUADRATURE_HPP
#define OMMI_QUADRATURE_HPP

#include <cstddef>
#include <vector>

namespace ommi
{

struct Direction
{
  double mu;      // x-component of the unit direction
  double eta;     // y-component
  double weight;  // folded weight; all weights sum to 4π
};

// Discrete-ordinates set in the x-y plane projection. The lower hemisphere is folded into
// the upper one, so each direction carries twice its hemispherical weight.
class Quadrature
{
public:
  explicit Quadrature(std::vector<Direction> directions);

  std::size_t size() const { return directions_.size(); }
  const Direction &operator[](std::size_t a) const { return directions_[a]; }
  const std::vector<Direction> &directions() const { return directions_; }
  auto begin() const { return directions_.begin(); }
  auto end() const { return directions_.end(); }

private:
  std::vector<Direction> directions_;
};

// Product set: Gauss-Legendre in the polar cosine (n_polar points on (0, 1)) times a
// Chebyshev (equal-weight, midpoint) azimuthal set of n_azimuthal angles on [0, 2π).
// n_azimuthal must be a multiple of four; other counts place a direction on an axis.
Quadrature build_quadrature(int n_polar, int n_azimuthal);

// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
void gauss_legendre(int n, std::vector<double> &nodes, std::vector<double> &weights);

}  // namespace ommi

#endif  // OMMI_QUADRATURE_HPP
