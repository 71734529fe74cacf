// SPDX-License-Identifier: Apache-2.0

#ifndef OMMI_MESH_HPP
#define OMMI_MESH_HPP

#include <cstddef>
#include <vector>

namespace ommi
{

// Uniform rectangular mesh of nx × ny cells with one material index per cell. Cells are
// numbered row-major: cell = iy * nx + ix, with (0, 0) at the lower-left corner.
class Mesh
{
public:
  Mesh(int nx, int ny, double cell_width, double cell_height, std::vector<int> material,
       int n_materials);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::size_t num_cells() const { return material_.size(); }
  double cell_width() const { return cell_width_; }
  double cell_height() const { return cell_height_; }
  double width() const { return nx_ * cell_width_; }
  double height() const { return ny_ * cell_height_; }
  int num_materials() const { return n_materials_; }

  int material(std::size_t cell) const { return material_[cell]; }
  int material(int ix, int iy) const { return material_[cell_index(ix, iy)]; }
  const std::vector<int> &materials() const { return material_; }

  std::size_t cell_index(int ix, int iy) const
  {
    return static_cast<std::size_t>(iy) * nx_ + ix;
  }

private:
  int nx_, ny_;
  double cell_width_, cell_height_;
  std::vector<int> material_;
  int n_materials_;
};

}  // namespace ommi

#endif  // OMMI_MESH_HPP
